//! Seeded random sampling.
//!
//! Every trial gets its own ChaCha stream derived from `(seed, trial)`, so
//! suites are reproducible regardless of how trials are scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rational::{int, ratio, Rational};

pub type Sampler = ChaCha8Rng;

pub fn sampler(seed: u64, trial: u64) -> Sampler {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Uniform integer in `[lo, hi]` as a rational.
pub fn small_int<R: Rng + ?Sized>(rng: &mut R, lo: i64, hi: i64) -> Rational {
    int(rng.gen_range(lo..=hi))
}

/// Uniform nonzero integer in `[lo, hi]`.
pub fn nonzero_int<R: Rng + ?Sized>(rng: &mut R, lo: i64, hi: i64) -> Rational {
    loop {
        let v = rng.gen_range(lo..=hi);
        if v != 0 {
            return int(v);
        }
    }
}

/// Random rational with numerator in `[-20, 20]` and denominator in `[1, 6]`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    ratio(rng.gen_range(-20..=20), rng.gen_range(1..=6))
}
