//! Property suites over seeded random samples.
//!
//! Trial `t` of a suite run with seed `s` draws from `sampler(s, t)`, so a
//! run is reproducible no matter how rayon schedules it. Outcomes come back in
//! a fixed order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;

use crate::bilinear::{degree_bound, disc_p11, disc_via_elimination, jacobian_det, BilinearSystem};
use crate::error::{Error, Result};
use crate::ideal::{derivative_matrix, rank_deficient_sample, DerivGroup};
use crate::matrix::PolyMatrix;
use crate::poly::{Group, MultiPoly, VarRef};
use crate::rational::{int, Rational};
use crate::sampling::{nonzero_int, random_rational, sampler, small_int, Sampler};
use crate::sparse3::{
    build_disc_matrix, determine_sign, disc_determinantal, disc_expanded,
    disc_via_elimination as sparse3_elimination, eliminate_to_quadratic, kernel_to_root,
    quadratic_form_degenerate, root_to_kernel, singular_instance, transposed_jacobian, ThreePlayerSystem,
    TriRoot, DETERMINANTAL_SIGN, POINT_VARS,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    P11,
    Det3,
    Thm1,
    Lemma,
    Euler,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 5] = [Suite::P11, Suite::Det3, Suite::Thm1, Suite::Lemma, Suite::Euler];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::P11 => "p11",
            Suite::Det3 => "det3",
            Suite::Thm1 => "thm1",
            Suite::Lemma => "lemma",
            Suite::Euler => "euler",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Suite::All]
            .into_iter()
            .chain(Suite::INDIVIDUAL)
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub outcomes: Vec<CheckOutcome>,
    /// The sign found by symbolic comparison, when the det3 suite ran.
    pub epsilon: Option<i32>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { seed: 0, samples: 100 }
    }
}

type Trial = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Trial {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

struct Checks {
    suite: Suite,
    outcomes: Vec<CheckOutcome>,
}

impl Checks {
    fn new(suite: Suite) -> Self {
        Self { suite, outcomes: Vec::new() }
    }

    fn single(&mut self, name: &str, f: impl FnOnce() -> std::result::Result<String, String>) {
        let (passed, detail) = match f() {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.outcomes.push(CheckOutcome { suite: self.suite, name: name.into(), passed, detail });
    }

    /// Runs `trials` independent trials in parallel; trial `t` gets `sampler(seed, offset + t)`.
    fn sampled(
        &mut self,
        name: &str,
        cfg: &VerifyConfig,
        offset: u64,
        trials: usize,
        f: impl Fn(&mut Sampler) -> Trial + Sync,
    ) {
        let results: Vec<Trial> =
            (0..trials as u64).into_par_iter().map(|t| f(&mut sampler(cfg.seed, offset + t))).collect();
        let failed: Vec<(usize, &String)> =
            results.iter().enumerate().filter_map(|(t, r)| r.as_ref().err().map(|e| (t, e))).collect();
        let (passed, detail) = match failed.first() {
            None => (true, format!("{trials}/{trials} trials")),
            Some((t, e)) => {
                (false, format!("{}/{trials} trials failed; first at trial {t}: {e}", failed.len()))
            }
        };
        self.outcomes.push(CheckOutcome { suite: self.suite, name: name.into(), passed, detail });
    }
}

pub fn run(suite: Suite, cfg: &VerifyConfig) -> VerifyReport {
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::INDIVIDUAL.to_vec(),
        s => vec![s],
    };
    let mut outcomes = Vec::new();
    let mut epsilon = None;
    for s in suites {
        match s {
            Suite::P11 => outcomes.extend(p11_suite(cfg)),
            Suite::Det3 => {
                let (o, e) = det3_suite(cfg);
                outcomes.extend(o);
                epsilon = e;
            }
            Suite::Thm1 => outcomes.extend(thm1_suite(cfg)),
            Suite::Lemma => outcomes.extend(lemma_suite(cfg)),
            Suite::Euler => outcomes.extend(euler_suite(cfg)),
            Suite::All => unreachable!(),
        }
    }
    VerifyReport { outcomes, epsilon }
}

fn coeff_of_equation(k: usize) -> impl Fn(&VarRef) -> bool {
    move |v| v.group == Group::Coeff && usize::from(v.block) == k
}

/// Random `x` (or `y`) assignment for group `g` with `len` coordinates.
fn random_point<R: Rng + ?Sized>(
    rng: &mut R,
    var: fn(u16) -> VarRef,
    len: usize,
) -> BTreeMap<VarRef, Rational> {
    (0..len).map(|i| (var(i as u16), random_rational(rng))).collect()
}

fn p11_suite(cfg: &VerifyConfig) -> Vec<CheckOutcome> {
    let mut c = Checks::new(Suite::P11);
    c.single("closed form equals elimination (symbolic)", || {
        let sys = BilinearSystem::symbolic(1, 1);
        let closed = lift(disc_p11(&sys))?;
        let elim = lift(disc_via_elimination(&sys))?;
        ensure(closed == elim, || "polynomials differ".into())?;
        Ok(format!("{} terms", closed.num_terms()))
    });
    c.sampled("closed form equals elimination (random)", cfg, 0, cfg.samples, |rng| {
        let sys = BilinearSystem::random(1, 1, rng);
        let closed = lift(disc_p11(&sys))?;
        let elim = lift(disc_via_elimination(&sys))?;
        ensure(closed == elim, || format!("{closed} != {elim}"))
    });
    c.single("degree bound dominates measured degree", || {
        let mut parts = Vec::new();
        for m in 1..=2 {
            let disc = lift(disc_via_elimination(&BilinearSystem::symbolic(1, m)))?;
            let bound = lift(degree_bound(1, m))?.per_group;
            let degrees: Vec<u32> = (0..=m).map(|k| disc.degree_by(coeff_of_equation(k))).collect();
            ensure(degrees.iter().all(|&d| u128::from(d) <= bound), || {
                format!("(1,{m}): degrees {degrees:?} exceed bound {bound}")
            })?;
            parts.push(format!("(1,{m}): {degrees:?} <= {bound}"));
        }
        Ok(parts.join("; "))
    });
    c.sampled("jacobian degrees and support", cfg, 1 << 32, cfg.samples.min(20), |rng| {
        let (n, m) = (rng.gen_range(1..=2), rng.gen_range(1..=3));
        let sys = BilinearSystem::random(n, m, rng);
        let j = lift(jacobian_det(&sys))?;
        let in_support = j.terms().all(|(mono, _)| {
            mono.degree_by(|v| v.group == Group::X) as usize == m
                && mono.degree_by(|v| v.group == Group::Y) as usize == n
        });
        ensure(j.is_zero() || in_support, || format!("n={n}, m={m}: J = {j}"))
    });
    c.sampled("jacobian linear in each equation", cfg, 2 << 32, cfg.samples.min(20), |rng| {
        let (n, m) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let sys = BilinearSystem::random(n, m, rng);
        let j = lift(jacobian_det(&sys))?;
        for k in 0..n + m {
            for t in [2, 3] {
                let scaled = lift(jacobian_det(&sys.scale_equation(k, &int(t))))?;
                ensure(scaled == j.scale(&int(t)), || format!("equation {k}, t = {t}"))?;
            }
        }
        Ok(())
    });
    c.outcomes
}

fn det3_suite(cfg: &VerifyConfig) -> (Vec<CheckOutcome>, Option<i32>) {
    let mut c = Checks::new(Suite::Det3);
    let sign = determine_sign();
    let epsilon = sign.as_ref().ok().copied();
    c.single("determinant equals sign times expanded (symbolic)", || {
        let e = lift(sign)?;
        ensure(e == DETERMINANTAL_SIGN, || format!("found ε = {e}, expected {DETERMINANTAL_SIGN}"))?;
        Ok(format!("ε = {e}"))
    });
    c.single("elimination oracle equals expanded (symbolic)", || {
        let sys = ThreePlayerSystem::symbolic();
        let expanded = disc_expanded(&sys);
        let elim = lift(sparse3_elimination(&sys))?;
        ensure(elim == expanded, || "polynomials differ".into())?;
        Ok(format!("{} terms", expanded.num_terms()))
    });
    c.single("expanded discriminant has degree 2 per player", || {
        let d = disc_expanded(&ThreePlayerSystem::symbolic());
        for player in 0..3 {
            let deg = d.homogeneous_degree_by(coeff_of_equation(player));
            ensure(deg == Some(2), || format!("player {player}: {deg:?}"))?;
        }
        ensure(d.total_degree() == 6, || format!("total degree {}", d.total_degree()))?;
        Ok("(2, 2, 2), total 6".into())
    });
    let eps = int(i64::from(DETERMINANTAL_SIGN));
    c.sampled("determinant equals sign times expanded (random)", cfg, 0, cfg.samples, |rng| {
        let sys = ThreePlayerSystem::random(rng);
        let det = lift(disc_determinantal(&sys))?;
        let expanded = disc_expanded(&sys);
        ensure(det == expanded.scale(&eps), || format!("{det} vs {expanded}"))
    });
    c.sampled("matrix is symmetric", cfg, 1 << 32, cfg.samples, |rng| {
        ensure(build_disc_matrix(&ThreePlayerSystem::random(rng)).is_symmetric(), String::new)
    });
    c.sampled("odd rows reproduce the transposed jacobian", cfg, 2 << 32, cfg.samples, |rng| {
        let sys = ThreePlayerSystem::random(rng);
        let root = TriRoot::random(rng);
        ensure(block_rows_match_jacobian(&sys, &root), || "block mismatch".into())
    });
    c.sampled("elimination gives a binary quadratic", cfg, 3 << 32, cfg.samples, |rng| {
        let q = lift(eliminate_to_quadratic(&ThreePlayerSystem::random(rng)))?;
        ensure(q.effective_degree() == Some(2), || format!("effective degree {:?}", q.effective_degree()))
    });
    (c.outcomes, epsilon)
}

/// Rows `x1`, `y1`, `z1` of the 6x6 matrix, restricted to one column block
/// and paired with the point, give the entries of the transposed Jacobian.
pub fn block_rows_match_jacobian(sys: &ThreePlayerSystem, root: &TriRoot) -> bool {
    let m = build_disc_matrix(sys);
    let j = transposed_jacobian(sys, root);
    let p = root.coords();
    let block_value = |row: usize, block: usize| -> MultiPoly {
        (2 * block..2 * block + 2).map(|col| m.get(row, col).scale(&p[col])).sum()
    };
    // (matrix row, column block) for each transposed Jacobian entry, by (row, column)
    let layout: [[Option<(usize, usize)>; 3]; 3] = [
        [Some((0, 1)), Some((0, 2)), None],
        [Some((2, 0)), None, Some((2, 2))],
        [None, Some((4, 0)), Some((4, 1))],
    ];
    layout.iter().enumerate().all(|(r, row)| {
        row.iter().enumerate().all(|(col, cell)| match cell {
            Some((mr, block)) => *j.get(r, col) == block_value(*mr, *block),
            None => j.get(r, col).is_zero(),
        })
    })
}

fn thm1_suite(cfg: &VerifyConfig) -> Vec<CheckOutcome> {
    let mut c = Checks::new(Suite::Thm1);
    for (idx, m) in [1usize, 2].into_iter().enumerate() {
        let offset = (idx as u64) << 32;
        c.sampled(&format!("rank-deficient (1,{m}) systems are singular"), cfg, offset, cfg.samples, |rng| {
            let u: Vec<Rational> = loop {
                let u: Vec<Rational> = (0..=m).map(|_| small_int(rng, -5, 5)).collect();
                if u.iter().any(|v| !v.is_zero()) {
                    break u;
                }
            };
            let sys = lift(rank_deficient_sample(1, m, DerivGroup::X, &u, rng))?;
            let minors = lift(derivative_matrix(&sys, DerivGroup::X).maximal_minors())?;
            ensure(minors.iter().all(MultiPoly::is_zero), || "nonzero minor".into())?;
            let disc = lift(disc_via_elimination(&sys))?;
            ensure(disc.is_zero(), || format!("discriminant {disc}"))?;
            let y: BTreeMap<VarRef, Rational> =
                u.iter().enumerate().map(|(j, v)| (VarRef::y(j as u16), v.clone())).collect();
            for trial in 0..5 {
                let mut at = random_point(rng, VarRef::x, 2);
                at.extend(y.clone());
                for (k, f) in sys.equations().iter().enumerate() {
                    let v = f.eval(&at);
                    ensure(v.is_zero(), || format!("F{k} = {v} at x sample {trial}"))?;
                }
            }
            Ok(())
        });
    }
    c.outcomes
}

fn random_lambda<R: Rng + ?Sized>(rng: &mut R) -> [Rational; 3] {
    std::array::from_fn(|_| nonzero_int(rng, -5, 5))
}

fn lemma_suite(cfg: &VerifyConfig) -> Vec<CheckOutcome> {
    let mut c = Checks::new(Suite::Lemma);
    let singular = (cfg.samples / 2).max(1);
    c.sampled("degenerate form iff zero discriminant (random)", cfg, 0, cfg.samples, |rng| {
        let sys = ThreePlayerSystem::random(rng);
        lemma_holds(&sys)
    });
    c.sampled("degenerate form iff zero discriminant (singular)", cfg, 1 << 32, singular, |rng| {
        let root = TriRoot::random(rng);
        let sys = lift(singular_instance(&root, &random_lambda(rng), rng))?;
        ensure(disc_expanded(&sys).is_zero(), || "constructed instance is not singular".into())?;
        lemma_holds(&sys)
    });
    c.sampled("kernel correspondence round trip", cfg, 2 << 32, singular, |rng| {
        let root = TriRoot::random(rng);
        let lambda = random_lambda(rng);
        let sys = lift(singular_instance(&root, &lambda, rng))?;
        let witness = lift(root_to_kernel(&sys, &root, &lambda))?;
        let (back, _) = lift(kernel_to_root(&sys, &witness.u))?;
        ensure(back == root, || format!("{back:?} != {root:?}"))
    });
    c.outcomes
}

fn lemma_holds(sys: &ThreePlayerSystem) -> Trial {
    let degenerate = lift(quadratic_form_degenerate(sys))?;
    let vanishes = disc_expanded(sys).is_zero();
    ensure(degenerate == vanishes, || format!("degenerate = {degenerate}, disc zero = {vanishes}"))
}

/// `Σ_{v ∈ group} v ∂f/∂v - f`, which is zero for `f` of degree one in the group.
pub fn euler_defect(f: &MultiPoly, group: &[VarRef]) -> MultiPoly {
    let sum: MultiPoly = group.iter().map(|&v| MultiPoly::var(v) * f.partial_derivative(v)).sum();
    sum - f
}

fn euler_suite(cfg: &VerifyConfig) -> Vec<CheckOutcome> {
    let mut c = Checks::new(Suite::Euler);
    c.sampled("euler identity for bilinear equations", cfg, 0, cfg.samples, |rng| {
        let (n, m) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let sys = BilinearSystem::random(n, m, rng);
        let xs: Vec<VarRef> = (0..=n).map(|i| VarRef::x(i as u16)).collect();
        let ys: Vec<VarRef> = (0..=m).map(|j| VarRef::y(j as u16)).collect();
        for (k, f) in sys.equations().iter().enumerate() {
            for (name, group) in [("x", &xs), ("y", &ys)] {
                let d = euler_defect(f, group);
                ensure(d.is_zero(), || format!("n={n}, m={m}, F{k}, group {name}: {d}"))?;
            }
        }
        Ok(())
    });
    c.sampled("even rows complete the euler identities", cfg, 1 << 32, cfg.samples, |rng| {
        let sys = ThreePlayerSystem::random(rng);
        let m = build_disc_matrix(&sys);
        let pt: Vec<MultiPoly> = POINT_VARS.iter().map(|&v| MultiPoly::var(v)).collect();
        let [h1, h2, h3] = sys.equations();
        // row r, column block b of M applied to the point is ∂H/∂v_r for the
        // equation joining the row's group with block b
        let eq_for = |g: usize, b: usize| match (g.min(b), g.max(b)) {
            (0, 1) => &h1,
            (0, 2) => &h2,
            _ => &h3,
        };
        for (r, &var) in POINT_VARS.iter().enumerate() {
            let g = r / 2;
            for b in (0..3).filter(|&b| b != g) {
                let row = PolyMatrix::from_fn(1, 2, |_, c| m.get(r, 2 * b + c).clone());
                let value = lift(row.mul_vec(&pt[2 * b..2 * b + 2]))?.remove(0);
                let expected = eq_for(g, b).partial_derivative(var);
                ensure(value == expected, || format!("row {r}, block {b}"))?;
            }
        }
        for (h, groups) in [(&h1, [0, 1]), (&h2, [0, 2]), (&h3, [1, 2])] {
            for g in groups {
                let d = euler_defect(h, &POINT_VARS[2 * g..2 * g + 2]);
                ensure(d.is_zero(), || format!("euler defect {d}"))?;
            }
        }
        Ok(())
    });
    c.outcomes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let report = run(Suite::All, &VerifyConfig { seed: 3, samples: 4 });
        for o in &report.outcomes {
            assert!(o.passed, "{}: {} ({})", o.suite, o.name, o.detail);
        }
        assert_eq!(report.epsilon, Some(DETERMINANTAL_SIGN));
    }

    #[test]
    fn runs_are_reproducible() {
        let cfg = VerifyConfig { seed: 9, samples: 3 };
        assert_eq!(run(Suite::Lemma, &cfg), run(Suite::Lemma, &cfg));
    }

    #[test]
    fn suite_names_parse() {
        for s in ["all", "p11", "det3", "thm1", "lemma", "euler"] {
            assert_eq!(s.parse::<Suite>().unwrap().name(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn euler_defect_detects_non_linear() {
        let x = MultiPoly::var(VarRef::x(0));
        assert!(!euler_defect(&(&x * &x), &[VarRef::x(0)]).is_zero());
    }
}
