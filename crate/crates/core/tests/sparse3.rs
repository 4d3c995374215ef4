use multidisc::linalg::QMatrix;
use multidisc::poly::{Group, MultiPoly};
use multidisc::rational::{int, Rational};
use multidisc::sampling::{nonzero_int, sampler, small_int};
use multidisc::sparse3::{
    build_disc_matrix, determine_sign, disc_determinantal, disc_expanded, disc_via_elimination,
    eliminate_to_quadratic, kernel_correspondence, kernel_to_root, quadratic_form_degenerate,
    quadratic_form_matrix, root_to_kernel, singular_instance, transposed_jacobian, ThreePlayerSystem,
    TriRoot, DETERMINANTAL_SIGN, POINT_VARS,
};
use multidisc::verify::{block_rows_match_jacobian, euler_defect};
use multidisc::Error;
use num_traits::Zero;
use proptest::prelude::*;

fn player(k: usize) -> impl Fn(&multidisc::VarRef) -> bool {
    move |v| v.group == Group::Coeff && usize::from(v.block) == k
}

fn value(p: &MultiPoly) -> Rational {
    p.as_constant().expect("constant")
}

/// Six-by-six determinant as a signed sum over all 720 permutations.
fn leibniz6(m: &[[Rational; 6]; 6]) -> Rational {
    fn go(m: &[[Rational; 6]; 6], row: usize, used: u8, sign: i64, acc: Rational, out: &mut Rational) {
        if row == 6 {
            *out += acc * int(sign);
            return;
        }
        let mut s = sign;
        for col in 0..6 {
            if used & (1 << col) != 0 {
                continue;
            }
            if !m[row][col].is_zero() {
                go(m, row + 1, used | (1 << col), s, &acc * &m[row][col], out);
            }
            s = -s;
        }
    }
    let mut out = Rational::zero();
    go(m, 0, 0, 1, int(1), &mut out);
    out
}

fn as_array(sys: &ThreePlayerSystem) -> [[Rational; 6]; 6] {
    let m = build_disc_matrix(sys);
    std::array::from_fn(|r| std::array::from_fn(|c| value(m.get(r, c))))
}

fn random_lambda(rng: &mut multidisc::sampling::Sampler) -> [Rational; 3] {
    std::array::from_fn(|_| nonzero_int(rng, -5, 5))
}

fn diagonal() -> ThreePlayerSystem {
    ThreePlayerSystem::from_ints([1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1])
}

#[test]
fn leibniz_oracle_agrees_on_examples() {
    assert_eq!(leibniz6(&as_array(&diagonal())), int(4));
    assert_eq!(value(&disc_determinantal(&diagonal()).unwrap()), int(4));
    let corner = ThreePlayerSystem::from_ints([0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1]);
    assert_eq!(leibniz6(&as_array(&corner)), int(0));
}

#[test]
fn symbolic_sign_identity() {
    assert_eq!(determine_sign().unwrap(), -1);
    assert_eq!(DETERMINANTAL_SIGN, -1);
    let sys = ThreePlayerSystem::symbolic();
    assert_eq!(disc_determinantal(&sys).unwrap(), -disc_expanded(&sys));
}

#[test]
fn symbolic_elimination_identity() {
    let sys = ThreePlayerSystem::symbolic();
    assert_eq!(disc_via_elimination(&sys).unwrap(), disc_expanded(&sys));
}

#[test]
fn expanded_degrees() {
    let d = disc_expanded(&ThreePlayerSystem::symbolic());
    for k in 0..3 {
        assert_eq!(d.homogeneous_degree_by(player(k)), Some(2));
    }
    assert_eq!(d.total_degree(), 6);
    assert_eq!(d.homogeneous_degree_by(|_| true), Some(6));
}

#[test]
fn random_systems_sign_identity_and_leibniz() {
    let eps = int(i64::from(DETERMINANTAL_SIGN));
    for trial in 0..500 {
        let sys = ThreePlayerSystem::random(&mut sampler(101, trial));
        let det = value(&disc_determinantal(&sys).unwrap());
        assert_eq!(det, value(&disc_expanded(&sys)) * &eps, "trial {trial}");
        if trial < 50 {
            assert_eq!(det, leibniz6(&as_array(&sys)), "trial {trial}");
        }
    }
}

#[test]
fn lemma_on_random_and_singular_systems() {
    for trial in 0..500 {
        let sys = ThreePlayerSystem::random(&mut sampler(103, trial));
        assert_eq!(quadratic_form_degenerate(&sys).unwrap(), disc_expanded(&sys).is_zero());
    }
    for trial in 0..100 {
        let mut rng = sampler(107, trial);
        let root = TriRoot::random(&mut rng);
        let sys = singular_instance(&root, &random_lambda(&mut rng), &mut rng).unwrap();
        assert!(disc_expanded(&sys).is_zero(), "trial {trial}");
        assert!(quadratic_form_degenerate(&sys).unwrap(), "trial {trial}");
    }
}

#[test]
fn quadratic_form_matrix_is_half_hessian() {
    let sys = ThreePlayerSystem::random(&mut sampler(109, 0));
    let s = quadratic_form_matrix(&sys);
    let form: MultiPoly = sys.equations().into_iter().sum();
    for (r, &vr) in POINT_VARS.iter().enumerate() {
        for (c, &vc) in POINT_VARS.iter().enumerate() {
            let hessian = form.partial_derivative(vr).partial_derivative(vc);
            assert_eq!(s.get(r, c).scale(&int(2)), hessian);
        }
    }
    let det_s = value(&s.determinant().unwrap());
    assert_eq!(det_s * int(64), value(&disc_determinantal(&sys).unwrap()));
}

#[test]
fn singular_instances_have_the_prescribed_root() {
    for trial in 0..50 {
        let mut rng = sampler(113, trial);
        let root = TriRoot::random(&mut rng);
        let lambda = random_lambda(&mut rng);
        let sys = singular_instance(&root, &lambda, &mut rng).unwrap();
        assert!(!sys.has_zero_equation());
        let at = root.assignment();
        assert!(sys.equations().iter().all(|h| h.eval(&at).is_zero()));
        let j = transposed_jacobian(&sys, &root);
        let lam: Vec<MultiPoly> = lambda.iter().cloned().map(MultiPoly::constant).collect();
        assert!(j.mul_vec(&lam).unwrap().iter().all(MultiPoly::is_zero));
        assert!(j.determinant().unwrap().is_zero());
    }
}

#[test]
fn kernel_correspondence_round_trips() {
    for trial in 0..50 {
        let mut rng = sampler(127, trial);
        let root = TriRoot::random(&mut rng);
        let lambda = random_lambda(&mut rng);
        let sys = singular_instance(&root, &lambda, &mut rng).unwrap();
        let witness = root_to_kernel(&sys, &root, &lambda).unwrap();
        let m = build_disc_matrix(&sys);
        assert!(m.mul_rational_vec(&witness.u).unwrap().iter().all(MultiPoly::is_zero));
        let (back, w2) = kernel_to_root(&sys, &witness.u).unwrap();
        assert_eq!(back, root, "trial {trial}");
        assert_eq!(w2, witness);
        assert_eq!(kernel_correspondence(&sys).unwrap().0, root);
    }
}

#[test]
fn roots_on_coordinate_lines() {
    let cases = [([1, 0], [0, 1], [1, 1]), ([0, 1], [1, 0], [2, -1]), ([1, 0], [1, 0], [1, 0])];
    for (i, (x, y, z)) in cases.into_iter().enumerate() {
        let root = TriRoot::from_ints(x, y, z).unwrap();
        let lambda = [int(2), int(-1), int(3)];
        let sys = singular_instance(&root, &lambda, &mut sampler(131, i as u64)).unwrap();
        assert!(disc_expanded(&sys).is_zero());
        let witness = root_to_kernel(&sys, &root, &lambda).unwrap();
        assert_eq!(kernel_to_root(&sys, &witness.u).unwrap().0, root, "case {i}");
    }
}

#[test]
fn correspondence_error_paths() {
    assert_eq!(kernel_correspondence(&diagonal()), Err(Error::NotSingular));
    let mut rng = sampler(137, 0);
    let root = TriRoot::random(&mut rng);
    let lambda = random_lambda(&mut rng);
    let sys = singular_instance(&root, &lambda, &mut rng).unwrap();
    let other = TriRoot::from_ints([1, 17], [1, 19], [1, 23]).unwrap();
    assert!(matches!(root_to_kernel(&sys, &other, &lambda), Err(Error::WitnessMismatch(_))));
    let zero_lambda = [int(0), int(1), int(1)];
    assert!(matches!(root_to_kernel(&sys, &root, &zero_lambda), Err(Error::ZeroDenominator(_))));
    let not_kernel = std::array::from_fn(|i| int(i as i64 + 1));
    assert!(matches!(kernel_to_root(&sys, &not_kernel), Err(Error::WitnessMismatch(_))));
    assert!(singular_instance(&root, &[int(0), int(0), int(0)], &mut rng).is_err());
}

/// A system through `root` that is otherwise random: only `H_i(root) = 0` is imposed.
fn system_through(root: &TriRoot, rng: &mut multidisc::sampling::Sampler) -> ThreePlayerSystem {
    let [x1, x0] = &root.x;
    let [y1, y0] = &root.y;
    let [z1, z0] = &root.z;
    let zero = || vec![Rational::zero(); 4];
    let block = |p: &Rational, q: &Rational, r: &Rational, s: &Rational| vec![p * r, p * s, q * r, q * s];
    let rows = vec![
        [block(x1, x0, y1, y0), zero(), zero()].concat(),
        [zero(), block(x1, x0, z1, z0), zero()].concat(),
        [zero(), zero(), block(y1, y0, z1, z0)].concat(),
    ];
    let basis = QMatrix::from_rows(rows).unwrap().kernel_basis();
    let mut coeffs = vec![Rational::zero(); 12];
    for v in &basis {
        let w = small_int(rng, -10, 10);
        for (c, b) in coeffs.iter_mut().zip(v) {
            *c += &w * b;
        }
    }
    ThreePlayerSystem::from_rationals(coeffs.try_into().unwrap())
}

#[test]
fn simple_roots_have_invertible_transposed_jacobian() {
    let mut checked = 0;
    for trial in 0..40 {
        let mut rng = sampler(139, trial);
        // a zero coordinate makes one row of the matrix vanish by Euler
        let root = loop {
            let r = TriRoot::random(&mut rng);
            if r.coords().iter().all(|c| !c.is_zero()) {
                break r;
            }
        };
        let sys = system_through(&root, &mut rng);
        let at = root.assignment();
        assert!(sys.equations().iter().all(|h| h.eval(&at).is_zero()));
        if sys.has_zero_equation() || disc_expanded(&sys).is_zero() {
            continue;
        }
        assert!(!transposed_jacobian(&sys, &root).determinant().unwrap().is_zero(), "trial {trial}");
        checked += 1;
    }
    assert!(checked >= 30, "only {checked} nondegenerate draws");
}

#[test]
fn elimination_gives_quadratics() {
    for trial in 0..100 {
        let q = eliminate_to_quadratic(&ThreePlayerSystem::random(&mut sampler(149, trial))).unwrap();
        assert_eq!(q.degree(), 2);
        assert_eq!(q.effective_degree(), Some(2));
    }
    let q = eliminate_to_quadratic(&diagonal()).unwrap();
    assert_eq!(q.constant_coeffs().unwrap(), vec![int(1), int(0), int(1)]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matrix_symmetric_with_block_structure(seed in 0u64..10_000) {
        let mut rng = sampler(seed, 0);
        let sys = ThreePlayerSystem::random(&mut rng);
        let m = build_disc_matrix(&sys);
        prop_assert!(m.is_symmetric());
        for b in 0..3 {
            for r in 2 * b..2 * b + 2 {
                for c in 2 * b..2 * b + 2 {
                    prop_assert!(m.get(r, c).is_zero());
                }
            }
        }
        let root = TriRoot::random(&mut rng);
        prop_assert!(block_rows_match_jacobian(&sys, &root));
    }

    #[test]
    fn each_equation_satisfies_euler(seed in 0u64..10_000) {
        let sys = ThreePlayerSystem::random(&mut sampler(seed, 1));
        let [h1, h2, h3] = sys.equations();
        let (xs, ys, zs) = (&POINT_VARS[0..2], &POINT_VARS[2..4], &POINT_VARS[4..6]);
        for (h, g1, g2) in [(&h1, xs, ys), (&h2, xs, zs), (&h3, ys, zs)] {
            prop_assert!(euler_defect(h, g1).is_zero());
            prop_assert!(euler_defect(h, g2).is_zero());
        }
    }

    #[test]
    fn scaling_a_player_scales_discriminant_quadratically(seed in 0u64..10_000, t in 2i64..=5) {
        let sys = ThreePlayerSystem::random(&mut sampler(seed, 2));
        let mut scaled = sys.clone();
        for c in scaled.b.iter_mut() {
            *c = c.scale(&int(t));
        }
        prop_assert_eq!(disc_expanded(&scaled), disc_expanded(&sys).scale(&int(t * t)));
    }
}

#[test]
fn zero_player_kills_everything() {
    let sys = ThreePlayerSystem::from_ints([0, 0, 0, 0, 2, 3, 5, 7, 1, 4, 6, 9]);
    assert!(disc_expanded(&sys).is_zero());
    assert!(disc_determinantal(&sys).unwrap().is_zero());
    assert!(quadratic_form_degenerate(&sys).unwrap());
    assert_eq!(eliminate_to_quadratic(&sys), Err(Error::IdenticallyZero));
}
