use multidisc::binary_form::{
    binary_form_discriminant, binary_form_discriminant_with_chart, rational_discriminant, BinaryForm, Chart,
};
use multidisc::poly::{MultiPoly, VarRef};
use multidisc::rational::{int, Rational};
use multidisc::Error;
use num_traits::Zero;
use proptest::prelude::*;

/// Coefficients of `prod (b_i x1 - a_i x0)`, ascending in `x1`.
fn from_roots(roots: &[(i64, i64)]) -> Vec<Rational> {
    let mut coeffs = vec![int(1)];
    for &(a, b) in roots {
        let mut next = vec![int(0); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c * int(b);
            next[i] -= c * int(a);
        }
        coeffs = next;
    }
    coeffs
}

/// `prod_{i<j} (a_i b_j - a_j b_i)^2`
fn root_product(roots: &[(i64, i64)]) -> Rational {
    let mut acc = int(1);
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let d = roots[i].0 * roots[j].1 - roots[j].0 * roots[i].1;
            acc *= int(d * d);
        }
    }
    acc
}

fn projective_root() -> impl Strategy<Value = (i64, i64)> {
    (-6i64..=6, -4i64..=4).prop_filter("nonzero", |&(a, b)| a != 0 || b != 0)
}

proptest! {
    #[test]
    fn discriminant_is_product_of_root_differences(roots in prop::collection::vec(projective_root(), 2..=5)) {
        let q = BinaryForm::from_rationals(&from_roots(&roots)).unwrap();
        prop_assert_eq!(rational_discriminant(&q).unwrap(), root_product(&roots));
    }

    #[test]
    fn scaling_a_form_scales_by_power(roots in prop::collection::vec(projective_root(), 2..=4), t in 1i64..=5) {
        let coeffs = from_roots(&roots);
        let d = coeffs.len() - 1;
        let scaled: Vec<Rational> = coeffs.iter().map(|c| c * int(t)).collect();
        let base = rational_discriminant(&BinaryForm::from_rationals(&coeffs).unwrap()).unwrap();
        let s = rational_discriminant(&BinaryForm::from_rationals(&scaled).unwrap()).unwrap();
        prop_assert_eq!(s, base * int(t).pow(2 * d as i32 - 2));
    }
}

#[test]
fn cubic_matches_classical_formula() {
    // a x1^3 + b x1^2 x0 + c x1 x0^2 + d x0^3
    for (a, b, c, d) in [(1, 0, -1, 0), (2, -3, 5, 7), (1, 1, 1, 1), (-4, 0, 3, -2), (3, 6, 3, 0)] {
        let q = BinaryForm::from_rationals(&[int(d), int(c), int(b), int(a)]).unwrap();
        let classical =
            b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d;
        assert_eq!(rational_discriminant(&q).unwrap(), int(classical), "({a},{b},{c},{d})");
    }
}

#[test]
fn quadratic_examples() {
    let disc =
        |c: [i64; 3]| rational_discriminant(&BinaryForm::from_rationals(&c.map(int)).unwrap()).unwrap();
    assert_eq!(disc([0, 1, 0]), int(1));
    assert_eq!(disc([1, 0, 1]), int(-4));
    assert_eq!(disc([1, 0, -1]), int(4));
    assert_eq!(disc([0, 0, 1]), int(0));
    let t3 = BinaryForm::from_rationals(&[int(0), int(-1), int(0), int(1)]).unwrap();
    assert_eq!(rational_discriminant(&t3).unwrap(), int(4));
}

#[test]
fn chart_reported() {
    let x0x1 = BinaryForm::from_rationals(&[int(0), int(1), int(0)]).unwrap();
    let (d, chart) = binary_form_discriminant_with_chart(&x0x1).unwrap();
    assert_eq!(d.as_constant(), Some(int(1)));
    assert_eq!(chart, Chart::Shear(1));
    let generic = BinaryForm::from_rationals(&[int(1), int(2), int(3)]).unwrap();
    assert_eq!(binary_form_discriminant_with_chart(&generic).unwrap().1, Chart::X0);
    let zero = BinaryForm::from_rationals(&[int(0), int(0), int(0)]).unwrap();
    let (d, chart) = binary_form_discriminant_with_chart(&zero).unwrap();
    assert!(d.is_zero());
    assert_eq!(chart, Chart::Vanishing);
}

#[test]
fn linear_forms_are_rejected() {
    let q = BinaryForm::from_rationals(&[int(1), int(1)]).unwrap();
    assert!(matches!(binary_form_discriminant(&q), Err(Error::WrongShape(_))));
}

#[test]
fn symbolic_quadratic_is_b2_minus_4ac() {
    let v = |i| MultiPoly::var(VarRef::new(multidisc::Group::Coeff, 7, i));
    let (c0, c1, c2) = (v(0), v(1), v(2));
    let q = BinaryForm::new(vec![c0.clone(), c1.clone(), c2.clone()]).unwrap();
    let expected = &c1 * &c1 - (&c0 * &c2).scale(&int(4));
    assert_eq!(binary_form_discriminant(&q).unwrap(), expected);
    assert!(!expected.is_zero());
    assert!(Rational::zero().is_zero());
}
