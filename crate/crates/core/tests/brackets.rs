use proptest::prelude::*;

use rmf_core::brackets::{
    a_closed_form, a_from_denominator, check_recursion, equivalent, framework_check, recursion_pairs, unit_between,
    verify_lemma41, verify_recursion, BracketExpr, Unit,
};
use rmf_core::cartan::{cartan_datum, AffineType, CartanDatum, Family};
use rmf_core::exact::{q_pow, signed_qs, Field, Poly, Scalar, SpectralFn};
use rmf_core::verify::closed_form_denominator;
use rmf_core::Error;

const MODULE_TYPES: [(Family, usize); 8] = [
    (Family::A2odd, 3),
    (Family::A2odd, 4),
    (Family::A2even, 2),
    (Family::A2even, 3),
    (Family::B1, 3),
    (Family::B1, 4),
    (Family::D2, 2),
    (Family::D2, 3),
];

fn datum(f: Family, n: usize) -> CartanDatum {
    cartan_datum(AffineType::new(f, n).unwrap()).unwrap()
}

fn module_type() -> impl Strategy<Value = (Family, usize)> {
    prop::sample::select(MODULE_TYPES.to_vec())
}

fn monomial() -> impl Strategy<Value = Scalar> {
    (0i64..4, -12i64..=12).prop_map(|(u, m)| signed_qs(u, m))
}

fn expr(d: &CartanDatum, terms: &[(Scalar, i64)]) -> BracketExpr {
    terms.iter().fold(BracketExpr::one(d), |acc, (c, e)| acc.mul(&BracketExpr::elementary(d, c).unwrap().pow(*e)))
}

/// `(c z; P)_∞ / (c P^r z; P)_∞` written out as `(1 - c z)(1 - c P z) ... (1 - c P^{r-1} z)`.
fn finite_product(c: &Scalar, period: &Scalar, r: u32) -> SpectralFn {
    let mut out = SpectralFn::one();
    let mut x = c.clone();
    for _ in 0..r {
        out = out.mul(&SpectralFn::from_poly(Poly::new(vec![Scalar::one(), x.neg()])));
        x = x.mul(period);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shifts_compose((f, n) in module_type(), c in monomial(), a in monomial(), b in monomial(), e in -2i64..=2) {
        let d = datum(f, n);
        let x = expr(&d, &[(c, e), (q_pow(1), 1)]);
        prop_assert_eq!(x.shift(&a).unwrap().shift(&b).unwrap(), x.shift(&a.mul(&b)).unwrap());
        prop_assert_eq!(x.shift(&Scalar::one()).unwrap(), x);
    }

    #[test]
    fn products_and_inverses((f, n) in module_type(), c in monomial(), d2 in monomial(), e in -3i64..=3) {
        let d = datum(f, n);
        let x = expr(&d, &[(c.clone(), e), (d2, 1)]);
        prop_assert!(x.mul(&x.inv()).is_scalar());
        prop_assert_eq!(x.mul(&x.inv()), BracketExpr::one(&d));
        prop_assert_eq!(x.pow(2), x.mul(&x));
        prop_assert_eq!(x.pow(-1), x.inv());
    }

    #[test]
    fn telescoping_quotients_reduce_to_finite_products((f, n) in module_type(), c in monomial(), r in 0u32..3) {
        let d = datum(f, n);
        let period = d.p_star().mul(&d.p_star());
        let shifted = c.mul(&period.powi(r as i64));
        let x = expr(&d, &[(c.clone(), 1), (shifted, -1)]);
        prop_assert_eq!(x.reduce_to_rational().unwrap(), finite_product(&c, &period, r));
    }

    #[test]
    fn reduction_is_multiplicative((f, n) in module_type(), a in monomial(), b in monomial(), r in 0u32..3, s in 0u32..3) {
        let d = datum(f, n);
        let period = d.p_star().mul(&d.p_star());
        let x = expr(&d, &[(a.clone(), 1), (a.mul(&period.powi(r as i64)), -1)]);
        let y = expr(&d, &[(b.mul(&period.powi(s as i64)), 1), (b, -1)]);
        let (rx, ry) = (x.reduce_to_rational().unwrap(), y.reduce_to_rational().unwrap());
        prop_assert_eq!(x.mul(&y).reduce_to_rational().unwrap(), rx.mul(&ry));
    }
}

#[test]
fn unbalanced_products_do_not_reduce() {
    let d = datum(Family::B1, 3);
    let x = BracketExpr::sq(&d, 1);
    assert!(matches!(x.reduce_to_rational(), Err(Error::NonTelescoping(_))));
    assert!(matches!(BracketExpr::elementary(&d, &q_pow(1).add(&Scalar::one())), Err(Error::NotSignedMonomial(_))));
}

#[test]
fn bracket_notation_is_rendered() {
    let d = datum(Family::A2odd, 3);
    assert_eq!(BracketExpr::sq(&d, 3).to_string(), "[3]");
    assert_eq!(BracketExpr::ang(&d, 3).to_string(), "⟨3⟩");
    assert_eq!(BracketExpr::sq(&d, 1).div(&BracketExpr::ang(&d, 2).pow(2)).to_string(), "[1]/⟨2⟩²");
    let d2 = datum(Family::D2, 3);
    assert_eq!(BracketExpr::br(&d2, 2).to_string(), "{1}");
    assert_eq!(BracketExpr::brp(&d2, 3).to_string(), "{3/2}'");
    let u = Unit { i_exp: 2, qs_exp: 2, z_exp: 1 };
    assert_eq!(u.to_string(), "-q*z");
}

#[test]
fn units_between_rational_functions() {
    let z = SpectralFn::var();
    let f = z.sub(&SpectralFn::constant(q_pow(2)));
    let g = f.mul(&SpectralFn::monomial(signed_qs(1, 3), -2));
    assert_eq!(unit_between(&g, &f), Some(Unit { i_exp: 1, qs_exp: 3, z_exp: -2 }));
    assert_eq!(unit_between(&f, &z), None);
}

#[test]
fn closed_forms_agree_with_denominator_products() {
    for (f, n) in MODULE_TYPES {
        let d = datum(f, n);
        for k in 1..=n {
            for l in 1..=n {
                let Ok(a) = a_closed_form(&d, k, l) else { continue };
                let oracle = a_from_denominator(&d, &closed_form_denominator(d.ty, k, l).unwrap()).unwrap();
                let v = equivalent(&a, &oracle, "closed form");
                assert!(v.pass, "{f:?} n={n} ({k},{l}): {}", v.detail);
            }
        }
    }
}

#[test]
fn closed_form_ranges() {
    let d = datum(Family::A2odd, 3);
    assert!(a_closed_form(&d, 3, 3).is_ok());
    assert!(matches!(a_closed_form(&d, 4, 1), Err(Error::IndexOutOfRange(_))));
    let b = datum(Family::B1, 3);
    assert!(a_closed_form(&b, 3, 1).is_ok());
    assert!(matches!(a_closed_form(&b, 3, 3), Err(Error::IndexOutOfRange(_))));
}

#[test]
fn recursion_holds() {
    for (f, n) in MODULE_TYPES {
        let d = datum(f, n);
        for (k, l) in recursion_pairs(&d) {
            let v = verify_recursion(&d, k, l).unwrap();
            assert!(v.pass, "{f:?} n={n} ({k},{l}): {}", v.detail);
            assert!(v.unit.is_some());
        }
    }
}

#[test]
fn recursion_with_wrong_shifts_fails() {
    let d = datum(Family::A2odd, 3);
    let v = check_recursion(&d, 2, 2, &q_pow(1), &q_pow(1)).unwrap();
    assert!(!v.pass);
    assert!(check_recursion(&d, 2, 1, &q_pow(1), &q_pow(1)).is_err());
}

#[test]
fn product_identity_for_small_pairs() {
    for (f, n) in MODULE_TYPES {
        let d = datum(f, n);
        for (k, l) in [(1, 1), (1, 2), (2, 2)] {
            if a_closed_form(&d, k, l).is_err() {
                continue;
            }
            let v = verify_lemma41(&d, k, l).unwrap();
            assert!(v.pass, "{f:?} n={n} ({k},{l}): {}", v.detail);
        }
    }
}

#[test]
fn fusion_step_framework() {
    for (f, n) in MODULE_TYPES {
        let d = datum(f, n);
        for l in 2..=n - d.theta {
            let v = framework_check(&d, l).unwrap();
            assert!(v.pass, "{f:?} n={n} l={l}: {}", v.detail);
        }
        assert!(framework_check(&d, 1).is_err());
    }
}
