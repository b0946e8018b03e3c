use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use rmf_core::cartan::{cartan_datum, AffineType, Family};
use rmf_core::exact::{as_signed_monomial, parse_signed_monomial, q_pow, qs_pow, signed_qs, Field, Poly, Scalar};
use rmf_core::rmatrix::DenomPoly;
use rmf_core::verify::{
    check_lemma16, check_lemma16_with, closed_form_denominator, compare_end_to_end, double_pole_predicate,
    schur_weyl_quiver, surjection_parameters, table_pairs, QuiverVertex, Report, Surjection,
};
use rmf_core::Error;

fn ty(f: Family, n: usize) -> AffineType {
    AffineType::new(f, n).unwrap()
}

fn lin(root: Scalar) -> Poly<Scalar> {
    Poly::linear_root(&root)
}

fn product(roots: impl IntoIterator<Item = Scalar>) -> Poly<Scalar> {
    roots.into_iter().fold(Poly::one(), |acc, r| acc.mul(&lin(r)))
}

#[test]
fn closed_form_examples() {
    let a = closed_form_denominator(ty(Family::A2even, 2), 1, 1).unwrap();
    assert_eq!(a.poly, product([q_pow(2), q_pow(5).neg()]));
    let b = closed_form_denominator(ty(Family::B1, 3), 2, 3).unwrap();
    assert_eq!(b.poly, product([qs_pow(5).neg(), qs_pow(9).neg()]));
    let d = closed_form_denominator(ty(Family::D2, 3), 3, 3).unwrap();
    assert_eq!(d.poly, product([q_pow(2), q_pow(4).neg(), q_pow(6)]));
    let a1 = closed_form_denominator(ty(Family::A1, 2), 1, 1).unwrap();
    assert_eq!(a1.poly, lin(q_pow(2)));
    let d1 = closed_form_denominator(ty(Family::D1, 4), 3, 4).unwrap();
    assert_eq!(d1.poly, product([q_pow(4)]));
    assert!(matches!(closed_form_denominator(ty(Family::B1, 3), 0, 1), Err(Error::IndexOutOfRange(_))));
}

#[test]
fn denominator_strings() {
    let d = closed_form_denominator(ty(Family::D2, 2), 1, 2).unwrap();
    assert_eq!(d.expanded_string(), "z^2 - q^6");
    assert_eq!(DenomPoly::from_json(&d.to_json()).unwrap(), d);
    assert_eq!(DenomPoly::factor(d.poly.clone()).unwrap(), d);
}

fn any_type() -> impl Strategy<Value = AffineType> {
    (prop::sample::select(Family::ALL.to_vec()), 0usize..5).prop_filter_map("rank", |(f, extra)| {
        (1..=8).find_map(|n| AffineType::new(f, n).ok()).map(|t| AffineType::new(f, t.n + extra).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closed_forms_are_symmetric(t in any_type()) {
        for (k, l) in table_pairs(t) {
            prop_assert_eq!(closed_form_denominator(t, k, l).unwrap(), closed_form_denominator(t, l, k).unwrap());
        }
    }

    #[test]
    fn closed_forms_factor_exactly(t in any_type()) {
        for (k, l) in table_pairs(t) {
            let d = closed_form_denominator(t, k, l).unwrap();
            let rebuilt = d.factors.iter().fold(Poly::one(), |acc, (r, m)| acc.mul(&lin(r.clone()).pow(*m)));
            prop_assert_eq!(&rebuilt, &d.poly);
            prop_assert!(d.factors.iter().all(|(r, _)| as_signed_monomial(r).is_some()));
        }
    }
}

#[test]
fn twisted_and_b1_types_have_simple_poles() {
    for f in [Family::A2odd, Family::A2even, Family::B1] {
        for n in 1..=7 {
            let Ok(t) = AffineType::new(f, n) else { continue };
            for (k, l) in table_pairs(t) {
                let d = closed_form_denominator(t, k, l).unwrap();
                assert!(d.factors.iter().all(|(_, m)| *m == 1), "{t} ({k},{l}): {}", d.factored_string());
            }
        }
    }
}

/// `(-q^2)^{s/2}` on the branch `(iq)^s`.
fn half_power(s: i64) -> Scalar {
    signed_qs(s, 2 * s)
}

#[test]
fn d2_double_poles_follow_the_predicate() {
    for n in 2..=6 {
        let t = ty(Family::D2, n);
        for (k, l) in table_pairs(t) {
            let d = closed_form_denominator(t, k, l).unwrap();
            let predicted: BTreeSet<i64> = double_pole_predicate(t, k, l).unwrap().into_iter().collect();
            let mut found = BTreeSet::new();
            for (r, m) in &d.factors {
                assert!(*m <= 2, "{t} ({k},{l})");
                if *m == 2 {
                    let (_, e) = as_signed_monomial(r).unwrap();
                    let s = e / 2;
                    assert!(*r == half_power(s) || *r == half_power(s).neg(), "{t} ({k},{l}): root {r}");
                    found.insert(s);
                }
            }
            assert_eq!(found, predicted, "{t} ({k},{l})");
            for s in &predicted {
                assert_eq!(d.multiplicity(&half_power(*s)), 2);
                assert_eq!(d.multiplicity(&half_power(*s).neg()), 2);
            }
        }
    }
    assert_eq!(double_pole_predicate(ty(Family::D2, 3), 2, 2).unwrap(), vec![4]);
    assert!(double_pole_predicate(ty(Family::D2, 3), 1, 2).unwrap().is_empty());
    assert!(double_pole_predicate(ty(Family::B1, 3), 2, 2).is_err());
}

fn vertex(id: &str, x: &str, t: AffineType, k: usize) -> QuiverVertex {
    QuiverVertex { id: id.into(), x: parse_signed_monomial(x).unwrap(), ty: t, k }
}

#[test]
fn quiver_examples() {
    let a = ty(Family::A2odd, 3);
    let edge = schur_weyl_quiver(&[vertex("1", "1", a, 1), vertex("2", "q^2", a, 1)]).unwrap();
    assert_eq!(edge.arrows, vec![vec![0, 1], vec![0, 0]]);
    assert_eq!(edge.cartan, vec![vec![2, -1], vec![-1, 2]]);
    assert_eq!(edge.q_exponents[0][1], (1, 0));
    let none = schur_weyl_quiver(&[vertex("1", "1", a, 1), vertex("2", "q^4", a, 1)]).unwrap();
    assert_eq!(none.cartan, vec![vec![2, 0], vec![0, 2]]);
    let d = ty(Family::D2, 3);
    let double = schur_weyl_quiver(&[vertex("a", "1", d, 2), vertex("b", "q^4", d, 2)]).unwrap();
    assert_eq!(double.arrows[0][1], 2);
    assert_eq!(double.cartan[0][1], -2);
    let mixed = schur_weyl_quiver(&[vertex("1", "1", a, 1), vertex("2", "q^2", d, 1)]);
    assert!(mixed.is_err());
}

#[test]
fn end_to_end_report_round_trips() {
    let r = compare_end_to_end(ty(Family::A2even, 2), 1, 1, true).unwrap();
    assert!(r.equal);
    assert_eq!(r.modular_agrees, Some(true));
    assert_eq!(r.computed.poly, product([q_pow(2), q_pow(5).neg()]));
    let back = Report::from_json(&r.to_json()).unwrap();
    assert_eq!(back, r);
    assert!(matches!(compare_end_to_end(ty(Family::C1, 2), 1, 1, false), Err(Error::FormulaOnly(_))));
}

#[test]
fn fusion_divisibility() {
    let b = Arc::new(cartan_datum(ty(Family::B1, 3)).unwrap());
    let good = check_lemma16(&b, Surjection::Fusion(2), 1).unwrap();
    assert!(good.pass, "{}", good.ratio_string());
    assert!(good.ratio.is_laurent());
    let (c1, c2) = surjection_parameters(&b, Surjection::Fusion(2));
    let wrong = check_lemma16_with(&b, Surjection::Fusion(2), 1, &(c1.mul(&q_pow(2)), c2));
    assert!(!matches!(wrong, Ok(ref o) if o.pass));
}

#[test]
fn dualized_divisibility_on_d2() {
    let d = Arc::new(cartan_datum(ty(Family::D2, 3)).unwrap());
    let out = check_lemma16(&d, Surjection::Dualized(2), 1).unwrap();
    assert!(out.pass, "{}", out.ratio_string());
}
