use std::sync::Arc;

use rmf_core::cartan::{cartan_datum, AffineType, CartanDatum, Family};
use rmf_core::exact::{q_pow, qs_pow, Field, Poly, Scalar, SpectralFn};
use rmf_core::modules::{check_relations, Label};
use rmf_core::rmatrix::{
    compare_r11, denominator, invert_variable, is_minimal, normalized_r_matrix, restrict_to_hw, spectral_r_1n,
    spectral_r_1n_formula, unitarity_holds, LabelOrder, R11Scope,
};
use rmf_core::Error;

fn datum(f: Family, n: usize) -> Arc<CartanDatum> {
    Arc::new(cartan_datum(AffineType::new(f, n).unwrap()).unwrap())
}

/// `z^t - c`.
fn zt_minus(t: usize, c: Scalar) -> Poly<Scalar> {
    let mut coeffs = vec![Scalar::zero(); t + 1];
    coeffs[0] = c.neg();
    coeffs[t] = Scalar::one();
    Poly::new(coeffs)
}

const SMALL: [(Family, usize); 3] = [(Family::A2even, 2), (Family::B1, 3), (Family::D2, 2)];

#[test]
fn r11_matches_closed_formula_on_the_index_set() {
    for (f, n) in SMALL {
        let r = normalized_r_matrix(&datum(f, n), 1, 1).unwrap();
        let std = compare_r11(&r, LabelOrder::Standard, R11Scope::IndexSet).unwrap();
        assert!(std.pass(), "{f:?} n={n}: {:?}", std.mismatches);
        assert_eq!(std.checked, n * (n - 1));
        let rev = compare_r11(&r, LabelOrder::Reversed, R11Scope::IndexSet).unwrap();
        assert!(!rev.pass(), "{f:?} n={n}: reversed order should not match");
    }
}

#[test]
fn r11_outside_the_index_set() {
    let r = normalized_r_matrix(&datum(Family::B1, 3), 1, 1).unwrap();
    assert!(compare_r11(&r, LabelOrder::Standard, R11Scope::AllLabels).unwrap().pass());
    for (f, n) in [(Family::A2even, 2), (Family::D2, 2)] {
        let r = normalized_r_matrix(&datum(f, n), 1, 1).unwrap();
        let all = compare_r11(&r, LabelOrder::Standard, R11Scope::AllLabels).unwrap();
        assert!(!all.mismatches.is_empty());
        let empty = Label::Empty.to_string();
        assert!(all.mismatches.iter().all(|m| m.contains(&empty)), "{f:?}: {:?}", all.mismatches);
    }
}

#[test]
fn r11_needs_the_vector_pair() {
    let d = datum(Family::A2even, 2);
    let r = normalized_r_matrix(&d, 1, 2).unwrap();
    assert!(compare_r11(&r, LabelOrder::Standard, R11Scope::IndexSet).is_err());
}

#[test]
fn d11_from_p_star() {
    for (f, n) in SMALL {
        let d = datum(f, n);
        let r = normalized_r_matrix(&d, 1, 1).unwrap();
        let t = d.t as i64;
        let expected = zt_minus(d.t, q_pow(2 * t)).mul(&zt_minus(d.t, d.p_star().powi(t)));
        assert_eq!(denominator(&r).unwrap().poly, expected, "{f:?} n={n}");
    }
}

#[test]
fn b1_d1n() {
    let d = datum(Family::B1, 3);
    let r = normalized_r_matrix(&d, 1, 3).unwrap();
    let den = denominator(&r).unwrap();
    assert_eq!(den.poly, Poly::linear_root(&qs_pow(7)));
    assert_eq!(den.factors, vec![(qs_pow(7), 1)]);
}

#[test]
fn d2_spectral_r_1n() {
    let d = datum(Family::D2, 2);
    let s = spectral_r_1n(&d).unwrap();
    assert_eq!(s.matrix, spectral_r_1n_formula(2));
    assert_eq!(s.denominator.poly, zt_minus(2, q_pow(6)));
    let r = normalized_r_matrix(&d, 1, 2).unwrap();
    assert_eq!(restrict_to_hw(&r, &s).unwrap(), s.matrix);
    assert_eq!(denominator(&r).unwrap().poly, s.denominator.poly);
    assert!(matches!(spectral_r_1n(&datum(Family::B1, 3)), Err(Error::UnsupportedType(_))));
}

#[test]
fn r_matrix_properties() {
    let d = datum(Family::A2even, 2);
    let r12 = normalized_r_matrix(&d, 1, 2).unwrap();
    let r21 = normalized_r_matrix(&d, 2, 1).unwrap();
    for r in [&r12, &r21] {
        assert_eq!(r.hom_dim(), 1);
        assert!(r.check().is_empty());
        assert!(check_relations(&r.left).is_empty());
        assert!(check_relations(&r.right).is_empty());
        assert!(is_minimal(r, &denominator(r).unwrap()).unwrap());
    }
    assert_eq!(denominator(&r12).unwrap(), denominator(&r21).unwrap());
    assert!(unitarity_holds(&r12, &r21));
    let r11 = normalized_r_matrix(&d, 1, 1).unwrap();
    assert!(unitarity_holds(&r11, &r11));
    assert!(!unitarity_holds(&r12, &r12));
}

#[test]
fn r_matrix_is_normalized_on_the_anchor() {
    let r = normalized_r_matrix(&datum(Family::B1, 3), 1, 1).unwrap();
    let top = r.left.index_of(&Label::Pos(1)).unwrap();
    assert_eq!(r.image(top, top), vec![(top, top, SpectralFn::one())]);
}

#[test]
fn minimality_rejects_a_padded_denominator() {
    let d = datum(Family::D2, 2);
    let r = normalized_r_matrix(&d, 1, 1).unwrap();
    let mut padded = denominator(&r).unwrap();
    padded.poly = padded.poly.mul(&Poly::linear_root(&q_pow(1)));
    assert!(!is_minimal(&r, &padded).unwrap());
}

#[test]
fn inverting_the_variable() {
    let z = SpectralFn::var();
    let c = SpectralFn::constant(q_pow(2));
    let f = z.sub(&c).div(&z.add(&c));
    let g = invert_variable(&f);
    let zi = z.inv().unwrap();
    assert_eq!(g, zi.sub(&c).div(&zi.add(&c)));
    assert_eq!(invert_variable(&g), f);
}
