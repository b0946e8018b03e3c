use proptest::prelude::*;

use rmf_core::cartan::{cartan_datum, AffineType, CartanDatum, Family, Weight};
use rmf_core::exact::{int, q_pow, Field, Scalar};
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

/// `(-q)^a` for an integer `a`.
fn neg_q(a: i64) -> Scalar {
    int(-1).powi(a).mul(&q_pow(a))
}

#[test]
fn p_star_table() {
    for (f, n) in MODULE_TYPES {
        let d = datum(f, n);
        let nn = n as i64;
        let expected = match f {
            Family::A2odd => neg_q(2 * nn).neg(),
            Family::A2even => neg_q(2 * nn + 1),
            Family::B1 => neg_q(2 * nn - 1).neg(),
            Family::D2 => int(-1).powi(nn).mul(&q_pow(2 * nn)).neg(),
            _ => unreachable!(),
        };
        assert_eq!(d.p_star(), expected, "{f:?} n={n}");
    }
}

#[test]
fn t_and_theta() {
    for (f, n) in MODULE_TYPES {
        let d = datum(f, n);
        assert_eq!(d.t, if f == Family::D2 { 2 } else { 1 });
        assert_eq!(d.theta, if matches!(f, Family::B1 | Family::D2) { 1 } else { 0 });
        assert_eq!(d.max_fused_index(), n - d.theta);
    }
}

#[test]
fn cartan_matrix_is_symmetrizable_with_null_and_central_vectors() {
    for (f, n) in MODULE_TYPES {
        let d = datum(f, n);
        let m = n + 1;
        for i in 0..m {
            assert_eq!(d.cartan[i][i], 2);
            for j in 0..m {
                assert_eq!(d.symmetrizers[i] * d.cartan[i][j] as i64, d.symmetrizers[j] * d.cartan[j][i] as i64);
                if i != j {
                    assert!(d.cartan[i][j] <= 0);
                }
            }
            let row: i64 = (0..m).map(|j| d.cartan[i][j] as i64 * d.null_coeffs[j]).sum();
            assert_eq!(row, 0, "{f:?} n={n}: A a != 0 in row {i}");
            let col: i64 = (0..m).map(|j| d.center_coeffs[j] * d.cartan[j][i] as i64).sum();
            assert_eq!(col, 0, "{f:?} n={n}: c A != 0 in column {i}");
        }
        let classical_delta: Vec<i64> =
            (0..n).map(|k| (0..m).map(|i| d.null_coeffs[i] * d.roots[i][k] as i64).sum()).collect();
        assert!(classical_delta.iter().all(|&x| x == 0), "{f:?} n={n}: delta is not classically trivial");
    }
}

#[test]
fn fundamental_weights_are_dual_to_coroots() {
    for (f, n) in MODULE_TYPES {
        let d = datum(f, n);
        for i in 1..=n {
            for j in 1..=n {
                assert_eq!(d.pairing(i, &d.fundamental_weight(j)), (i == j) as i32, "{f:?} n={n} <h_{i}, w_{j}>");
            }
        }
    }
}

#[test]
fn rank_and_type_validation() {
    assert!(matches!(AffineType::new(Family::A2odd, 2), Err(Error::UnsupportedRank { .. })));
    assert!(matches!(cartan_datum(AffineType::new(Family::A1, 3).unwrap()), Err(Error::FormulaOnly(_))));
    for f in Family::ALL {
        assert_eq!(f.name().parse::<Family>().unwrap(), f);
        assert_eq!(f.name().to_lowercase().parse::<Family>().unwrap(), f);
    }
    assert!("E8".parse::<Family>().is_err());
}

fn module_type() -> impl Strategy<Value = (Family, usize)> {
    prop::sample::select(MODULE_TYPES.to_vec())
}

fn weight_for(n: usize) -> impl Strategy<Value = Weight> {
    prop::collection::vec(-4i32..=4, n).prop_map(|v| Weight(v.into_iter().map(|x| 2 * x).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reflections_are_involutions((f, n) in module_type(), seed in prop::collection::vec(-4i32..=4, 4), i in 0usize..5) {
        let d = datum(f, n);
        let w = Weight(seed.iter().take(n).map(|x| 2 * x).collect());
        let i = i % (n + 1);
        prop_assert_eq!(d.reflect(i, &d.reflect(i, &w)), w.clone());
        prop_assert_eq!(d.pairing(i, &d.reflect(i, &w)), -d.pairing(i, &w));
    }

    #[test]
    fn dominant_conjugate_is_dominant_and_orbit_invariant((f, n) in module_type(), w in weight_for(4), i in 1usize..5) {
        let d = datum(f, n);
        let w = Weight(w.0.into_iter().take(n).collect());
        let i = 1 + (i - 1) % n;
        let dom = d.dominant_conjugate(&w);
        prop_assert!(d.is_dominant(&dom));
        prop_assert_eq!(d.dominant_conjugate(&d.reflect(i, &w)), dom);
    }

    #[test]
    fn pairing_is_additive((f, n) in module_type(), a in weight_for(4), b in weight_for(4), i in 0usize..5) {
        let d = datum(f, n);
        let (a, b) = (Weight(a.0[..n].to_vec()), Weight(b.0[..n].to_vec()));
        let i = i % (n + 1);
        prop_assert_eq!(d.pairing(i, &a.add(&b)), d.pairing(i, &a) + d.pairing(i, &b));
        prop_assert_eq!(d.k_exp(i, &a.add(&b)), d.k_exp(i, &a) + d.k_exp(i, &b));
    }
}
