use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rmf_core::cartan::{cartan_datum, AffineType, CartanDatum, Family, Weight};
use rmf_core::exact::{q_pow, signed_qs, Field, Matrix, Scalar};
use rmf_core::fusion::{
    at, dorey_coefficients, extremal_vectors, find_homs, fundamental_rep, generated_submodule,
    highest_weight_vectors, spectral_shift, verify_dorey, DoreyRegime,
};
use rmf_core::modules::{check_relations, spin_rep, tensor, trivial_rep, vector_rep, Gen, Label, Rep};
use rmf_core::Error;

fn datum(f: Family, n: usize) -> Arc<CartanDatum> {
    Arc::new(cartan_datum(AffineType::new(f, n).unwrap()).unwrap())
}

#[test]
fn fused_dimensions_and_relations() {
    let cases = [
        (Family::A2odd, 3, 2, 15),
        (Family::A2odd, 3, 3, 20),
        (Family::A2even, 2, 2, 10),
        (Family::B1, 3, 2, 22),
        (Family::D2, 3, 2, 29),
    ];
    for (f, n, k, dim) in cases {
        let d = datum(f, n);
        let v = fundamental_rep(&d, k).unwrap();
        assert_eq!(v.dim(), dim, "{f:?} n={n} k={k}");
        let bad = check_relations(&v);
        assert!(bad.is_empty(), "{f:?} n={n} k={k}: {bad:?}");
        assert_eq!(v.block(&d.fundamental_weight(k)).len(), 1, "{f:?} n={n} k={k}: top weight space");
        let ms: BTreeMap<Weight, usize> = v.blocks().iter().map(|(w, i)| (w.clone(), i.len())).collect();
        for i in 1..=n {
            let r: BTreeMap<Weight, usize> = ms.iter().map(|(w, m)| (d.reflect(i, w), *m)).collect();
            assert_eq!(r, ms, "{f:?} n={n} k={k}: weights not s_{i}-invariant");
        }
    }
}

#[test]
fn first_fundamental_is_the_vector_module() {
    let d = datum(Family::B1, 3);
    let v = fundamental_rep(&d, 1).unwrap();
    let w = vector_rep(&d).unwrap();
    assert_eq!(v.labels, w.labels);
    assert_eq!(v.e, w.e);
    let s = fundamental_rep(&d, 3).unwrap();
    assert_eq!(s.labels, spin_rep(&d).unwrap().labels);
    assert!(matches!(fundamental_rep(&d, 4), Err(Error::IndexOutOfRange(_))));
    assert!(matches!(fundamental_rep(&d, 0), Err(Error::IndexOutOfRange(_))));
}

/// Span of everything reachable from `v` by words in the generators, computed with global
/// sparse vectors and per-weight rank counts.
fn brute_force_closure(rep: &Rep, start: BTreeMap<usize, Scalar>) -> usize {
    let weight_of = |v: &BTreeMap<usize, Scalar>| rep.weights[*v.keys().next().unwrap()].clone();
    let mut spans: BTreeMap<Weight, Vec<Vec<Scalar>>> = BTreeMap::new();
    let mut frontier = vec![start];
    let dense = |v: &BTreeMap<usize, Scalar>| {
        let mut out = vec![Scalar::zero(); rep.dim()];
        for (k, c) in v {
            out[*k] = c.clone();
        }
        out
    };
    while let Some(v) = frontier.pop() {
        let w = weight_of(&v);
        let rows = spans.entry(w).or_default();
        let mut trial = rows.clone();
        trial.push(dense(&v));
        if Matrix::from_rows(trial.clone(), rep.dim()).rank() == rows.len() {
            continue;
        }
        *rows = trial;
        for i in 0..rep.n_nodes() {
            for g in [Gen::E(i), Gen::F(i)] {
                let image: BTreeMap<usize, Scalar> = rep.apply(g, &v).into_iter().filter(|(_, c)| !c.is_zero()).collect();
                if !image.is_empty() {
                    frontier.push(image);
                }
            }
        }
    }
    spans.values().map(Vec::len).sum()
}

#[test]
fn b1_second_fundamental_agrees_with_independent_closure() {
    let d = datum(Family::B1, 3);
    let v1 = vector_rep(&d).unwrap();
    let t = tensor(&at(&v1, &spectral_shift(&d, 1)).unwrap(), &at(&v1, &spectral_shift(&d, -1)).unwrap(), false)
        .unwrap()
        .rep;
    let top = d.fundamental_weight(2);
    let hw = highest_weight_vectors(&t, &top);
    assert_eq!(hw.len(), 1);
    // Descend to the lowest weight -ϖ_2 and close up from there instead.
    let mut w = top.clone();
    let mut v = hw[0].clone();
    while let Some(i) = (1..=3).find(|&i| d.pairing(i, &w) > 0) {
        for _ in 0..d.pairing(i, &w) {
            let (nw, nv) = rmf_core::fusion::apply_block_flat(&t, Gen::F(i), &w, &v);
            w = nw;
            v = nv;
        }
    }
    assert_eq!(w, top.neg());
    let block = t.block(&w);
    let low: BTreeMap<usize, Scalar> =
        v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(p, c)| (block[p], c.clone())).collect();
    let fused = fundamental_rep(&d, 2).unwrap();
    assert_eq!(brute_force_closure(&t, low), fused.dim());
    assert_eq!(generated_submodule(&t, &w, &v).unwrap().dim(), fused.dim());
}

#[test]
fn highest_weight_vectors_of_d2_spin_vector_tensor() {
    let d = datum(Family::D2, 3);
    let (vn, v1) = (spin_rep(&d).unwrap(), vector_rep(&d).unwrap());
    let t = tensor(&at(&vn, &q_pow(1)).unwrap(), &at(&v1, &q_pow(-2)).unwrap(), false).unwrap().rep;
    let wn = d.fundamental_weight(3);
    let lambda = wn.add(&d.fundamental_weight(1));
    let top = highest_weight_vectors(&t, &lambda);
    assert_eq!(top.len(), 1);
    let plus = Label::Pair(Box::new(Label::Spin(vec![true; 3])), Box::new(Label::Pos(1)));
    let p = t.local_index(t.index_of(&plus).unwrap());
    assert!(top[0].iter().enumerate().all(|(i, c)| (i == p) != c.is_zero()));
    let pair = highest_weight_vectors(&t, &wn);
    assert_eq!(pair.len(), 2);
    let empty = Label::Pair(Box::new(Label::Spin(vec![true; 3])), Box::new(Label::Empty));
    let pe = t.local_index(t.index_of(&empty).unwrap());
    let mut unit = vec![Scalar::zero(); t.block(&wn).len()];
    unit[pe] = Scalar::one();
    let rank = Matrix::from_rows(vec![pair[0].clone(), pair[1].clone(), unit], t.block(&wn).len()).rank();
    assert_eq!(rank, 2, "m⁺ ⊗ v_∅ is a highest weight vector");
    assert!(highest_weight_vectors(&t, &Weight(vec![8, 0, 0])).is_empty());
}

#[test]
fn dual_pairing_and_schur() {
    for (f, n) in [(Family::A2odd, 3), (Family::A2even, 2), (Family::B1, 3), (Family::D2, 2)] {
        let d = datum(f, n);
        let v1 = vector_rep(&d).unwrap();
        let a = q_pow(2);
        let pair = tensor(&at(&v1, &a).unwrap(), &at(&v1, &a.mul(&d.p_star())).unwrap(), false).unwrap().rep;
        let homs = find_homs(Arc::new(pair), Arc::new(trivial_rep(&d))).unwrap();
        assert_eq!(homs.dim(), 1, "{f:?} n={n}: right dual pairing");
        assert!(homs.check_intertwiner(&homs.basis[0]).is_empty());
        let v = Arc::new(v1.clone());
        let ends = find_homs(v.clone(), v.clone()).unwrap();
        assert_eq!(ends.dim(), 1, "{f:?} n={n}: Schur");
        assert!(ends.check_intertwiner(&ends.basis[0]).is_empty());
        let shifted = find_homs(v, Arc::new(at(&v1, &q_pow(1)).unwrap())).unwrap();
        assert_eq!(shifted.dim(), 0, "{f:?} n={n}: generic twist is not isomorphic");
    }
}

#[test]
fn wrong_spectral_parameters_admit_no_fusion_map() {
    let d = datum(Family::A2odd, 3);
    let v1 = fundamental_rep(&d, 1).unwrap();
    let v2 = fundamental_rep(&d, 2).unwrap();
    let t = tensor(&at(&v1, &q_pow(1)).unwrap(), &at(&v1, &q_pow(-1)).unwrap(), false).unwrap().rep;
    assert_eq!(find_homs(Arc::new(t), v2).unwrap().dim(), 0);
}

fn lookup(table: &[rmf_core::fusion::DoreyCoefficient], l: &Weight, m: &Weight, x: &Weight) -> Option<Scalar> {
    table.iter().find(|c| &c.lambda == l && &c.mu == m && &c.xi == x).map(|c| c.value.clone())
}

#[test]
fn dorey_table_examples() {
    let d = datum(Family::A2odd, 3);
    let table = dorey_coefficients(&d, 1, 1).unwrap();
    let (e1, e2) = (Weight::eps(3, 1), Weight::eps(3, 2));
    let l = e1.add(&e2);
    assert_eq!(lookup(&table, &l, &e1, &e2), Some(Scalar::one()));
    let neg_q1 = signed_qs(2, d.qi_exp[1]);
    assert_eq!(lookup(&table, &l, &e2, &e1), Some(neg_q1));
    let d2 = datum(Family::D2, 2);
    let spin = dorey_coefficients(&d2, 2, 2).unwrap();
    let half = |a: i32, b: i32| Weight(vec![a, b]);
    // λ = ε_1, μ = (+,-)/2, ξ = (+,+)/2 has c_2 = 0; μ = (+,+), ξ = (+,-) likewise; the pair
    // (μ_2, ξ_2) = (-, +) gives c_2 = 1 and c_1 = 0.
    assert_eq!(lookup(&spin, &Weight(vec![2, 0]), &half(1, 1), &half(1, -1)), Some(Scalar::one()));
    assert_eq!(lookup(&spin, &Weight(vec![2, 0]), &half(1, -1), &half(1, 1)), Some(signed_qs(2, 2)));
    assert!(dorey_coefficients(&d, 2, 2).is_err());
    assert!(dorey_coefficients(&datum(Family::B1, 3), 3, 3).is_err());
}

#[test]
fn dorey_tables_are_reflection_invariant() {
    let mut cases = Vec::new();
    for (f, n) in [(Family::A2odd, 3), (Family::A2odd, 4), (Family::A2even, 3), (Family::B1, 4), (Family::D2, 4)] {
        let d = datum(f, n);
        for i in 1..n {
            for j in 1..n {
                if i + j <= n - d.theta {
                    cases.push((d.clone(), i, j));
                }
            }
        }
    }
    for n in 2..=4 {
        cases.push((datum(Family::D2, n), n, n));
    }
    for (d, i, j) in cases {
        let table = dorey_coefficients(&d, i, j).unwrap();
        let keys: BTreeSet<(Weight, Weight, Weight)> =
            table.iter().map(|c| (c.lambda.clone(), c.mu.clone(), c.xi.clone())).collect();
        assert_eq!(keys.len(), table.len());
        for c in &table {
            assert_eq!(c.mu.add(&c.xi), c.lambda);
            if i != d.n() {
                assert!(c.mu.0.iter().zip(&c.xi.0).all(|(a, b)| a * b == 0), "μ_k ξ_k = 0");
            }
            for k in 1..=d.n() {
                if d.pairing(k, &c.lambda) == 0 {
                    continue;
                }
                let (l, m, x) = (d.reflect(k, &c.lambda), d.reflect(k, &c.mu), d.reflect(k, &c.xi));
                assert_eq!(lookup(&table, &l, &m, &x), Some(c.value.clone()), "{} ({i},{j}) s_{k}", d.ty);
            }
        }
    }
}

#[test]
fn extremal_vectors_cover_the_orbit() {
    let d = datum(Family::B1, 3);
    let v2 = fundamental_rep(&d, 2).unwrap();
    let ext = extremal_vectors(&v2, &d.fundamental_weight(2)).unwrap();
    assert_eq!(ext.len(), 12);
    for (w, v) in &ext {
        assert_eq!(d.dominant_conjugate(w), d.fundamental_weight(2));
        assert_eq!(v.len(), v2.block(w).len());
        assert!(v.iter().any(|c| !c.is_zero()));
    }
}

#[test]
fn dorey_examples() {
    let a = verify_dorey(&datum(Family::A2odd, 3), DoreyRegime::Classical(1, 1)).unwrap();
    assert!(a.pass(), "{a}");
    let iota = a.morphisms.iter().find(|m| m.name == "ι").unwrap();
    assert_eq!(iota.parameters, (signed_qs(2, 2), signed_qs(2, -2)));
    assert!(a.unit.is_some());
    let s = verify_dorey(&datum(Family::D2, 3), DoreyRegime::Spin(1)).unwrap();
    assert!(s.pass(), "{s}");
    let p = verify_dorey(&datum(Family::A2even, 2), DoreyRegime::A2even1nn).unwrap();
    assert!(p.pass(), "{p}");
}

#[test]
fn dorey_regimes_are_validated() {
    let d = datum(Family::A2odd, 3);
    assert!(verify_dorey(&d, DoreyRegime::Classical(2, 2)).is_err());
    assert!(verify_dorey(&d, DoreyRegime::Spin(1)).is_err());
    assert!(verify_dorey(&d, DoreyRegime::A2even1nn).is_err());
    assert!(verify_dorey(&datum(Family::D2, 3), DoreyRegime::SpinPair(1, 1)).is_err());
}
