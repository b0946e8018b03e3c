use std::collections::BTreeMap;

use super::rep::{Gen, Rep};
use crate::exact::{qfactorial, qint, Field, Scalar};

type SparseVec = BTreeMap<usize, Scalar>;

fn apply_pow(rep: &Rep, g: Gen, m: usize, v: &SparseVec) -> SparseVec {
    let mut out = v.clone();
    for _ in 0..m {
        if out.is_empty() {
            break;
        }
        out = rep.apply(g, &out);
    }
    out
}

fn axpy(acc: &mut SparseVec, c: &Scalar, v: &SparseVec) {
    for (&k, x) in v {
        let t = acc.entry(k).or_insert_with(Scalar::zero);
        *t = t.add(&c.mul(x));
    }
    acc.retain(|_, x| !x.is_zero());
}

/// Verifies the defining relations on every basis vector and returns the violations.
///
/// Checked exactly: weight grading of every action entry (equivalent to the `K`-conjugation
/// relations), `[e_i, f_j] = delta_ij (K_i - K_i^{-1})/(q_i - q_i^{-1})`, and the `q`-Serre
/// relations for `e` and `f`. Every relation is homogeneous in `z`, so symbolic powers of `z`
/// are set to one.
pub fn check_relations(rep: &Rep) -> Vec<String> {
    let datum = &rep.datum;
    let nodes = datum.n() + 1;
    let mut report = Vec::new();
    for b in 0..rep.dim() {
        for i in 0..nodes {
            let up = rep.weights[b].add(&datum.root_weight(i));
            let down = rep.weights[b].sub(&datum.root_weight(i));
            if rep.e[i][b].iter().any(|en| rep.weights[en.target] != up) {
                report.push(format!("e{i} breaks the weight grading at {}", rep.labels[b]));
            }
            if rep.f[i][b].iter().any(|en| rep.weights[en.target] != down) {
                report.push(format!("f{i} breaks the weight grading at {}", rep.labels[b]));
            }
        }
    }
    for b in 0..rep.dim() {
        let v: SparseVec = [(b, Scalar::one())].into_iter().collect();
        for i in 0..nodes {
            for j in 0..nodes {
                let mut lhs = rep.apply(Gen::E(i), &rep.apply(Gen::F(j), &v));
                let fe = rep.apply(Gen::F(j), &rep.apply(Gen::E(i), &v));
                axpy(&mut lhs, &Scalar::one().neg(), &fe);
                if i == j {
                    let h = datum.pairing(i, &rep.weights[b]) as i64;
                    axpy(&mut lhs, &qint(h, datum.qi_exp[i]).neg(), &v);
                }
                if !lhs.is_empty() {
                    report.push(format!("[e{i},f{j}] fails at {}", rep.labels[b]));
                }
            }
        }
        for i in 0..nodes {
            for j in 0..nodes {
                if i == j {
                    continue;
                }
                let m = (1 - datum.cartan[i][j]) as usize;
                for (ei, ej, name) in [(Gen::E(i), Gen::E(j), 'e'), (Gen::F(i), Gen::F(j), 'f')] {
                    let mut acc = SparseVec::new();
                    for k in 0..=m {
                        let inner = apply_pow(rep, ei, k, &v);
                        let mid = rep.apply(ej, &inner);
                        let outer = apply_pow(rep, ei, m - k, &mid);
                        let denom = qfactorial(k as i64, datum.qi_exp[i]).mul(&qfactorial((m - k) as i64, datum.qi_exp[i]));
                        let sign = if k % 2 == 0 { Scalar::one() } else { Scalar::one().neg() };
                        axpy(&mut acc, &sign.div(&denom), &outer);
                    }
                    if !acc.is_empty() {
                        report.push(format!("{name}-Serre({i},{j}) fails at {}", rep.labels[b]));
                    }
                }
            }
        }
    }
    report
}
