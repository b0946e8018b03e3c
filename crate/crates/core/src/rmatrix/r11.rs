use std::collections::BTreeMap;

use super::intertwiner::Intertwiner;
use crate::cartan::{CartanDatum, Family};
use crate::error::{Error, Result};
use crate::exact::{q_pow, Field, Poly, Scalar, SpectralFn};
use crate::modules::Label;

/// Coefficients of the closed formula for `R^norm_{1,1}(z)` on `v_a ⊗ v_b` with `a != b`.
#[derive(Clone, Debug, PartialEq)]
pub struct R11Coefficients {
    /// Coefficient of `v_a ⊗ v_b`.
    pub diagonal: SpectralFn,
    /// Coefficient of `v_b ⊗ v_a`.
    pub swap: SpectralFn,
}

/// `z^t - c` as a spectral function.
fn zt_minus(t: usize, c: &Scalar) -> Poly<Scalar> {
    let mut coeffs = vec![Scalar::zero(); t + 1];
    coeffs[0] = c.neg();
    coeffs[t] = Scalar::one();
    Poly::new(coeffs)
}

/// The closed formula for `R^norm_{1,1}(z)`, where `a_succ_b` says whether `a` follows `b` in
/// the order `1 < ... < n < 0 < ∅ < n̄ < ... < 1̄` on basis labels.
pub fn r11_coefficients(datum: &CartanDatum, a_succ_b: bool) -> R11Coefficients {
    let t = datum.t;
    let qt = q_pow(t as i64);
    let q2t = qt.mul(&qt);
    let den = zt_minus(t, &q2t);
    let z_pow = if a_succ_b { t } else { 0 };
    let diagonal_num = Poly::monomial(Scalar::one().sub(&q2t), z_pow);
    let swap_num = zt_minus(t, &Scalar::one()).scale(&qt);
    R11Coefficients {
        diagonal: SpectralFn::new(diagonal_num, den.clone()).expect("nonzero denominator"),
        swap: SpectralFn::new(swap_num, den).expect("nonzero denominator"),
    }
}

/// Position of a basis label of `V(ϖ_1)` in the order `1 < ... < n < 0 < ∅ < n̄ < ... < 1̄`.
pub fn label_rank(n: usize, label: &Label) -> Option<usize> {
    match label {
        Label::Pos(j) => Some(*j),
        Label::Zero => Some(n + 1),
        Label::Empty => Some(n + 2),
        Label::Neg(j) => Some(2 * n + 3 - j),
        _ => None,
    }
}

/// Which order on labels the closed formula was tested against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelOrder {
    Standard,
    Reversed,
}

/// Which pairs `v_a ⊗ v_b` are compared with the closed formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum R11Scope {
    /// `a != b` in the index set `{1, ..., n}`, the range where the formula is asserted.
    IndexSet,
    /// Every `a != b` whose weights do not sum to zero.
    AllLabels,
}

/// Outcome of comparing a solved `R^norm_{1,1}` with the closed formula.
#[derive(Clone, Debug, PartialEq)]
pub struct R11Check {
    pub order: LabelOrder,
    /// Number of ordered pairs `(a, b)` compared.
    pub checked: usize,
    /// Pairs whose image differs from the formula.
    pub mismatches: Vec<String>,
}

impl R11Check {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// `f(z^k)`.
fn substitute_power(f: &SpectralFn, k: usize) -> SpectralFn {
    let spread = |p: &Poly<Scalar>| {
        let mut coeffs = vec![Scalar::zero(); (p.coeffs().len().max(1) - 1) * k + 1];
        for (i, c) in p.coeffs().iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Poly::new(coeffs)
    };
    SpectralFn::new(spread(f.num()), spread(f.den())).expect("nonzero denominator")
}

/// Compares the images `R(v_a ⊗ v_b)` of the pairs in `scope` with the closed formula under
/// the given label order.
pub fn compare_r11(r: &Intertwiner, order: LabelOrder, scope: R11Scope) -> Result<R11Check> {
    let datum = &r.datum;
    let rep = &r.left;
    if r.left.dim() != r.right.dim() || r.left.labels != r.right.labels {
        return Err(Error::Inconsistent("compare_r11 needs R^norm_{1,1}".into()));
    }
    let n = datum.n();
    let rank = |l: &Label| label_rank(n, l).ok_or_else(|| Error::Inconsistent(format!("unexpected label {l}")));
    // On A2even the solver's variable is the e_0 twist s with z = s^2.
    let power = if datum.ty.family == Family::A2even { 2 } else { 1 };
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for a in 0..rep.dim() {
        for b in 0..rep.dim() {
            if a == b || rep.weights[a].add(&rep.weights[b]).is_zero() {
                continue;
            }
            let in_index_set = |l: &Label| matches!(l, Label::Pos(_));
            if scope == R11Scope::IndexSet && !(in_index_set(&rep.labels[a]) && in_index_set(&rep.labels[b])) {
                continue;
            }
            let (ra, rb) = (rank(&rep.labels[a])?, rank(&rep.labels[b])?);
            let succ = match order {
                LabelOrder::Standard => ra > rb,
                LabelOrder::Reversed => ra < rb,
            };
            let coeffs = r11_coefficients(datum, succ);
            let expect: BTreeMap<(usize, usize), SpectralFn> = [
                ((a, b), substitute_power(&coeffs.diagonal, power)),
                ((b, a), substitute_power(&coeffs.swap, power)),
            ]
            .into_iter()
            .collect();
            let got: BTreeMap<(usize, usize), SpectralFn> = r.image(a, b).into_iter().map(|(c, d, f)| ((c, d), f)).collect();
            checked += 1;
            if got != expect {
                mismatches.push(format!("v_{} ⊗ v_{}", rep.labels[a], rep.labels[b]));
            }
        }
    }
    Ok(R11Check { order, checked, mismatches })
}
