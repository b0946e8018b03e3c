use std::sync::Arc;

use super::denom::{lcm_without_z, DenomPoly};
use super::intertwiner::Intertwiner;
use crate::cartan::{CartanDatum, Family, Weight};
use crate::error::{Error, Result};
use crate::exact::{int, q_pow, qint, Field, Matrix, Poly, Scalar, SpectralFn};
use crate::fusion::{apply_symbolic, fundamental_rep, highest_weight_vectors};
use crate::modules::{tensor_with, Gen, Label, Rep, ZSide};

/// `R^norm_{1,n}` of `D2` on the two highest weight vectors of weight `ϖ_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralR1n {
    /// `(a_ij)` with `R(ũ^i) = Σ_j a_ji u^j`.
    pub matrix: Matrix<SpectralFn>,
    pub denominator: DenomPoly,
    /// `ũ^1`, `ũ^2` in the weight space `ϖ_n` of `V(ϖ_1) ⊗ V(ϖ_n)_z`.
    pub source_hw: [Vec<SpectralFn>; 2],
    /// `u^1`, `u^2` in the weight space `ϖ_n` of `V(ϖ_n)_z ⊗ V(ϖ_1)`.
    pub target_hw: [Vec<SpectralFn>; 2],
}

fn all_plus(n: usize) -> Label {
    Label::Spin(vec![true; n])
}

fn pair(a: Label, b: Label) -> Label {
    Label::Pair(Box::new(a), Box::new(b))
}

fn position(rep: &Rep, w: &Weight, label: &Label) -> Result<usize> {
    let idx = rep.index_of(label).ok_or_else(|| Error::Inconsistent(format!("no basis vector {label}")))?;
    if rep.weights[idx] != *w {
        return Err(Error::Inconsistent(format!("{label} does not have weight {}", w.coords_string())));
    }
    Ok(rep.local_index(idx))
}

/// The pair of highest weight vectors of weight `ϖ_n`: the first supported on `empty_label`
/// with coefficient `c1`, the second vanishing there with coefficient `c2` on `zero_label`.
fn hw_pair(
    rep: &Rep,
    w: &Weight,
    (empty_label, c1): (&Label, Scalar),
    (zero_label, c2): (&Label, Scalar),
) -> Result<[Vec<SpectralFn>; 2]> {
    let dim = rep.block(w).len();
    let pe = position(rep, w, empty_label)?;
    let pz = position(rep, w, zero_label)?;
    let mut first = vec![SpectralFn::zero(); dim];
    first[pe] = SpectralFn::constant(c1);
    let kernel: Vec<Vec<SpectralFn>> =
        highest_weight_vectors(rep, w).into_iter().map(|v| v.into_iter().map(SpectralFn::constant).collect()).collect();
    if kernel.len() != 2 {
        return Err(Error::Inconsistent(format!("expected 2 highest weight vectors, found {}", kernel.len())));
    }
    let in_span = |v: &[SpectralFn]| {
        let m = Matrix::from_cols(&[kernel[0].clone(), kernel[1].clone(), v.to_vec()], dim);
        m.rank() == 2
    };
    if !in_span(&first) {
        return Err(Error::Inconsistent(format!("{empty_label} does not span a highest weight vector")));
    }
    // Eliminate the coefficient at `empty_label` between the two kernel vectors.
    let (a, b) = (&kernel[0], &kernel[1]);
    let second: Vec<SpectralFn> = if a[pe].is_zero() {
        a.clone()
    } else if b[pe].is_zero() {
        b.clone()
    } else {
        let r = a[pe].div(&b[pe]);
        a.iter().zip(b).map(|(x, y)| x.sub(&y.mul(&r))).collect()
    };
    let lead = second[pz].clone();
    if lead.is_zero() {
        return Err(Error::Inconsistent(format!("second highest weight vector vanishes at {zero_label}")));
    }
    let scale = SpectralFn::constant(c2).div(&lead);
    Ok([first, second.iter().map(|x| x.mul(&scale)).collect()])
}

/// The operator `e_1 ⋯ e_{n-1} e_n^{(2)} e_{n-1} ⋯ e_1 e_0` applied to `v` at weight `w`.
fn e_chain(rep: &Rep, datum: &CartanDatum, w: &Weight, v: &[SpectralFn]) -> (Weight, Vec<SpectralFn>) {
    let n = datum.n();
    let mut order = vec![0];
    order.extend(1..n);
    order.extend([n, n]);
    order.extend((1..n).rev());
    let (mut w, mut v) = (w.clone(), v.to_vec());
    for i in order {
        let (nw, nv) = apply_symbolic(rep, Gen::E(i), &w, &v);
        w = nw;
        v = nv;
    }
    let two_n = SpectralFn::constant(qint(2, datum.qi_exp[n]));
    (w, v.iter().map(|x| x.div(&two_n)).collect())
}

/// The scalar `c` with `v = c u` for vectors in a one-dimensional weight space.
fn coefficient(v: &[SpectralFn], u: &[SpectralFn]) -> Result<SpectralFn> {
    match (v, u) {
        ([x], [y]) => Ok(x.div(y)),
        _ => Err(Error::Inconsistent("weight space of λ is not one-dimensional".into())),
    }
}

/// Coefficients of `f_0 u^j` and of the `e`-chain applied to `u^j` along `u_λ`.
fn relation_rows(
    rep: &Rep,
    datum: &CartanDatum,
    w: &Weight,
    hw: &[Vec<SpectralFn>; 2],
    u_lambda: &[SpectralFn],
) -> Result<Matrix<SpectralFn>> {
    let mut rows = vec![Vec::new(), Vec::new()];
    for u in hw {
        rows[0].push(coefficient(&apply_symbolic(rep, Gen::F(0), w, u).1, u_lambda)?);
        rows[1].push(coefficient(&e_chain(rep, datum, w, u).1, u_lambda)?);
    }
    Ok(Matrix::from_rows(rows, 2))
}

fn unit_at(rep: &Rep, w: &Weight, label: &Label) -> Result<Vec<SpectralFn>> {
    let mut v = vec![SpectralFn::zero(); rep.block(w).len()];
    v[position(rep, w, label)?] = SpectralFn::one();
    Ok(v)
}

/// `R^norm_{1,n}` for `D2` from the highest weight vectors of `V(ϖ_1) ⊗ V(ϖ_n)_z` and
/// `V(ϖ_n)_z ⊗ V(ϖ_1)` and the relations given by `f_0` and `e_1 ⋯ e_n^{(2)} ⋯ e_1 e_0`.
///
/// Both relations send the weight space `ϖ_n` to the one-dimensional weight space
/// `λ = ϖ_1 + ϖ_n`, so with `C`, `C̃` their coefficient matrices on `u^j`, `ũ^i` the matrix
/// of the R-matrix solves `C A = C̃`.
pub fn spectral_r_1n(datum: &Arc<CartanDatum>) -> Result<SpectralR1n> {
    if datum.ty.family != Family::D2 {
        return Err(Error::UnsupportedType(format!("spectral_r_1n needs D2, got {}", datum.ty)));
    }
    let n = datum.n();
    let v1 = fundamental_rep(datum, 1)?;
    let vn = fundamental_rep(datum, n)?;
    let x = tensor_with(&v1, &vn, ZSide::Right)?.rep;
    let y = tensor_with(&vn, &v1, ZSide::Left)?.rep;
    let wn = datum.fundamental_weight(n);
    let lambda = wn.add(&datum.fundamental_weight(1));
    let two_0 = qint(2, datum.qi_exp[0]).inv().ok_or(Error::DivisionByZero)?;
    let two_n = qint(2, datum.qi_exp[n]).inv().ok_or(Error::DivisionByZero)?;
    let q_inv = q_pow(-1);
    let source_hw = hw_pair(
        &x,
        &wn,
        (&pair(Label::Empty, all_plus(n)), two_0.clone()),
        (&pair(Label::Zero, all_plus(n)), q_inv.mul(&two_n)),
    )?;
    let target_hw =
        hw_pair(&y, &wn, (&pair(all_plus(n), Label::Empty), two_0), (&pair(all_plus(n), Label::Zero), two_n))?;
    let u_lambda_x = unit_at(&x, &lambda, &pair(Label::Pos(1), all_plus(n)))?;
    let u_lambda_y = unit_at(&y, &lambda, &pair(all_plus(n), Label::Pos(1)))?;
    let c = relation_rows(&y, datum, &wn, &target_hw, &u_lambda_y)?;
    let c_tilde = relation_rows(&x, datum, &wn, &source_hw, &u_lambda_x)?;
    let matrix = c.inverse().ok_or_else(|| Error::Inconsistent("relation matrix is singular".into()))?.mul(&c_tilde);
    let den = lcm_without_z((0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| matrix.get(i, j).den().clone()));
    Ok(SpectralR1n { matrix, denominator: DenomPoly::factor(den)?, source_hw, target_hw })
}

/// The matrix of a computed `R^norm_{1,n}` in the highest weight bases of `spectral_r_1n`.
pub fn restrict_to_hw(r: &Intertwiner, s: &SpectralR1n) -> Result<Matrix<SpectralFn>> {
    let wn = r.datum.fundamental_weight(r.datum.n());
    let block = r.weight_block(&wn);
    let dim = block.rows();
    let basis = Matrix::from_cols(&[s.target_hw[0].clone(), s.target_hw[1].clone()], dim);
    // Pick two coordinates on which the target basis is invertible.
    let mut pick = None;
    'outer: for i in 0..dim {
        for j in i + 1..dim {
            let m = Matrix::from_rows(vec![basis.row(i).to_vec(), basis.row(j).to_vec()], 2);
            if let Some(inv) = m.inverse() {
                pick = Some((i, j, inv));
                break 'outer;
            }
        }
    }
    let (i, j, inv) = pick.ok_or_else(|| Error::Inconsistent("target highest weight vectors are dependent".into()))?;
    let mut cols = Vec::new();
    for src in &s.source_hw {
        let image = block.mul_vec(src);
        let coords = inv.mul_vec(&[image[i].clone(), image[j].clone()]);
        let rebuilt = basis.mul_vec(&coords);
        if rebuilt != image {
            return Err(Error::Inconsistent("image of a highest weight vector leaves their span".into()));
        }
        cols.push(coords);
    }
    Ok(Matrix::from_cols(&cols, 2))
}

/// The closed formula for the `2 × 2` matrix of `R^norm_{1,n}` on highest weight vectors of
/// weight `ϖ_n` for `D2`.
pub fn spectral_r_1n_formula(n: usize) -> Matrix<SpectralFn> {
    let nn = n as i64;
    let sign = int(if n % 2 == 0 { 1 } else { -1 });
    let den = Poly::new(vec![q_pow(2 * nn + 2).mul(&sign).neg(), Scalar::zero(), Scalar::one()]);
    let entry = |coeffs: Vec<Scalar>| SpectralFn::new(Poly::new(coeffs), den.clone()).expect("nonzero denominator");
    let zero = Scalar::zero;
    let a11 = entry(vec![sign.mul(&q_pow(2 * nn + 1)).neg(), zero(), q_pow(1)]);
    let a12 = entry(vec![zero(), sign.mul(&q_pow(-2 * nn - 1).sub(&q_pow(2 * nn + 1)))]);
    let a21 = entry(vec![zero(), Scalar::one().sub(&q_pow(2))]);
    let a22 = entry(vec![sign.mul(&q_pow(-2 * nn)).neg(), zero(), Scalar::one()]);
    Matrix::from_rows(vec![vec![a11, a12], vec![a21, a22]], 2)
}
