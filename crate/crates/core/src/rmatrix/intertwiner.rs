use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cartan::{CartanDatum, Weight};
use crate::error::{Error, Result};
use crate::exact::{reduce_scalar, Field, Fp, Matrix, Poly, RatFn, Scalar, SpectralFn};
use crate::fusion::{find_homs, fundamental_rep, HomMap, HomSpace};
use crate::modules::{tensor_with, Rep, ZSide};

use super::denom::{lcm_without_z, to_spectral_variable, DenomPoly};

/// The normalized R-matrix `M (x) N_z -> N_z (x) M`.
pub struct Intertwiner {
    pub datum: Arc<CartanDatum>,
    pub left: Arc<Rep>,
    pub right: Arc<Rep>,
    pub space: HomSpace<Scalar>,
    pub map: HomMap<Scalar>,
    /// Weight of `v_M (x) v_N`, whose coefficient is normalized to `1`.
    pub anchor: Weight,
}

/// Highest weight of a module: the weight maximizing the height `(w, rho)`, which must be
/// unique with a one-dimensional weight space.
pub fn dominant_weight<F: Field>(rep: &Rep<F>) -> Result<Weight> {
    let n = rep.datum.n() as i64;
    let height = |w: &Weight| w.0.iter().enumerate().map(|(i, &c)| (n - i as i64) * c as i64).sum::<i64>();
    let best = rep.blocks().keys().map(height).max().ok_or(Error::Inconsistent("empty module".into()))?;
    let tops: Vec<&Weight> = rep.blocks().keys().filter(|w| height(w) == best).collect();
    match tops.as_slice() {
        [w] if rep.block(w).len() == 1 => Ok((*w).clone()),
        _ => Err(Error::Inconsistent("module has no unique highest weight vector".into())),
    }
}

/// The normalized R-matrix between two modules with dominant extremal vectors.
pub fn r_matrix_between(m: Arc<Rep>, n: Arc<Rep>) -> Result<Intertwiner> {
    let anchor = dominant_weight(&m)?.add(&dominant_weight(&n)?);
    let x = tensor_with(&m, &n, ZSide::Right)?;
    let y = tensor_with(&n, &m, ZSide::Left)?;
    let space = find_homs(Arc::new(x.rep), Arc::new(y.rep))?;
    if space.dim() != 1 {
        return Err(Error::NonSchur(space.dim()));
    }
    let map = normalize_at(&space.basis[0], &anchor)?;
    Ok(Intertwiner { datum: m.datum.clone(), left: m, right: n, space, map, anchor })
}

fn normalize_at<F: Field>(map: &HomMap<F>, anchor: &Weight) -> Result<HomMap<F>> {
    let a = map
        .blocks
        .get(anchor)
        .filter(|a| a.rows() == 1 && a.cols() == 1)
        .ok_or_else(|| Error::Inconsistent("anchor weight is not multiplicity free".into()))?;
    let inv = a.get(0, 0).inv().ok_or_else(|| Error::Inconsistent("intertwiner vanishes on the anchor".into()))?;
    let blocks = map.blocks.iter().map(|(w, m)| (w.clone(), m.map(|x| x.mul(&inv)))).collect();
    Ok(HomMap { blocks })
}

/// `R^norm_{k,l}(z)` on `V(varpi_k) (x) V(varpi_l)_z`.
pub fn normalized_r_matrix(datum: &Arc<CartanDatum>, k: usize, l: usize) -> Result<Intertwiner> {
    r_matrix_between(fundamental_rep(datum, k)?, fundamental_rep(datum, l)?)
}

impl Intertwiner {
    /// Dimension of the space of intertwiners over the field of rational functions in `z`.
    pub fn hom_dim(&self) -> usize {
        self.space.dim()
    }

    /// All entries of the blocks between highest weight vectors.
    pub fn block_entries(&self) -> impl Iterator<Item = &SpectralFn> {
        self.map.blocks.values().flat_map(|m| (0..m.rows()).flat_map(move |r| (0..m.cols()).map(move |c| m.get(r, c))))
    }

    /// Image of `v_a (x) v_b` as a list of `(c, d, coefficient)` meaning `coefficient * v_c (x) v_d`
    /// in `N_z (x) M`.
    pub fn image(&self, a: usize, b: usize) -> Vec<(usize, usize, SpectralFn)> {
        let src = &self.space.source;
        let idx = a * self.right.dim() + b;
        let kappa = src.weights[idx].clone();
        let mut unit = vec![RatFn::zero(); src.block(&kappa).len()];
        unit[src.local_index(idx)] = RatFn::one();
        let out = self.space.apply(&self.map, &kappa, &unit);
        let tgt = &self.space.target;
        let block = tgt.block(&kappa);
        let md = self.left.dim();
        out.into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(p, v)| (block[p] / md, block[p] % md, v))
            .collect()
    }

    /// Matrix of the R-matrix on the weight space `kappa` in the pure tensor bases.
    pub fn weight_block(&self, kappa: &Weight) -> Matrix<SpectralFn> {
        self.space.block_matrix(&self.map, kappa)
    }

    /// Generators and weights where the intertwining identity fails (empty when it holds).
    pub fn check(&self) -> Vec<String> {
        self.space.check_intertwiner(&self.map)
    }

    /// Denominator in the `e_0` twist variable, before any change of spectral variable.
    pub fn raw_denominator(&self) -> Poly<Scalar> {
        lcm_without_z(self.block_entries().map(|e| e.den().clone()))
    }
}

/// The denominator `d_{M,N}(z)`: the monic least common multiple of all reduced entry
/// denominators, with powers of `z` dropped since `z` is a unit, factored exactly.
pub fn denominator(r: &Intertwiner) -> Result<DenomPoly> {
    let p = to_spectral_variable(&r.datum, r.raw_denominator())?;
    DenomPoly::factor(p)
}

/// Root list with multiplicities.
pub fn pole_orders(d: &DenomPoly) -> Vec<(Scalar, u32)> {
    d.factors.clone()
}

/// Per-root division test: removing any single root factor from `d` leaves some entry of
/// `d R` with a pole.
pub fn is_minimal(r: &Intertwiner, d: &DenomPoly) -> Result<bool> {
    let raw = r.raw_denominator();
    let full = to_spectral_variable(&r.datum, raw.clone())?;
    if full != d.poly {
        return Ok(false);
    }
    for (root, _) in &d.factors {
        let lin = if r.datum.ty.family == crate::cartan::Family::A2even {
            Poly::new(vec![root.neg(), Scalar::zero(), Scalar::one()])
        } else {
            Poly::linear_root(root)
        };
        let reduced = raw.exact_div(&lin).ok_or_else(|| Error::Inconsistent("root does not divide".into()))?;
        let all_poly = r.block_entries().all(|e| reduced.exact_div(e.den()).is_some() || e.den().valuation() == e.den().degree());
        if all_poly {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Substitutes `z -> 1/z` in a rational function.
pub fn invert_variable<F: Field>(f: &RatFn<F>) -> RatFn<F> {
    let (n, d) = (f.num(), f.den());
    let dn = n.degree().unwrap_or(0);
    let dd = d.degree().unwrap_or(0);
    let rev = |p: &Poly<F>, deg: usize| {
        let mut c = vec![F::zero(); deg + 1];
        for (i, x) in p.coeffs().iter().enumerate() {
            c[deg - i] = x.clone();
        }
        Poly::new(c)
    };
    let top = dn.max(dd);
    RatFn::new(rev(n, top), rev(d, top)).expect("nonzero denominator")
}

/// Checks `R_{l,k}(1/z) R_{k,l}(z) = 1` on every highest weight block.
pub fn unitarity_holds(rkl: &Intertwiner, rlk: &Intertwiner) -> bool {
    for (w, a) in &rkl.map.blocks {
        let Some(b) = rlk.map.blocks.get(w) else { return false };
        let b = b.map(invert_variable);
        let prod = b.mul(a);
        if prod != Matrix::identity(prod.rows()) {
            return false;
        }
    }
    rkl.map.blocks.len() == rlk.map.blocks.len()
}

/// Fixed evaluation point of `q_s` for modular computations.
pub const MODULAR_QS: u64 = 0x6a09_e667_f3bc_c909;

/// Denominator of `R^norm_{k,l}` computed over `F_p` at `q_s = MODULAR_QS`, in the spectral
/// variable.
pub fn modular_denominator(datum: &Arc<CartanDatum>, k: usize, l: usize) -> Result<Poly<Fp>> {
    let m = fundamental_rep(datum, k)?;
    let n = fundamental_rep(datum, l)?;
    let anchor = dominant_weight(&m)?.add(&dominant_weight(&n)?);
    let x = tensor_with(&m, &n, ZSide::Right)?;
    let y = tensor_with(&n, &m, ZSide::Left)?;
    let qs = Fp::new(MODULAR_QS);
    let red = |s: &Scalar| reduce_scalar(s, qs, 1).expect("scalar defined at the modular point");
    let xm = Arc::new(x.rep.map_coeffs(red));
    let ym = Arc::new(y.rep.map_coeffs(red));
    let space = find_homs(xm, ym)?;
    if space.dim() != 1 {
        return Err(Error::NonSchur(space.dim()));
    }
    let map = normalize_at(&space.basis[0], &anchor)?;
    let dens = map.blocks.values().flat_map(|m| {
        (0..m.rows()).flat_map(move |r| (0..m.cols()).map(move |c| m.get(r, c).den().clone()))
    });
    let raw = lcm_without_z(dens.collect::<Vec<_>>());
    to_spectral_variable(datum, raw)
}

/// Image of a scalar polynomial at the modular point.
pub fn reduce_poly(p: &Poly<Scalar>) -> Option<Poly<Fp>> {
    let qs = Fp::new(MODULAR_QS);
    let c: Option<Vec<Fp>> = p.coeffs().iter().map(|s| reduce_scalar(s, qs, 1)).collect();
    c.map(Poly::new)
}

/// Entries `(target block weight, matrix)` of all highest weight blocks, for reports.
pub fn hw_blocks(r: &Intertwiner) -> BTreeMap<Weight, Matrix<SpectralFn>> {
    r.map.blocks.clone()
}
// x
