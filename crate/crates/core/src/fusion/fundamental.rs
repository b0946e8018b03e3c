use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use crate::cartan::{AffineType, CartanDatum, Family, Weight};
use crate::error::{Error, Result};
use crate::exact::{as_signed_monomial, signed_qs, Echelon, Field, Scalar};
use crate::modules::{spin_rep, tensor, twist, vector_rep, Entry, Gen, Label, Rep};

use super::isotypic::{apply_block_flat, highest_weight_vectors};

/// `(-q^t)^{m/t}` with the branch `(-q^2)^{1/2} = i q`.
pub fn spectral_shift(datum: &CartanDatum, m: i64) -> Scalar {
    if datum.t == 2 {
        signed_qs(m, 2 * m)
    } else {
        signed_qs(2 * m, 2 * m)
    }
}

/// Coefficient of `e_0` realizing the spectral parameter `x`.
///
/// For `A2even` the spectral parameter is the square of the `e_0` coefficient (`delta` contains
/// `alpha_0` twice), and `M_c` is isomorphic to `M_{-c}` there, so any square root works.
pub fn e0_twist(datum: &CartanDatum, x: &Scalar) -> Result<Scalar> {
    if datum.ty.family != Family::A2even {
        return Ok(x.clone());
    }
    let (k, m) = as_signed_monomial(x).ok_or_else(|| Error::NotSignedMonomial(x.to_string()))?;
    if k % 2 != 0 || m % 2 != 0 {
        return Err(Error::NotSignedMonomial(format!("{x} has no square root of the form i^k q_s^m")));
    }
    Ok(signed_qs(k / 2, m / 2))
}

/// The module `M_x` for a spectral parameter `x`.
pub fn at(rep: &Rep, x: &Scalar) -> Result<Rep> {
    let c = e0_twist(&rep.datum, x)?;
    let mut out = twist(rep, &c)?;
    out.twist = rep.twist.mul(x);
    Ok(out)
}

/// `(-q^2)^{m/2} = (i q)^m`.
pub fn neg_q2_half_pow(m: i64) -> Scalar {
    signed_qs(m, 2 * m)
}

/// `(-q)^m`.
pub fn neg_q_pow(m: i64) -> Scalar {
    signed_qs(2 * m, 2 * m)
}

/// Submodule of `rep` generated by a single vector `v` of weight `w`, with basis in fully
/// reduced echelon form per weight and labels taken from the pivot positions.
pub fn generated_submodule(rep: &Rep, w: &Weight, v: &[Scalar]) -> Result<Rep> {
    let nodes = rep.n_nodes();
    let mut ech: BTreeMap<Weight, Echelon<Scalar>> = BTreeMap::new();
    let mut queue = VecDeque::new();
    let mut start = Echelon::new(rep.block(w).len());
    start.insert(v);
    ech.insert(w.clone(), start);
    queue.push_back((w.clone(), v.to_vec()));
    while let Some((kappa, u)) = queue.pop_front() {
        for i in 0..nodes {
            for g in [Gen::E(i), Gen::F(i)] {
                let (nu, x) = apply_block_flat(rep, g, &kappa, &u);
                if x.iter().all(Scalar::is_zero) {
                    continue;
                }
                let dim = x.len();
                let e = ech.entry(nu.clone()).or_insert_with(|| Echelon::new(dim));
                if e.insert(&x) {
                    queue.push_back((nu, x));
                }
            }
        }
    }
    let mut order: Vec<(usize, Weight, usize)> = Vec::new();
    for (kappa, e) in &ech {
        let block = rep.block(kappa);
        for (r, &p) in e.pivots().iter().enumerate() {
            order.push((block[p], kappa.clone(), r));
        }
    }
    order.sort();
    let index: HashMap<(Weight, usize), usize> =
        order.iter().enumerate().map(|(g, (_, k, r))| ((k.clone(), *r), g)).collect();
    let labels: Vec<Label> = order.iter().map(|(a, _, _)| rep.labels[*a].clone()).collect();
    let weights: Vec<Weight> = order.iter().map(|(_, k, _)| k.clone()).collect();
    let dim = order.len();
    let mut e_act = vec![vec![Vec::new(); dim]; nodes];
    let mut f_act = vec![vec![Vec::new(); dim]; nodes];
    for (col, (_, kappa, r)) in order.iter().enumerate() {
        let row = &ech[kappa].rows()[*r];
        for i in 0..nodes {
            for g in [Gen::E(i), Gen::F(i)] {
                let (nu, x) = apply_block_flat(rep, g, kappa, row);
                if x.iter().all(Scalar::is_zero) {
                    continue;
                }
                let coords = ech[&nu]
                    .coords(&x)
                    .ok_or_else(|| Error::Inconsistent(format!("submodule not closed under {g} at {kappa}")))?;
                let entries: Vec<Entry<Scalar>> = coords
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| Entry { target: index[&(nu.clone(), k)], coeff: c, zdeg: 0 })
                    .collect();
                match g {
                    Gen::E(_) => e_act[i][col] = entries,
                    Gen::F(_) => f_act[i][col] = entries,
                }
            }
        }
    }
    Ok(Rep::new(rep.datum.clone(), labels, weights, e_act, f_act))
}

fn cache() -> &'static Mutex<HashMap<(AffineType, usize), Arc<Rep>>> {
    static CACHE: OnceLock<Mutex<HashMap<(AffineType, usize), Arc<Rep>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The fundamental module `V(varpi_k)`.
///
/// `V(varpi_1)` is the vector module, `V(varpi_n)` is the spin module when `theta = 1`, and
/// the remaining ones are cut out of `V(varpi_1)_x (x) V(varpi_{k-1})_y` with
/// `x = (-q^t)^{(k-1)/t}`, `y = (-q^t)^{-1/t}` as the submodule generated by the highest
/// weight vector of weight `varpi_k`.
pub fn fundamental_rep(datum: &Arc<CartanDatum>, k: usize) -> Result<Arc<Rep>> {
    let n = datum.n();
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange(format!("fundamental index {k} for rank {n}")));
    }
    let key = (datum.ty, k);
    if let Some(r) = cache().lock().expect("cache lock").get(&key) {
        return Ok(r.clone());
    }
    let rep = if k == 1 {
        vector_rep(datum)?
    } else if k == n && datum.theta == 1 {
        spin_rep(datum)?
    } else {
        let left = at(&*fundamental_rep(datum, 1)?, &spectral_shift(datum, k as i64 - 1))?;
        let right = at(&*fundamental_rep(datum, k - 1)?, &spectral_shift(datum, -1))?;
        let t = tensor(&left, &right, false)?;
        let top = datum.fundamental_weight(k);
        let hw = highest_weight_vectors(&t.rep, &top);
        if hw.len() != 1 {
            return Err(Error::FusionAnchorAmbiguous { weight: top.to_string(), dim: hw.len() });
        }
        generated_submodule(&t.rep, &top, &hw[0])?
    };
    let rep = Arc::new(rep);
    cache().lock().expect("cache lock").insert(key, rep.clone());
    Ok(rep)
}
