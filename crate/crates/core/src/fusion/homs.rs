use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::cartan::Weight;
use crate::error::{Error, Result};
use crate::exact::{Field, Matrix, RatFn};
use crate::modules::{Gen, Rep};

use super::isotypic::{apply_block, Isotypic, WordTree};
use super::solve::{kernel, to_poly_row, LaurentRow};

/// A module map described by its matrices `A_mu` between highest weight spaces.
#[derive(Clone, Debug)]
pub struct HomMap<F: Field> {
    /// `A_mu` for each dominant weight common to source and target (`m_Y x m_X`).
    pub blocks: BTreeMap<Weight, Matrix<RatFn<F>>>,
}

/// Space of module maps `X -> Y` commuting with all generators.
pub struct HomSpace<F: Field> {
    pub source: Arc<Rep<F>>,
    pub target: Arc<Rep<F>>,
    pub iso_source: Isotypic<F>,
    pub iso_target: Isotypic<F>,
    pub basis: Vec<HomMap<F>>,
}

struct Unknowns {
    index: HashMap<(usize, usize, usize), usize>,
    count: usize,
}

/// Solves for all module maps `X -> Y`, with entries in `F(z)` when the actions carry `z`.
pub fn find_homs<F: Field>(x: Arc<Rep<F>>, y: Arc<Rep<F>>) -> Result<HomSpace<F>> {
    if x.datum != y.datum {
        return Err(Error::MismatchedData);
    }
    let mut trees: BTreeMap<Weight, WordTree> = BTreeMap::new();
    let ix = Isotypic::new(&x, &mut trees)?;
    let shared = Isotypic::same_classical(&x, &y);
    let iy = if shared { ix.clone() } else { Isotypic::new(&y, &mut trees)? };
    let mut unknowns = Unknowns { index: HashMap::new(), count: 0 };
    for (mx, w) in ix.dominants.iter().enumerate() {
        let Some(my) = iy.dominant_index(w) else { continue };
        for r in 0..iy.hw[my].len() {
            for c in 0..ix.hw[mx].len() {
                unknowns.index.insert((mx, r, c), unknowns.count);
                unknowns.count += 1;
            }
        }
    }
    let mut rows = Vec::new();
    for (mx, lambda) in ix.dominants.iter().enumerate() {
        let my = iy.dominant_index(lambda);
        for j in 0..ix.hw[mx].len() {
            for g in [Gen::F(0), Gen::E(0)] {
                let (nu, gx) = apply_block(&x, g, lambda, &ix.hw[mx][j]);
                let slots_y = iy.slots(&nu);
                if slots_y.is_empty() {
                    continue;
                }
                let pos_y: HashMap<_, usize> = slots_y.iter().enumerate().map(|(k, s)| (*s, k)).collect();
                let mut eqs: Vec<LaurentRow<F>> = vec![BTreeMap::new(); slots_y.len()];
                for (&p, w) in &gx {
                    let c = ix.coords(&nu, w);
                    for (s, cv) in ix.slots(&nu).iter().zip(&c) {
                        if cv.is_zero() {
                            continue;
                        }
                        let w_mu = &ix.dominants[s.mu];
                        let Some(ymu) = iy.dominant_index(w_mu) else { continue };
                        for r in 0..iy.hw[ymu].len() {
                            let ys = super::isotypic::Slot { mu: ymu, copy: r, word: s.word };
                            let row = pos_y[&ys];
                            let u = unknowns.index[&(s.mu, r, s.copy)];
                            let e = eqs[row].entry(u).or_default().entry(p).or_insert_with(F::zero);
                            *e = e.add(cv);
                        }
                    }
                }
                if let Some(my) = my {
                    for r in 0..iy.hw[my].len() {
                        let (_, gy) = apply_block(&y, g, lambda, &iy.hw[my][r]);
                        let u = unknowns.index[&(mx, r, j)];
                        for (&p, w) in &gy {
                            let d = iy.coords(&nu, w);
                            for (row, dv) in d.iter().enumerate() {
                                if dv.is_zero() {
                                    continue;
                                }
                                let e = eqs[row].entry(u).or_default().entry(p).or_insert_with(F::zero);
                                *e = e.sub(dv);
                            }
                        }
                    }
                }
                for eq in eqs {
                    let pr = to_poly_row(&eq);
                    if !pr.is_empty() {
                        rows.push(pr);
                    }
                }
            }
        }
    }
    let sols = kernel(rows, unknowns.count);
    let mut basis = Vec::with_capacity(sols.len());
    for sol in sols {
        let mut blocks = BTreeMap::new();
        for (mx, w) in ix.dominants.iter().enumerate() {
            let Some(my) = iy.dominant_index(w) else { continue };
            let (ry, cx) = (iy.hw[my].len(), ix.hw[mx].len());
            let mut m = Matrix::zeros(ry, cx);
            for r in 0..ry {
                for c in 0..cx {
                    m.set(r, c, sol[unknowns.index[&(mx, r, c)]].clone());
                }
            }
            blocks.insert(w.clone(), m);
        }
        basis.push(HomMap { blocks });
    }
    Ok(HomSpace { source: x, target: y, iso_source: ix, iso_target: iy, basis })
}

fn lift<F: Field>(v: &[F]) -> Vec<RatFn<F>> {
    v.iter().map(|c| RatFn::constant(c.clone())).collect()
}

/// Applies a generator with `z` kept symbolic to a vector with entries in `F(z)`.
pub fn apply_symbolic<F: Field>(rep: &Rep<F>, g: Gen, kappa: &Weight, v: &[RatFn<F>]) -> (Weight, Vec<RatFn<F>>) {
    let i = match g {
        Gen::E(i) | Gen::F(i) => i,
    };
    let sign = if matches!(g, Gen::E(_)) { 1 } else { -1 };
    let target = kappa.add_root(&rep.datum.roots[i], sign);
    let tdim = rep.block(&target).len();
    let mut out = vec![RatFn::zero(); tdim];
    if tdim == 0 {
        return (target, out);
    }
    let src = rep.block(kappa);
    let act = rep.action(g);
    for (p, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for en in &act[src[p]] {
            let t = rep.local_index(en.target);
            let m = RatFn::monomial(en.coeff.clone(), en.zdeg as i64);
            out[t] = out[t].add(&c.mul(&m));
        }
    }
    (target, out)
}

impl<F: Field> HomSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Image of a local vector at `kappa` of the source under `map`.
    pub fn apply(&self, map: &HomMap<F>, kappa: &Weight, v: &[RatFn<F>]) -> Vec<RatFn<F>> {
        let tdim = self.target.block(kappa).len();
        let mut out = vec![RatFn::zero(); tdim];
        if tdim == 0 || v.iter().all(RatFn::is_zero) {
            return out;
        }
        let sx = self.iso_source.slots(kappa);
        let inv = self.iso_source.inverse(kappa).map(|c| RatFn::constant(c.clone()));
        let c = inv.mul_vec(v);
        let sy = self.iso_target.slots(kappa);
        let pos_y: HashMap<_, usize> = sy.iter().enumerate().map(|(k, s)| (*s, k)).collect();
        let mut d = vec![RatFn::zero(); sy.len()];
        for (s, cv) in sx.iter().zip(&c) {
            if cv.is_zero() {
                continue;
            }
            let w = &self.iso_source.dominants[s.mu];
            let Some(a) = map.blocks.get(w) else { continue };
            let ymu = self.iso_target.dominant_index(w).expect("common dominant weight");
            for r in 0..a.rows() {
                let entry = a.get(r, s.copy);
                if entry.is_zero() {
                    continue;
                }
                let k = pos_y[&super::isotypic::Slot { mu: ymu, copy: r, word: s.word }];
                d[k] = d[k].add(&entry.mul(cv));
            }
        }
        for (k, b) in self.iso_target.basis(kappa).iter().enumerate() {
            if d[k].is_zero() {
                continue;
            }
            for (o, bv) in out.iter_mut().zip(lift(b)) {
                *o = o.add(&bv.mul(&d[k]));
            }
        }
        out
    }

    /// Matrix of `map` on the weight space `kappa` in local bases (target rows, source columns).
    pub fn block_matrix(&self, map: &HomMap<F>, kappa: &Weight) -> Matrix<RatFn<F>> {
        let (dx, dy) = (self.source.block(kappa).len(), self.target.block(kappa).len());
        let mut cols = Vec::with_capacity(dx);
        for p in 0..dx {
            let mut unit = vec![RatFn::zero(); dx];
            unit[p] = RatFn::one();
            cols.push(self.apply(map, kappa, &unit));
        }
        Matrix::from_cols(&cols, dy)
    }

    /// Checks that `map` commutes with every generator on every weight space; returns the
    /// offending generators and weights.
    pub fn check_intertwiner(&self, map: &HomMap<F>) -> Vec<String> {
        let mut bad = Vec::new();
        let nodes = self.source.n_nodes();
        let mut mats: BTreeMap<Weight, Matrix<RatFn<F>>> = BTreeMap::new();
        let weights: Vec<Weight> = self.source.blocks().keys().chain(self.target.blocks().keys()).cloned().collect();
        for w in weights {
            if !mats.contains_key(&w) {
                let m = self.block_matrix(map, &w);
                mats.insert(w, m);
            }
        }
        for (kappa, idx) in self.source.blocks() {
            let phi = &mats[kappa];
            for i in 0..nodes {
                for g in [Gen::E(i), Gen::F(i)] {
                    for p in 0..idx.len() {
                        let mut unit = vec![RatFn::zero(); idx.len()];
                        unit[p] = RatFn::one();
                        let (nu, gx) = apply_symbolic(&self.source, g, kappa, &unit);
                        let lhs = match mats.get(&nu) {
                            Some(m) if m.cols() > 0 && m.rows() > 0 => m.mul_vec(&gx),
                            _ => vec![RatFn::zero(); self.target.block(&nu).len()],
                        };
                        let (_, rhs) = apply_symbolic(&self.target, g, kappa, &phi.col(p));
                        if lhs != rhs {
                            bad.push(format!("{g} at weight {kappa}"));
                        }
                    }
                }
            }
        }
        bad.sort();
        bad.dedup();
        bad
    }

    /// Whether `map` is surjective: `A_mu` has full row rank for every component of the target.
    pub fn is_surjective(&self, map: &HomMap<F>) -> bool {
        self.iso_target.dominants.iter().enumerate().all(|(my, w)| {
            let m = self.iso_target.hw[my].len();
            map.blocks.get(w).is_some_and(|a| a.rank() == m)
        })
    }

    /// Whether `map` is injective: `A_mu` has full column rank for every component of the source.
    pub fn is_injective(&self, map: &HomMap<F>) -> bool {
        self.iso_source.dominants.iter().enumerate().all(|(mx, w)| {
            let m = self.iso_source.hw[mx].len();
            map.blocks.get(w).is_some_and(|a| a.rank() == m)
        })
    }
}
