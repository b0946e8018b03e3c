use std::collections::BTreeMap;

use crate::exact::{Field, Fp, Poly, RatFn};

/// Sparse row of a linear system over `F[z]`.
pub type PolyRow<F> = BTreeMap<usize, Poly<F>>;

/// Sparse row with Laurent polynomial entries `{power: coefficient}`.
pub type LaurentRow<F> = BTreeMap<usize, BTreeMap<i32, F>>;

/// Clears the negative powers of `z` in a Laurent row and drops zero entries.
pub fn to_poly_row<F: Field>(row: &LaurentRow<F>) -> PolyRow<F> {
    let min = row
        .values()
        .flat_map(|l| l.iter().filter(|(_, c)| !c.is_zero()).map(|(&p, _)| p))
        .min()
        .unwrap_or(0);
    let mut out = BTreeMap::new();
    for (&col, l) in row {
        let live = || l.iter().filter(|(_, c)| !c.is_zero());
        let deg = live().map(|(&p, _)| (p - min) as usize).max().unwrap_or(0);
        let mut coeffs = vec![F::zero(); deg + 1];
        for (&p, c) in live() {
            let k = (p - min) as usize;
            coeffs[k] = coeffs[k].add(c);
        }
        let poly = Poly::new(coeffs);
        if !poly.is_zero() {
            out.insert(col, poly);
        }
    }
    out
}

fn normalize_row<F: Field>(row: &mut PolyRow<F>) {
    row.retain(|_, p| !p.is_zero());
    if row.is_empty() {
        return;
    }
    let mut iter = row.values();
    let mut g = iter.next().expect("nonempty row").monic();
    for p in iter {
        if g.is_one() {
            break;
        }
        g = g.gcd(p);
    }
    let lead = row.values().next().and_then(|p| p.lead().cloned()).expect("nonzero entry");
    let scale = lead.inv().expect("nonzero lead");
    for p in row.values_mut() {
        let q = if g.is_one() { p.clone() } else { p.exact_div(&g).expect("content divides entries") };
        *p = q.scale(&scale);
    }
}

fn cost<F: Field>(p: &Poly<F>) -> usize {
    p.degree().unwrap_or(0)
}

const IMAGE_POINT: u64 = 0x2545_f491_4f6c_dd1d;
const Z_POINT: u64 = 0x1b87_3593_cc9e_2d51;

fn row_cost<F: Field>(row: &PolyRow<F>) -> (usize, usize) {
    (row.len(), row.values().map(cost).sum())
}

/// Indices of a maximal set of rows that are independent in a random modular image, or
/// `None` when the image is undefined.
fn select_rows<F: Field>(rows: &[PolyRow<F>], ncols: usize) -> Option<Vec<usize>> {
    let point = Fp::new(IMAGE_POINT);
    let z0 = Fp::new(Z_POINT);
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&r| row_cost(&rows[r]));
    let mut basis: Vec<(usize, Vec<Fp>)> = Vec::new();
    let mut chosen = Vec::new();
    for r in order {
        let mut v = vec![Fp::zero(); ncols];
        for (&c, p) in &rows[r] {
            let mut acc = Fp::zero();
            for co in p.coeffs().iter().rev() {
                acc = acc.mul(&z0).add(&co.fp_image(point)?);
            }
            v[c] = acc;
        }
        for (piv, b) in &basis {
            if !v[*piv].is_zero() {
                let f = v[*piv];
                for (x, y) in v.iter_mut().zip(b) {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        if let Some(piv) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[piv].inv().expect("nonzero");
            for x in v.iter_mut() {
                *x = x.mul(&inv);
            }
            basis.push((piv, v));
            chosen.push(r);
            if basis.len() == ncols {
                break;
            }
        }
    }
    Some(chosen)
}

/// Whether every kernel vector annihilates every row exactly.
fn annihilates<F: Field>(basis: &[Vec<RatFn<F>>], rows: &[PolyRow<F>]) -> bool {
    for x in basis {
        let mut den = Poly::one();
        for v in x {
            if !v.is_zero() && !v.den().is_one() {
                let g = den.gcd(v.den());
                den = den.mul(&v.den().exact_div(&g).expect("gcd divides"));
            }
        }
        let nums: Vec<Poly<F>> = x
            .iter()
            .map(|v| if v.is_zero() { Poly::zero() } else { v.num().mul(&den.exact_div(v.den()).expect("lcm")) })
            .collect();
        for row in rows {
            let mut acc = Poly::zero();
            for (&c, p) in row {
                if !nums[c].is_zero() {
                    acc = acc.add(&p.mul(&nums[c]));
                }
            }
            if !acc.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Basis of the right kernel of a sparse matrix over `F[z]`, with entries in `F(z)`.
///
/// Each basis vector has a `1` in one free column and zeros in the other free columns. A
/// maximal independent set of rows is chosen in a modular image, solved exactly, and the
/// result is checked exactly against the remaining rows; the full system is eliminated only
/// when that check fails.
pub fn kernel<F: Field>(rows: Vec<PolyRow<F>>, ncols: usize) -> Vec<Vec<RatFn<F>>> {
    if let Some(chosen) = select_rows(&rows, ncols) {
        let mut keep = vec![false; rows.len()];
        for &r in &chosen {
            keep[r] = true;
        }
        let (sel, rest): (Vec<_>, Vec<_>) = rows.iter().cloned().enumerate().partition(|(i, _)| keep[*i]);
        let sel: Vec<PolyRow<F>> = sel.into_iter().map(|(_, r)| r).collect();
        let rest: Vec<PolyRow<F>> = rest.into_iter().map(|(_, r)| r).collect();
        let basis = kernel_exact(sel, ncols);
        if annihilates(&basis, &rest) {
            return basis;
        }
    }
    kernel_exact(rows, ncols)
}

/// Kernel by sparse fraction-free elimination of all rows.
pub fn kernel_exact<F: Field>(rows: Vec<PolyRow<F>>, ncols: usize) -> Vec<Vec<RatFn<F>>> {
    let mut active: Vec<PolyRow<F>> = rows
        .into_iter()
        .map(|mut r| {
            normalize_row(&mut r);
            r
        })
        .filter(|r| !r.is_empty())
        .collect();
    let mut pivots: Vec<(usize, PolyRow<F>)> = Vec::new();
    let mut is_pivot = vec![false; ncols];
    while !active.is_empty() {
        let mut colcount = vec![0usize; ncols];
        for r in &active {
            for &c in r.keys() {
                colcount[c] += 1;
            }
        }
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for (ri, r) in active.iter().enumerate() {
            let rn = r.len() - 1;
            for (&c, p) in r {
                let score = rn * (colcount[c] - 1);
                let key = (score, cost(p), ri, c);
                if best.map_or(true, |b| (key.0, key.1) < (b.0, b.1)) {
                    best = Some(key);
                }
            }
        }
        let (_, _, ri, col) = best.expect("active rows are nonempty");
        let mut prow = active.swap_remove(ri);
        let mut lead = prow[&col].clone();
        let lc = lead.lead().cloned().expect("nonzero pivot");
        if !lc.is_one() {
            let s = lc.inv().expect("nonzero");
            for p in prow.values_mut() {
                *p = p.scale(&s);
            }
            lead = prow[&col].clone();
        }
        let mut next = Vec::with_capacity(active.len());
        for mut r in active.drain(..) {
            if let Some(rc) = r.remove(&col) {
                let mut out: PolyRow<F> = BTreeMap::new();
                for (&c, p) in &r {
                    out.insert(c, if lead.is_one() { p.clone() } else { p.mul(&lead) });
                }
                for (&c, p) in &prow {
                    if c == col {
                        continue;
                    }
                    let t = p.mul(&rc);
                    let e = out.entry(c).or_insert_with(Poly::zero);
                    *e = e.sub(&t);
                }
                r = out;
                normalize_row(&mut r);
            }
            if !r.is_empty() {
                next.push(r);
            }
        }
        active = next;
        is_pivot[col] = true;
        pivots.push((col, prow));
    }
    let free: Vec<usize> = (0..ncols).filter(|&c| !is_pivot[c]).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut x: Vec<RatFn<F>> = vec![RatFn::zero(); ncols];
        x[f] = RatFn::one();
        for (col, row) in pivots.iter().rev() {
            let mut acc = RatFn::zero();
            for (&c, p) in row {
                if c == *col || x[c].is_zero() {
                    continue;
                }
                acc = acc.add(&x[c].mul(&RatFn::from_poly(p.clone())));
            }
            if !acc.is_zero() {
                x[*col] = acc.neg().div(&RatFn::from_poly(row[col].clone()));
            }
        }
        basis.push(x);
    }
    basis
}
