use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::cartan::{CartanDatum, Family, Weight};
use crate::error::{Error, Result};
use crate::exact::{fmt_scalar, qfactorial, signed_qs, Field, RatFn, Scalar};
use crate::modules::{tensor, Gen, Rep};

use super::fundamental::{at, fundamental_rep, neg_q2_half_pow, neg_q_pow, spectral_shift};
use super::homs::{find_homs, HomMap, HomSpace};
use super::isotypic::apply_block_flat;

/// The coefficient `C^λ_{μ,ξ}` of `u_μ ⊗ u_ξ` in the image of `u_λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct DoreyCoefficient {
    pub lambda: Weight,
    pub mu: Weight,
    pub xi: Weight,
    pub value: Scalar,
}

/// A Dorey-type morphism to verify.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DoreyRegime {
    /// `V(ϖ_i) ⊗ V(ϖ_j) ↠ V(ϖ_{i+j})` for `i + j <= n - ϑ`.
    Classical(usize, usize),
    /// `V(ϖ_n) ⊗ V(ϖ_n) ↠ V(ϖ_k)` for `D2` and `k < n`.
    Spin(usize),
    /// `V(ϖ_n)_{(-q)^{-1}} ⊗ V(ϖ_1)_{(-q)^n} ↠ V(ϖ_n)` for `A2even`.
    A2even1nn,
    /// `V(ϖ_k) ⊗ V(ϖ_l) ↠ V(ϖ_n)_{-1} ⊗ V(ϖ_n)` for `D2` and `k + l = n`.
    SpinPair(usize, usize),
}

impl fmt::Display for DoreyRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DoreyRegime::Classical(i, j) => write!(f, "classical({i},{j})"),
            DoreyRegime::Spin(k) => write!(f, "spin(n,{k})"),
            DoreyRegime::A2even1nn => f.write_str("a2even_1nn"),
            DoreyRegime::SpinPair(k, l) => write!(f, "spin_pair({k},{l})"),
        }
    }
}

/// One morphism checked for a regime.
#[derive(Clone, Debug)]
pub struct MorphismCheck {
    /// `p` (surjection onto the target) or `ι` (injection from the source).
    pub name: String,
    /// Spectral parameters of the two tensor factors.
    pub parameters: (Scalar, Scalar),
    pub hom_dim: usize,
    /// Generators and weights where the map fails to commute.
    pub failures: Vec<String>,
    /// Surjectivity for `p`, injectivity for `ι`.
    pub exact: bool,
}

impl MorphismCheck {
    pub fn pass(&self) -> bool {
        self.hom_dim >= 1 && self.failures.is_empty() && self.exact
    }
}

impl fmt::Display for MorphismCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at ({}, {}): dim {}, {}",
            self.name,
            fmt_scalar(&self.parameters.0),
            fmt_scalar(&self.parameters.1),
            self.hom_dim,
            if self.pass() { "ok" } else { "failed" }
        )?;
        if !self.failures.is_empty() {
            write!(f, " (does not commute with {})", self.failures.join(", "))?;
        }
        Ok(())
    }
}

/// Outcome of `verify_dorey`.
#[derive(Clone, Debug)]
pub struct DoreyReport {
    pub regime: DoreyRegime,
    pub morphisms: Vec<MorphismCheck>,
    /// Common ratio of solved to tabulated coefficients, when a table applies.
    pub unit: Option<Scalar>,
    /// Number of tabulated coefficients compared.
    pub compared: usize,
    pub mismatches: Vec<String>,
}

impl DoreyReport {
    pub fn pass(&self) -> bool {
        !self.morphisms.is_empty() && self.morphisms.iter().all(MorphismCheck::pass) && self.mismatches.is_empty()
    }
}

impl fmt::Display for DoreyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.regime, if self.pass() { "pass" } else { "fail" })?;
        for m in &self.morphisms {
            writeln!(f, "  {m}")?;
        }
        if let Some(u) = &self.unit {
            writeln!(f, "  {} coefficients agree up to {}", self.compared, fmt_scalar(u))?;
        }
        for m in &self.mismatches {
            writeln!(f, "  mismatch: {m}")?;
        }
        Ok(())
    }
}

/// Sign vectors `λ ∈ {1, 0, -1}^n` with exactly `k` nonzero entries.
fn signed_subsets(n: usize, k: usize) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    for mask in 0u32..3u32.pow(n as u32) {
        let mut m = mask;
        let v: Vec<i32> = (0..n)
            .map(|_| {
                let d = (m % 3) as i32;
                m /= 3;
                d - 1
            })
            .collect();
        if v.iter().filter(|&&x| x != 0).count() == k {
            out.push(v);
        }
    }
    out.sort();
    out
}

fn eps_weight(v: &[i32]) -> Weight {
    Weight(v.iter().map(|x| 2 * x).collect())
}

fn spin_weight(v: &[bool]) -> Weight {
    Weight(v.iter().map(|&p| if p { 1 } else { -1 }).collect())
}

fn classical_c(mu: &[i32], xi: &[i32]) -> i64 {
    let n = mu.len();
    let mut c = 0;
    for a in 0..n {
        for b in a + 1..n {
            if (mu[a], xi[a]) == (0, 1) && mu[b] != 0 {
                c += 1;
            }
            if (mu[a], xi[a]) == (-1, 0) && xi[b] != 0 {
                c += 1;
            }
        }
    }
    c
}

fn spin_c(mu: &[bool], xi: &[bool]) -> (i64, i64) {
    let n = mu.len();
    let minus_plus = |a: usize| !mu[a] && xi[a];
    let plus_minus = |a: usize| mu[a] && !xi[a];
    let mut c1 = 0;
    for a in 0..n {
        for b in a + 1..n {
            if minus_plus(a) && plus_minus(b) {
                c1 += 1;
            }
        }
    }
    (c1, (0..n).filter(|&a| minus_plus(a)).count() as i64)
}

/// `(-q^2)^a`.
fn neg_q2_pow(a: i64) -> Scalar {
    neg_q2_half_pow(2 * a)
}

/// `φ(c) = (-q)^c (-q^2)^{c(c-1)/2}`.
fn phi(c: i64) -> Scalar {
    neg_q_pow(c).mul(&neg_q2_pow(c * (c - 1) / 2))
}

/// The table of coefficients `C^λ_{μ,ξ}` of the classical embedding `V_0(ϖ_k) ↣ V_0(ϖ_i) ⊗ V_0(ϖ_j)`.
///
/// For `i + j <= n - ϑ` it covers `λ ∈ W_0 ϖ_{i+j}` with `C = (-q_1)^c`. For `D2` and
/// `i = j = n` it covers `λ ∈ W_0 ϖ_k` for every `1 <= k < n` with `C = (-q^2)^{c_1} φ(c_2)`.
pub fn dorey_coefficients(datum: &CartanDatum, i: usize, j: usize) -> Result<Vec<DoreyCoefficient>> {
    let n = datum.n();
    let mut out = Vec::new();
    if i >= 1 && j >= 1 && i + j <= n - datum.theta {
        for lambda in signed_subsets(n, i + j) {
            let support: Vec<usize> = (0..n).filter(|&a| lambda[a] != 0).collect();
            for mask in 0u32..(1 << support.len()) {
                if mask.count_ones() as usize != i {
                    continue;
                }
                let mut mu = vec![0; n];
                let mut xi = vec![0; n];
                for (bit, &a) in support.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        mu[a] = lambda[a];
                    } else {
                        xi[a] = lambda[a];
                    }
                }
                let c = classical_c(&mu, &xi);
                out.push(DoreyCoefficient {
                    lambda: eps_weight(&lambda),
                    mu: eps_weight(&mu),
                    xi: eps_weight(&xi),
                    value: signed_qs(2 * c, c * datum.qi_exp[1]),
                });
            }
        }
        return Ok(out);
    }
    if datum.ty.family == Family::D2 && i == n && j == n {
        for k in 1..n {
            for lambda in signed_subsets(n, k) {
                let zeros: Vec<usize> = (0..n).filter(|&a| lambda[a] == 0).collect();
                for mask in 0u32..(1 << zeros.len()) {
                    let mut mu: Vec<bool> = lambda.iter().map(|&x| x > 0).collect();
                    let mut xi = mu.clone();
                    for (bit, &a) in zeros.iter().enumerate() {
                        let plus = mask & (1 << bit) != 0;
                        mu[a] = plus;
                        xi[a] = !plus;
                    }
                    let (c1, c2) = spin_c(&mu, &xi);
                    out.push(DoreyCoefficient {
                        lambda: eps_weight(&lambda),
                        mu: spin_weight(&mu),
                        xi: spin_weight(&xi),
                        value: neg_q2_pow(c1).mul(&phi(c2)),
                    });
                }
            }
        }
        return Ok(out);
    }
    Err(Error::IndexOutOfRange(format!("no Dorey coefficient table for (i, j) = ({i}, {j}) in {}", datum.ty)))
}

/// Extremal vectors `u_{wϖ}` of the `W_0`-orbit of the highest weight `top`, normalized by
/// `u_{s_k μ} = f_k^{(<h_k, μ>)} u_μ` from the basis vector of weight `top`.
pub fn extremal_vectors(rep: &Rep, top: &Weight) -> Result<BTreeMap<Weight, Vec<Scalar>>> {
    let datum = rep.datum.clone();
    if rep.block(top).len() != 1 {
        return Err(Error::Inconsistent(format!("weight {} is not one-dimensional", top.coords_string())));
    }
    let mut out = BTreeMap::new();
    out.insert(top.clone(), vec![Scalar::one()]);
    let mut queue = VecDeque::from([top.clone()]);
    while let Some(mu) = queue.pop_front() {
        for k in 1..=datum.n() {
            let m = datum.pairing(k, &mu);
            if m <= 0 {
                continue;
            }
            let nu = datum.reflect(k, &mu);
            if out.contains_key(&nu) {
                continue;
            }
            let (mut w, mut v) = (mu.clone(), out[&mu].clone());
            for _ in 0..m {
                (w, v) = apply_block_flat(rep, Gen::F(k), &w, &v);
            }
            let norm = qfactorial(m as i64, datum.qi_exp[k]).inv().ok_or(Error::DivisionByZero)?;
            let v: Vec<Scalar> = v.iter().map(|x| x.mul(&norm)).collect();
            if v.iter().all(Scalar::is_zero) {
                return Err(Error::Inconsistent(format!("extremal vector of weight {} vanishes", nu.coords_string())));
            }
            out.insert(nu.clone(), v);
            queue.push_back(nu);
        }
    }
    Ok(out)
}

fn check_map(name: &str, space: &HomSpace<Scalar>, parameters: (Scalar, Scalar), surjection: bool) -> MorphismCheck {
    let (failures, exact) = match space.basis.first() {
        Some(map) => {
            let exact = if surjection { space.is_surjective(map) } else { space.is_injective(map) };
            (space.check_intertwiner(map), exact)
        }
        None => (Vec::new(), false),
    };
    MorphismCheck { name: name.to_string(), parameters, hom_dim: space.dim(), failures, exact }
}

fn pair_homs(
    left: &Arc<Rep>,
    right: &Arc<Rep>,
    (x, y): (&Scalar, &Scalar),
    other: &Arc<Rep>,
    into_tensor: bool,
) -> Result<HomSpace<Scalar>> {
    let t = Arc::new(tensor(&at(left, x)?, &at(right, y)?, false)?.rep);
    if into_tensor {
        find_homs(other.clone(), t)
    } else {
        find_homs(t, other.clone())
    }
}

/// Compares the image of every extremal `u_λ` under `iota` with the table, recording the
/// common ratio of solved to tabulated coefficients.
fn compare_coefficients(
    space: &HomSpace<Scalar>,
    iota: &HomMap<Scalar>,
    tops: [&Weight; 3],
    (left, right): (&Rep, &Rep),
    table: &[DoreyCoefficient],
    report: &mut DoreyReport,
) -> Result<()> {
    let us = extremal_vectors(&space.source, tops[0])?;
    let ul = extremal_vectors(left, tops[1])?;
    let ur = extremal_vectors(right, tops[2])?;
    let mut unit: Option<Scalar> = None;
    let right_dim = right.dim();
    for (lambda, u) in &us {
        let entries: Vec<&DoreyCoefficient> = table.iter().filter(|c| &c.lambda == lambda).collect();
        if entries.is_empty() {
            report.mismatches.push(format!("no tabulated coefficients for λ = {}", lambda.coords_string()));
            continue;
        }
        let lifted: Vec<RatFn<Scalar>> = u.iter().map(|c| RatFn::constant(c.clone())).collect();
        let image: Vec<Scalar> = space
            .apply(iota, lambda, &lifted)
            .iter()
            .map(|c| c.as_constant().ok_or_else(|| Error::Inconsistent("map with non-constant entries".into())))
            .collect::<Result<_>>()?;
        let block = space.target.block(lambda);
        let pos: BTreeMap<(usize, usize), usize> =
            block.iter().enumerate().map(|(p, &g)| ((g / right_dim, g % right_dim), p)).collect();
        let mut rebuilt = vec![Scalar::zero(); block.len()];
        for c in entries {
            let (Some(um), Some(ux)) = (ul.get(&c.mu), ur.get(&c.xi)) else {
                report.mismatches.push(format!("{} or {} is not extremal", c.mu.coords_string(), c.xi.coords_string()));
                continue;
            };
            let (bm, bx) = (left.block(&c.mu), right.block(&c.xi));
            let pm = um.iter().position(|x| !x.is_zero()).expect("nonzero extremal vector");
            let px = ux.iter().position(|x| !x.is_zero()).expect("nonzero extremal vector");
            let at_pair = image[pos[&(bm[pm], bx[px])]].clone();
            let solved = at_pair.div(&um[pm].mul(&ux[px]));
            for (a, x) in um.iter().enumerate() {
                for (b, y) in ux.iter().enumerate() {
                    if !x.is_zero() && !y.is_zero() {
                        let p = pos[&(bm[a], bx[b])];
                        rebuilt[p] = rebuilt[p].add(&solved.mul(&x.mul(y)));
                    }
                }
            }
            let ratio = solved.div(&c.value);
            report.compared += 1;
            match &unit {
                None if ratio.is_zero() => report.mismatches.push(format!(
                    "C^{}_{{{},{}}} vanishes",
                    c.lambda.coords_string(),
                    c.mu.coords_string(),
                    c.xi.coords_string()
                )),
                None => unit = Some(ratio),
                Some(r) if *r != ratio => report.mismatches.push(format!(
                    "C^{}_{{{},{}}} = {} but the table gives {}",
                    c.lambda.coords_string(),
                    c.mu.coords_string(),
                    c.xi.coords_string(),
                    fmt_scalar(&solved.div(r)),
                    fmt_scalar(&c.value)
                )),
                Some(_) => {}
            }
        }
        if rebuilt != image {
            report.mismatches.push(format!("image of u_λ for λ = {} leaves the extremal pairs", lambda.coords_string()));
        }
    }
    report.unit = report.unit.clone().or(unit);
    Ok(())
}

/// Constructs the morphisms of a regime with the hom solver at their spectral parameters and
/// checks that they are nonzero intertwiners, surjective (resp. injective) and, where a
/// coefficient table applies, that the embedding coefficients match it up to one scalar.
pub fn verify_dorey(datum: &Arc<CartanDatum>, regime: DoreyRegime) -> Result<DoreyReport> {
    let n = datum.n();
    let mut report = DoreyReport { regime, morphisms: Vec::new(), unit: None, compared: 0, mismatches: Vec::new() };
    match regime {
        DoreyRegime::Classical(i, j) => {
            if i == 0 || j == 0 || i + j > n - datum.theta {
                return Err(Error::IndexOutOfRange(format!("classical regime ({i}, {j}) for {}", datum.ty)));
            }
            let (vi, vj, vk) = (fundamental_rep(datum, i)?, fundamental_rep(datum, j)?, fundamental_rep(datum, i + j)?);
            let (i, j) = (i as i64, j as i64);
            let p_par = (spectral_shift(datum, -j), spectral_shift(datum, i));
            let p = pair_homs(&vi, &vj, (&p_par.0, &p_par.1), &vk, false)?;
            report.morphisms.push(check_map("p", &p, p_par, true));
            let i_par = (spectral_shift(datum, j), spectral_shift(datum, -i));
            let iota = pair_homs(&vi, &vj, (&i_par.0, &i_par.1), &vk, true)?;
            report.morphisms.push(check_map("ι", &iota, i_par, false));
            coefficients(&iota, datum, (i as usize, j as usize), (i + j) as usize, (&vi, &vj), &mut report)?;
        }
        DoreyRegime::Spin(k) => {
            if datum.ty.family != Family::D2 || k == 0 || k >= n {
                return Err(Error::IndexOutOfRange(format!("spin regime k = {k} for {}", datum.ty)));
            }
            let (vn, vk) = (fundamental_rep(datum, n)?, fundamental_rep(datum, k)?);
            let h = (n - k) as i64;
            for eta in [1, -1] {
                let p_par = (signed_qs(eta, 0).mul(&neg_q2_half_pow(-h)), signed_qs(-eta, 0).mul(&neg_q2_half_pow(h)));
                let p = pair_homs(&vn, &vn, (&p_par.0, &p_par.1), &vk, false)?;
                report.morphisms.push(check_map("p", &p, p_par, true));
                let i_par = (signed_qs(eta, 0).mul(&neg_q2_half_pow(h)), signed_qs(-eta, 0).mul(&neg_q2_half_pow(-h)));
                let iota = pair_homs(&vn, &vn, (&i_par.0, &i_par.1), &vk, true)?;
                report.morphisms.push(check_map("ι", &iota, i_par, false));
                coefficients(&iota, datum, (n, n), k, (&vn, &vn), &mut report)?;
            }
        }
        DoreyRegime::A2even1nn => {
            if datum.ty.family != Family::A2even {
                return Err(Error::UnsupportedType(format!("the (1, n, n) morphism needs A2even, got {}", datum.ty)));
            }
            let (v1, vn) = (fundamental_rep(datum, 1)?, fundamental_rep(datum, n)?);
            let p_par = (neg_q_pow(-1), neg_q_pow(n as i64));
            let p = pair_homs(&vn, &v1, (&p_par.0, &p_par.1), &vn, false)?;
            report.morphisms.push(check_map("p", &p, p_par, true));
            let i_par = (neg_q_pow(n as i64), neg_q_pow(-1));
            let iota = pair_homs(&v1, &vn, (&i_par.0, &i_par.1), &vn, true)?;
            report.morphisms.push(check_map("ι", &iota, i_par, false));
        }
        DoreyRegime::SpinPair(k, l) => {
            if datum.ty.family != Family::D2 || k == 0 || l == 0 || k + l != n {
                return Err(Error::IndexOutOfRange(format!("spin pair ({k}, {l}) for {}", datum.ty)));
            }
            let (vk, vl, vn) = (fundamental_rep(datum, k)?, fundamental_rep(datum, l)?, fundamental_rep(datum, n)?);
            let target = Arc::new(tensor(&at(&vn, &Scalar::one().neg())?, &vn, false)?.rep);
            for (eta, eta2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let par =
                    (signed_qs(eta, 0).mul(&neg_q2_half_pow(-(l as i64))), signed_qs(eta2, 0).mul(&neg_q2_half_pow(k as i64)));
                let source = Arc::new(tensor(&at(&vk, &par.0)?, &at(&vl, &par.1)?, false)?.rep);
                let space = find_homs(source, target.clone())?;
                report.morphisms.push(check_map("p", &space, par, true));
            }
        }
    }
    Ok(report)
}

fn coefficients(
    iota: &HomSpace<Scalar>,
    datum: &Arc<CartanDatum>,
    (i, j): (usize, usize),
    k: usize,
    (vi, vj): (&Rep, &Rep),
    report: &mut DoreyReport,
) -> Result<()> {
    if iota.dim() != 1 {
        report.mismatches.push(format!("embedding space has dimension {}", iota.dim()));
        return Ok(());
    }
    let table = dorey_coefficients(datum, i, j)?;
    let tops = [datum.fundamental_weight(k), datum.fundamental_weight(i), datum.fundamental_weight(j)];
    compare_coefficients(iota, &iota.basis[0], [&tops[0], &tops[1], &tops[2]], (vi, vj), &table, report)
}
