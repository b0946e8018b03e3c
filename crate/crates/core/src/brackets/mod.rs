//! Formal calculus for the universal scalars `a_{k,l}(z)`.
//!
//! A [`BracketExpr`] is a prefactor times a finite product of powers of infinite products
//! `(c z; P)_∞`, where `c = i^u q_s^m` and `P = (p*)^2`. The notations `[a]`, `⟨a⟩`, `{b}`,
//! `{b}'` and `[a]_(k)` are all products of such elementary factors. Expressions are never
//! evaluated; only ratios whose factors telescope modulo `P` are turned into rational
//! functions.

use std::collections::BTreeMap;
use std::fmt;

use crate::cartan::{CartanDatum, Family};
use crate::error::{Error, Result};
use crate::exact::{as_signed_monomial, fmt_scalar, fmt_signed_monomial, signed_qs, Field, Poly, Scalar, SpectralFn};
use crate::fusion::spectral_shift;
use crate::rmatrix::{r11_coefficients, DenomPoly};
use crate::verify::closed_form_denominator;

/// Key `(u mod 4, m)` of the elementary factor `(i^u q_s^m z; P)_∞`.
type Key = (i64, i64);

fn key(u: i64, m: i64) -> Key {
    (u.rem_euclid(4), m)
}

/// Formal product of infinite products `(c z; P)_∞` with integer exponents.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketExpr {
    /// Scalar prefactor; the symbolic `q^{(ϖ_k, ϖ_l)}` of the closed forms is omitted.
    pub prefactor: Scalar,
    factors: BTreeMap<Key, i64>,
    period: Key,
    t: usize,
}

impl BracketExpr {
    /// The empty product for the type of `datum`.
    pub fn one(datum: &CartanDatum) -> Self {
        let (u, m) = datum.p_star_exp;
        BracketExpr { prefactor: Scalar::one(), factors: BTreeMap::new(), period: key(2 * u, 2 * m), t: datum.t }
    }

    fn with(datum: &CartanDatum, keys: &[Key]) -> Self {
        let mut e = Self::one(datum);
        for &(u, m) in keys {
            e.push(key(u, m), 1);
        }
        e
    }

    fn push(&mut self, k: Key, e: i64) {
        let v = self.factors.entry(k).or_insert(0);
        *v += e;
        if *v == 0 {
            self.factors.remove(&k);
        }
    }

    /// `[a] = ((-q)^a z; P)_∞`.
    pub fn sq(datum: &CartanDatum, a: i64) -> Self {
        Self::with(datum, &[(2 * a, 2 * a)])
    }

    /// `⟨a⟩ = (-(-q)^a z; P)_∞`.
    pub fn ang(datum: &CartanDatum, a: i64) -> Self {
        Self::with(datum, &[(2 * a + 2, 2 * a)])
    }

    /// `{b} = ((-q^2)^b z; P)_∞ (-(-q^2)^b z; P)_∞` for `b = twice_b / 2`.
    pub fn br(datum: &CartanDatum, twice_b: i64) -> Self {
        Self::with(datum, &[(twice_b, 2 * twice_b), (twice_b + 2, 2 * twice_b)])
    }

    /// `{b}' = (i(-q^2)^b z; P)_∞ (-i(-q^2)^b z; P)_∞` for `b = twice_b / 2`.
    pub fn brp(datum: &CartanDatum, twice_b: i64) -> Self {
        Self::with(datum, &[(twice_b + 1, 2 * twice_b), (twice_b + 3, 2 * twice_b)])
    }

    /// `[a]_(k) = ((-1)^k q_s^a z; P)_∞`.
    pub fn sqk(datum: &CartanDatum, a: i64, k: i64) -> Self {
        Self::with(datum, &[(2 * k, a)])
    }

    /// The elementary factor `(c z; P)_∞` for a signed monomial `c`.
    pub fn elementary(datum: &CartanDatum, c: &Scalar) -> Result<Self> {
        let (u, m) = signed_monomial(c)?;
        Ok(Self::with(datum, &[(u, m)]))
    }

    /// The elementary factors with their exponents, as `(i^u q_s^m, exponent)`.
    pub fn factors(&self) -> impl Iterator<Item = (Scalar, i64)> + '_ {
        self.factors.iter().map(|(&(u, m), &e)| (signed_qs(u, m), e))
    }

    /// True when no infinite products remain.
    pub fn is_scalar(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.prefactor = out.prefactor.mul(&other.prefactor);
        for (&k, &e) in &other.factors {
            out.push(k, e);
        }
        out
    }

    pub fn inv(&self) -> Self {
        BracketExpr {
            prefactor: self.prefactor.inv().expect("nonzero prefactor"),
            factors: self.factors.iter().map(|(&k, &e)| (k, -e)).collect(),
            period: self.period,
            t: self.t,
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut out = BracketExpr { prefactor: Scalar::one(), factors: BTreeMap::new(), period: self.period, t: self.t };
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// The substitution `z -> c z` for a signed monomial `c`.
    pub fn shift(&self, c: &Scalar) -> Result<Self> {
        let (cu, cm) = signed_monomial(c)?;
        let mut out = BracketExpr { prefactor: self.prefactor.clone(), factors: BTreeMap::new(), period: self.period, t: self.t };
        for (&(u, m), &e) in &self.factors {
            out.push(key(u + cu, m + cm), e);
        }
        Ok(out)
    }

    /// Reduces a telescoping product to the finite rational function it equals.
    ///
    /// Factors are grouped into classes of constants differing by powers of `P`. Within a
    /// class the exponents must sum to zero, and then
    /// `(c z; P)_∞ / (c P^r z; P)_∞ = (1 - c z)(1 - c P z) ... (1 - c P^{r-1} z)`.
    pub fn reduce_to_rational(&self) -> Result<SpectralFn> {
        let (pu, pm) = self.period;
        let mut classes: BTreeMap<Key, BTreeMap<i64, i64>> = BTreeMap::new();
        for (&(u, m), &e) in &self.factors {
            let j = m.div_euclid(pm);
            let rep = key(u - j * pu, m - j * pm);
            classes.entry(rep).or_default().insert(j, e);
        }
        let mut out = SpectralFn::constant(self.prefactor.clone());
        for ((ru, rm), members) in &classes {
            let total: i64 = members.values().sum();
            if total != 0 {
                let listing: Vec<String> =
                    members.iter().map(|(j, e)| format!("{}^{e}", fmt_signed_monomial(ru + j * pu, rm + j * pm))).collect();
                return Err(Error::NonTelescoping(format!(
                    "exponents of the class of {} sum to {total}: {}",
                    fmt_signed_monomial(*ru, *rm),
                    listing.join(" ")
                )));
            }
            let lo = *members.keys().next().expect("nonempty class");
            let hi = *members.keys().next_back().expect("nonempty class");
            for i in lo..hi {
                let tail: i64 = members.range(i + 1..).map(|(_, e)| *e).sum();
                if tail == 0 {
                    continue;
                }
                let c = signed_qs(ru + i * pu, rm + i * pm);
                let lin = SpectralFn::from_poly(Poly::new(vec![Scalar::one(), c.neg()]));
                let f = if tail < 0 { lin } else { lin.inv().expect("nonzero linear factor") };
                out = out.mul(&f.pow(tail.unsigned_abs() as u32));
            }
        }
        Ok(out)
    }

    fn symbols(&self) -> Vec<(String, i64)> {
        let mut rest = self.factors.clone();
        let mut out = Vec::new();
        if self.t == 2 {
            for (&(u, m), &e) in &self.factors {
                if u >= 2 || m % 2 != 0 || rest.get(&(u, m)) != Some(&e) || rest.get(&(u + 2, m)) != Some(&e) {
                    continue;
                }
                rest.remove(&(u, m));
                rest.remove(&(u + 2, m));
                let half = m / 2;
                let b = if half % 2 == 0 { (half / 2).to_string() } else { format!("{half}/2") };
                let prime = if u == half.rem_euclid(2) { "" } else { "'" };
                out.push((format!("{{{b}}}{prime}"), e));
            }
        }
        for (&(u, m), &e) in &rest {
            let s = if u % 2 != 0 {
                format!("({} z)", fmt_signed_monomial(u, m))
            } else if m % 2 != 0 {
                format!("[{m}]_({})", u / 2)
            } else if u == m.rem_euclid(4) {
                format!("[{}]", m / 2)
            } else {
                format!("⟨{}⟩", m / 2)
            };
            out.push((s, e));
        }
        out
    }
}

fn superscript(e: u64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    if e == 1 {
        return String::new();
    }
    e.to_string().chars().map(|c| DIGITS[c.to_digit(10).expect("digit") as usize]).collect()
}

impl fmt::Display for BracketExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let symbols = self.symbols();
        let render = |pos: bool| -> (String, usize) {
            let parts: Vec<String> = symbols
                .iter()
                .filter(|(_, e)| (*e > 0) == pos)
                .map(|(s, e)| format!("{s}{}", superscript(e.unsigned_abs())))
                .collect();
            (parts.concat(), parts.len())
        };
        let (num, _) = render(true);
        let (den, den_len) = render(false);
        if !self.prefactor.is_one() {
            write!(f, "{}·", fmt_scalar(&self.prefactor))?;
        }
        let num = if num.is_empty() { "1".to_string() } else { num };
        match den_len {
            0 => write!(f, "{num}"),
            1 => write!(f, "{num}/{den}"),
            _ => write!(f, "{num}/({den})"),
        }
    }
}

fn signed_monomial(c: &Scalar) -> Result<Key> {
    as_signed_monomial(c).ok_or_else(|| Error::NotSignedMonomial(c.to_string()))
}

/// A unit `ζ q_s^m z^r` with `ζ` a fourth root of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unit {
    pub i_exp: i64,
    pub qs_exp: i64,
    pub z_exp: i64,
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = fmt_signed_monomial(self.i_exp, self.qs_exp);
        match self.z_exp {
            0 => write!(f, "{c}"),
            1 => write!(f, "{c}*z"),
            r => write!(f, "{c}*z^{r}"),
        }
    }
}

/// The unit `u` with `f = u g`, if there is one.
pub fn unit_between(f: &SpectralFn, g: &SpectralFn) -> Option<Unit> {
    let ratio = f.div(g);
    let (c, r) = ratio.as_monomial()?;
    let (i_exp, qs_exp) = as_signed_monomial(&c)?;
    Some(Unit { i_exp, qs_exp, z_exp: r })
}

/// Outcome of an identity check, with the witnessing unit on success.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub pass: bool,
    pub unit: Option<Unit>,
    pub detail: String,
}

impl Verdict {
    fn from_unit(unit: Option<Unit>, what: &str) -> Self {
        match unit {
            Some(u) => Verdict { pass: true, detail: format!("{what} holds with unit {u}"), unit: Some(u) },
            None => Verdict { pass: false, unit: None, detail: format!("{what} fails: ratio is not a unit") },
        }
    }
}

fn module_family(datum: &CartanDatum) -> Result<Family> {
    match datum.ty.family {
        f @ (Family::A2odd | Family::A2even | Family::B1 | Family::D2) => Ok(f),
        _ => Err(Error::FormulaOnly(datum.ty.to_string())),
    }
}

fn product(datum: &CartanDatum, num: &[BracketExpr], den: &[BracketExpr]) -> BracketExpr {
    let n = num.iter().fold(BracketExpr::one(datum), |acc, e| acc.mul(e));
    den.iter().fold(n, |acc, e| acc.div(e))
}

/// The closed form of `a_{k,l}(z)`, up to a unit.
///
/// Available for `1 <= k, l <= n - ϑ`, and for `B1`, `D2` when exactly one index equals `n`.
pub fn a_closed_form(datum: &CartanDatum, k: usize, l: usize) -> Result<BracketExpr> {
    let fam = module_family(datum)?;
    let n = datum.n();
    let theta = datum.theta;
    let range = |x: usize| x >= 1 && x <= n;
    if !range(k) || !range(l) {
        return Err(Error::IndexOutOfRange(format!("(k, l) = ({k}, {l}) is outside 1..={n}")));
    }
    let regular = |x: usize| x <= n - theta;
    let (nn, ki, li) = (n as i64, k as i64, l as i64);
    if regular(k) && regular(l) {
        let d = (ki - li).abs();
        let s = ki + li;
        let sq = |a: i64| BracketExpr::sq(datum, a);
        let ang = |a: i64| BracketExpr::ang(datum, a);
        let br = |b2: i64| BracketExpr::br(datum, b2);
        return Ok(match fam {
            Family::A2odd => product(
                datum,
                &[sq(d), sq(4 * nn - d), ang(2 * nn + s), ang(2 * nn - s)],
                &[sq(s), sq(4 * nn - s), ang(2 * nn + d), ang(2 * nn - d)],
            ),
            Family::A2even => product(
                datum,
                &[sq(d), sq(4 * nn + 2 - d), sq(2 * nn + 1 + s), sq(2 * nn + 1 - s)],
                &[sq(s), sq(4 * nn + 2 - s), sq(2 * nn + 1 + d), sq(2 * nn + 1 - d)],
            ),
            Family::B1 => product(
                datum,
                &[sq(d), sq(4 * nn - 2 - d), ang(2 * nn - 1 + s), ang(2 * nn - 1 - s)],
                &[sq(s), sq(4 * nn - 2 - s), ang(2 * nn - 1 + d), ang(2 * nn - 1 - d)],
            ),
            Family::D2 => product(
                datum,
                &[br(d), br(4 * nn - d), br(2 * nn + s), br(2 * nn - s)],
                &[br(s), br(4 * nn - s), br(2 * nn + d), br(2 * nn - d)],
            ),
            _ => unreachable!(),
        });
    }
    if theta == 1 && (k == n) != (l == n) {
        let j = ki.min(li);
        return Ok(match fam {
            Family::B1 => {
                let sqk = |a: i64| BracketExpr::sqk(datum, a, nn + j);
                product(
                    datum,
                    &[sqk(2 * nn - 2 * j - 1), sqk(6 * nn + 2 * j - 3)],
                    &[sqk(2 * nn + 2 * j - 1), sqk(6 * nn - 2 * j - 3)],
                )
            }
            Family::D2 => {
                let brp = |b2: i64| BracketExpr::brp(datum, b2);
                product(datum, &[brp(3 * nn + j), brp(nn - j)], &[brp(3 * nn - j), brp(nn + j)])
            }
            _ => unreachable!(),
        });
    }
    Err(Error::IndexOutOfRange(format!("no closed form for a_{{{k},{l}}} at n = {n}")))
}

/// `a(z) = ∏_ν (p* x_ν z; P)(p* x_ν^{-1} z; P) / ((x_ν z; P)(P x_ν^{-1} z; P))` over the roots
/// `x_ν` of a denominator `d(z) = ∏ (z - x_ν)`.
pub fn a_from_denominator(datum: &CartanDatum, d: &DenomPoly) -> Result<BracketExpr> {
    let p_star = datum.p_star();
    let period = p_star.mul(&p_star);
    let mut out = BracketExpr::one(datum);
    for (x, mult) in &d.factors {
        let x_inv = x.inv().ok_or(Error::DivisionByZero)?;
        let term = product(
            datum,
            &[BracketExpr::elementary(datum, &p_star.mul(x))?, BracketExpr::elementary(datum, &p_star.mul(&x_inv))?],
            &[BracketExpr::elementary(datum, x)?, BracketExpr::elementary(datum, &period.mul(&x_inv))?],
        );
        out = out.mul(&term.pow(*mult as i64));
    }
    Ok(out)
}

/// Compares two bracket expressions up to a unit, reducing their ratio when it telescopes.
pub fn equivalent(lhs: &BracketExpr, rhs: &BracketExpr, what: &str) -> Verdict {
    match lhs.div(rhs).reduce_to_rational() {
        Ok(f) => Verdict::from_unit(unit_between(&f, &SpectralFn::one()), what),
        Err(e) => Verdict { pass: false, unit: None, detail: format!("{what} fails: {e}") },
    }
}

fn symmetric_closed_form(datum: &CartanDatum, k: usize, l: usize) -> Result<BracketExpr> {
    a_closed_form(datum, k.max(l), k.min(l))
}

/// Checks `a_{k,l}(z) ≡ a_{k,l-1}(c1 z) a_{k,1}(c2 z)` for explicit shifts `c1`, `c2`.
pub fn check_recursion(datum: &CartanDatum, k: usize, l: usize, c1: &Scalar, c2: &Scalar) -> Result<Verdict> {
    if l < 2 {
        return Err(Error::IndexOutOfRange(format!("recursion needs l >= 2, got {l}")));
    }
    let lhs = symmetric_closed_form(datum, k, l)?;
    let rhs = symmetric_closed_form(datum, k, l - 1)?.shift(c1)?.mul(&symmetric_closed_form(datum, k, 1)?.shift(c2)?);
    Ok(equivalent(&lhs, &rhs, &format!("recursion for a_{{{k},{l}}}")))
}

/// Checks `a_{k,l}(z) ≡ a_{k,l-1}(-q^{-1} z) a_{k,1}((-q)^{l-1} z)` (with `-q^t` and `t`-th roots
/// for `D2`), for `l <= k` after using the symmetry `a_{k,l} = a_{l,k}`.
pub fn verify_recursion(datum: &CartanDatum, k: usize, l: usize) -> Result<Verdict> {
    let (k, l) = (k.max(l), k.min(l));
    check_recursion(datum, k, l, &spectral_shift(datum, -1), &spectral_shift(datum, l as i64 - 1))
}

/// Every `(k, l)` with `2 <= l <= k` for which the recursion applies.
pub fn recursion_pairs(datum: &CartanDatum) -> Vec<(usize, usize)> {
    let n = datum.n();
    let top = n - datum.theta;
    let mut out: Vec<(usize, usize)> = (2..=top).flat_map(|k| (2..=k).map(move |l| (k, l))).collect();
    if datum.theta == 1 {
        out.extend((2..n).map(|l| (n, l)));
    }
    out
}

/// `d(p* z^{-1})` as a spectral function.
fn reflected(d: &DenomPoly, p_star: &Scalar) -> SpectralFn {
    let coeffs = d.poly.coeffs();
    let deg = coeffs.len() - 1;
    let mut pw = Scalar::one();
    let mut rev = vec![Scalar::zero(); deg + 1];
    for (i, c) in coeffs.iter().enumerate() {
        rev[deg - i] = c.mul(&pw);
        pw = pw.mul(p_star);
    }
    SpectralFn::new(Poly::new(rev), Poly::monomial(Scalar::one(), deg)).expect("nonzero denominator")
}

/// Checks `a_{k,l}(z) a_{k,l}(z / p*) ≡ d_{k,l}(z) / d_{k,l}(p* z^{-1})` with the closed-form
/// denominator.
pub fn verify_lemma41(datum: &CartanDatum, k: usize, l: usize) -> Result<Verdict> {
    let a = a_closed_form(datum, k, l)?;
    let p_star = datum.p_star();
    let lhs = a.mul(&a.shift(&p_star.inv().ok_or(Error::DivisionByZero)?)?).reduce_to_rational()?;
    let d = closed_form_denominator(datum.ty, k, l)?;
    let rhs = SpectralFn::from_poly(d.poly.clone()).div(&reflected(&d, &p_star));
    Ok(Verdict::from_unit(unit_between(&lhs, &rhs), &format!("a·a(z/p*) = d/d(p*/z) for ({k}, {l})")))
}

/// Checks the `k = 1` fusion step against the closed formula for `R^norm_{1,1}`:
/// `a_{1,l}(z) ≡ a_{1,l-1}(c1 z) a_{1,1}(c2 z) w(c2 z)`, where `w` is the coefficient of the
/// swapped vector in `R^norm_{1,1}`.
pub fn framework_check(datum: &CartanDatum, l: usize) -> Result<Verdict> {
    let top = datum.n() - datum.theta;
    if l < 2 || l > top {
        return Err(Error::IndexOutOfRange(format!("framework check needs 2 <= l <= {top}, got {l}")));
    }
    let c1 = spectral_shift(datum, -1);
    let c2 = spectral_shift(datum, l as i64 - 1);
    let ratio = a_closed_form(datum, 1, l)?
        .div(&a_closed_form(datum, 1, l - 1)?.shift(&c1)?)
        .div(&a_closed_form(datum, 1, 1)?.shift(&c2)?)
        .reduce_to_rational()?;
    let w = r11_coefficients(datum, false).swap.scale_var(&c2);
    Ok(Verdict::from_unit(unit_between(&ratio, &w), &format!("framework step for a_{{1,{l}}}")))
}
