use serde_json::{json, Value};

use crate::cartan::{CartanDatum, Family};
use crate::error::{Error, Result};
use crate::exact::{
    as_signed_monomial, fmt_scalar, fmt_signed_monomial, parse_signed_monomial, scalar_to_json, signed_qs, Field, Fp,
    Poly, Scalar,
};

const ROOT_POINT: u64 = 0x3c6e_f372_fe94_f82b;

/// A monic polynomial in `z` with its exact factorization into linear factors `z - r`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenomPoly {
    pub poly: Poly<Scalar>,
    /// Roots `i^k q_s^m` with multiplicities, sorted by `(m, k)`.
    pub factors: Vec<(Scalar, u32)>,
}

fn root_key(r: &Scalar) -> (i64, i64) {
    as_signed_monomial(r).map_or((i64::MAX, 0), |(k, m)| (m, k))
}

impl DenomPoly {
    /// The constant polynomial `1`.
    pub fn one() -> Self {
        DenomPoly { poly: Poly::one(), factors: Vec::new() }
    }

    /// Product of `(z - r)^mult`, merging repeated roots.
    pub fn from_roots(roots: impl IntoIterator<Item = (Scalar, u32)>) -> Self {
        let mut factors: Vec<(Scalar, u32)> = Vec::new();
        for (r, m) in roots {
            if m == 0 {
                continue;
            }
            match factors.iter_mut().find(|(s, _)| *s == r) {
                Some(f) => f.1 += m,
                None => factors.push((r, m)),
            }
        }
        factors.sort_by_key(|(r, _)| root_key(r));
        let mut poly = Poly::one();
        for (r, m) in &factors {
            poly = poly.mul(&Poly::linear_root(r).pow(*m));
        }
        DenomPoly { poly, factors }
    }

    /// Factors a monic polynomial whose roots are all of the form `i^k q_s^m`.
    pub fn factor(poly: Poly<Scalar>) -> Result<Self> {
        let lead = poly.lead().cloned().ok_or(Error::DivisionByZero)?;
        let poly = if lead.is_one() { poly } else { poly.scale(&lead.inv().ok_or(Error::DivisionByZero)?) };
        let bound = exponent_bound(&poly);
        let point = Fp::new(ROOT_POINT);
        let image: Option<Vec<Fp>> = poly.coeffs().iter().map(|c| c.fp_image(point)).collect();
        let mut rest = poly.clone();
        let mut factors = Vec::new();
        for m in -bound..=bound {
            for k in 0..4 {
                if rest.degree() == Some(0) {
                    break;
                }
                if let Some(img) = &image {
                    let r = Fp::i().pow(k as u32).mul(&point.powi(m));
                    let mut acc = Fp::zero();
                    for c in img.iter().rev() {
                        acc = acc.mul(&r).add(c);
                    }
                    if !acc.is_zero() {
                        continue;
                    }
                }
                let root = signed_qs(k, m);
                let lin = Poly::linear_root(&root);
                let mut mult = 0;
                while let Some(q) = exact_quotient(&rest, &lin) {
                    rest = q;
                    mult += 1;
                }
                if mult > 0 {
                    factors.push((root, mult));
                }
            }
        }
        if rest.degree() != Some(0) {
            return Err(Error::UnexpectedFactor(rest.display_in("z")));
        }
        factors.sort_by_key(|(r, _)| root_key(r));
        Ok(DenomPoly { poly, factors })
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    /// Multiplicity of `root` (zero when it is not a root).
    pub fn multiplicity(&self, root: &Scalar) -> u32 {
        self.factors.iter().find(|(r, _)| r == root).map_or(0, |f| f.1)
    }

    /// Factored form such as `(z - q^2)^1 (z + q^6)^1`, or `1`.
    pub fn factored_string(&self) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(r, m)| format!("({})^{m}", linear_factor_string(r)))
            .collect();
        parts.join(" ")
    }

    /// Expanded form such as `z^2 - q^6`.
    pub fn expanded_string(&self) -> String {
        fmt_z_poly(&self.poly)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "factored": self.factored_string(),
            "expanded": self.expanded_string(),
            "coeffs": self.poly.coeffs().iter().map(scalar_to_json).collect::<Vec<_>>(),
            "roots": self.factors.iter().map(|(r, m)| json!({"root": fmt_scalar(r), "mult": m})).collect::<Vec<_>>(),
        })
    }

    /// Rebuilds a factored polynomial from its `roots` list.
    pub fn from_json(v: &Value) -> Result<Self> {
        let err = || Error::Parse(format!("bad denominator {v}"));
        let roots = v.get("roots").and_then(Value::as_array).ok_or_else(err)?;
        let mut out = Vec::new();
        for r in roots {
            let root = parse_signed_monomial(r.get("root").and_then(Value::as_str).ok_or_else(err)?)?;
            let mult = r.get("mult").and_then(Value::as_u64).ok_or_else(err)? as u32;
            out.push((root, mult));
        }
        Ok(DenomPoly::from_roots(out))
    }
}

fn exact_quotient(p: &Poly<Scalar>, d: &Poly<Scalar>) -> Option<Poly<Scalar>> {
    let (q, r) = p.divrem(d);
    r.is_zero().then_some(q)
}

fn exponent_bound(p: &Poly<Scalar>) -> i64 {
    let mut b = 0i64;
    for c in p.coeffs() {
        if c.is_zero() {
            continue;
        }
        let span = |q: &Poly<crate::exact::GaussRational>| q.degree().unwrap_or(0) as i64;
        b = b.max(span(c.num()) + span(c.den()));
    }
    b + 2
}

/// `z - r` rendered in `q` notation.
pub fn linear_factor_string(r: &Scalar) -> String {
    match as_signed_monomial(r) {
        Some((k, m)) if k % 2 == 0 => {
            let mag = fmt_signed_monomial(0, m);
            if k == 0 {
                format!("z - {mag}")
            } else {
                format!("z + {mag}")
            }
        }
        Some((k, m)) => {
            let mag = fmt_signed_monomial(1, m);
            if k == 1 {
                format!("z - {mag}")
            } else {
                format!("z + {mag}")
            }
        }
        None => format!("z - ({r})"),
    }
}

/// A polynomial in `z` over scalars rendered in `q` notation, highest degree first.
pub fn fmt_z_poly(p: &Poly<Scalar>) -> String {
    let mut out = String::new();
    for (d, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let zpart = match d {
            0 => String::new(),
            1 => "z".to_string(),
            _ => format!("z^{d}"),
        };
        let (neg, mag) = match as_signed_monomial(c) {
            Some((k, m)) => {
                let neg = k >= 2;
                let mag = fmt_signed_monomial(k % 2, m);
                (neg, mag)
            }
            None => (false, format!("({})", fmt_scalar(c))),
        };
        let term = match (zpart.is_empty(), mag.as_str()) {
            (true, _) => mag.clone(),
            (false, "1") => zpart.clone(),
            (false, _) => format!("{mag}*{zpart}"),
        };
        if out.is_empty() {
            out = if neg { format!("-{term}") } else { term };
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

/// Monic least common multiple of polynomials, with the powers of `z` removed.
pub fn lcm_without_z<F: Field>(polys: impl IntoIterator<Item = Poly<F>>) -> Poly<F> {
    let mut acc = Poly::one();
    for p in polys {
        let p = match p.valuation() {
            Some(v) if v > 0 => p.shift_down(v),
            _ => p,
        };
        if p.is_constant() {
            continue;
        }
        let g = acc.gcd(&p);
        acc = acc.mul(&p.exact_div(&g).expect("gcd divides"));
    }
    acc.monic()
}

/// Rewrites a denominator computed in the `e_0` twist variable `s` into the spectral variable.
///
/// For `A2even` the spectral variable is `s^2`; the polynomial must then be even.
pub fn to_spectral_variable<F: Field>(datum: &CartanDatum, p: Poly<F>) -> Result<Poly<F>> {
    if datum.ty.family != Family::A2even {
        return Ok(p);
    }
    let c = p.coeffs();
    if c.iter().enumerate().any(|(i, x)| i % 2 == 1 && !x.is_zero()) {
        return Err(Error::Inconsistent("denominator is not even in the e_0 twist variable".into()));
    }
    Ok(Poly::new(c.iter().step_by(2).cloned().collect()))
}
