use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde_json::{json, Value};

use super::field::Field;
use super::gauss::GaussRational;
use super::modp::Fp;
use super::poly::Poly;
use super::ratfn::RatFn;
use crate::error::{Error, Result};

/// Element of `Q(i)(q_s)`; the quantum parameter is `q = q_s^2`.
pub type Scalar = RatFn<GaussRational>;

/// Rational function in the spectral variable `z` over [`Scalar`].
pub type SpectralFn = RatFn<Scalar>;

/// `q_s^m` for any integer `m`.
pub fn qs_pow(m: i64) -> Scalar {
    Scalar::monomial(GaussRational::one(), m)
}

/// `q^m = q_s^(2m)`.
pub fn q_pow(m: i64) -> Scalar {
    qs_pow(2 * m)
}

/// `i^k * q_s^m`.
pub fn signed_qs(i_exp: i64, m: i64) -> Scalar {
    Scalar::monomial(GaussRational::i_pow(i_exp), m)
}

/// Integer constant as a scalar.
pub fn int(n: i64) -> Scalar {
    Scalar::from_i64(n)
}

/// The imaginary unit as a scalar.
pub fn imag() -> Scalar {
    Scalar::constant(GaussRational::i())
}

/// Quantum integer `[n]` in the parameter `q_s^d`, i.e. `(x^n - x^-n)/(x - x^-1)` at `x = q_s^d`.
pub fn qint(n: i64, d: i64) -> Scalar {
    if n == 0 {
        return Scalar::zero();
    }
    let sign = if n < 0 { -1 } else { 1 };
    let n = n.abs();
    let mut acc = Scalar::zero();
    for k in 0..n {
        acc = acc.add(&qs_pow(d * (n - 1 - 2 * k)));
    }
    acc.mul(&int(sign))
}

/// Quantum factorial `[n]!` in the parameter `q_s^d`.
pub fn qfactorial(n: i64, d: i64) -> Scalar {
    (1..=n).fold(Scalar::one(), |acc, k| acc.mul(&qint(k, d)))
}

/// Decomposes `s = i^k * q_s^m`, returning `(k mod 4, m)`.
pub fn as_signed_monomial(s: &Scalar) -> Option<(i64, i64)> {
    let (c, m) = s.as_monomial()?;
    Some((c.unit_exponent()?, m))
}

/// Image of a scalar in `F_p` at `q_s = qs_val`, under `i -> +-sqrt(-1)`.
pub fn reduce_scalar(s: &Scalar, qs_val: Fp, sign: i64) -> Option<Fp> {
    let f = |c: &GaussRational| c.reduce_mod(sign);
    let num: Option<Vec<Fp>> = s.num().coeffs().iter().map(f).collect();
    let den: Option<Vec<Fp>> = s.den().coeffs().iter().map(f).collect();
    let num = Poly::new(num?).eval(&qs_val);
    let den = Poly::new(den?).eval(&qs_val);
    Some(num.mul(&den.inv()?))
}

/// Value of a spectral function at `z = z0`.
pub fn evaluate(f: &SpectralFn, z0: &Scalar) -> Result<Scalar> {
    f.eval(z0)
}

/// Formats `i^k q_s^m` in `q` notation when `m` is even, e.g. `-q^3`, `i*q_s^5`.
pub fn fmt_signed_monomial(k: i64, m: i64) -> String {
    let unit = match k.rem_euclid(4) {
        0 => "",
        1 => "i",
        2 => "-",
        _ => "-i",
    };
    let base = if m == 0 {
        String::new()
    } else if m % 2 == 0 {
        if m == 2 {
            "q".to_string()
        } else {
            format!("q^{}", m / 2)
        }
    } else if m == 1 {
        "q_s".to_string()
    } else {
        format!("q_s^{m}")
    };
    match (unit, base.is_empty()) {
        ("", true) => "1".to_string(),
        ("-", true) => "-1".to_string(),
        (u, true) => u.to_string(),
        ("", false) => base,
        ("-", false) => format!("-{base}"),
        (u, false) => format!("{u}*{base}"),
    }
}

/// Terms `(c, m)` of a Laurent polynomial with integer coefficients `c`, highest power first.
fn integer_terms(s: &Scalar) -> Option<Vec<(BigInt, i64)>> {
    if !s.den().is_monomial() || !s.den().lead()?.is_one() {
        return None;
    }
    let dm = s.den().degree()? as i64;
    let mut out = Vec::new();
    for (j, c) in s.num().coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if !c.is_real() || !c.re().is_integer() {
            return None;
        }
        out.push((c.re().to_integer(), j as i64 - dm));
    }
    Some(out)
}

/// Formats a scalar, preferring `q` notation for signed monomials and integer combinations
/// of powers of `q_s`.
pub fn fmt_scalar(s: &Scalar) -> String {
    if let Some((k, m)) = as_signed_monomial(s) {
        return fmt_signed_monomial(k, m);
    }
    let Some(terms) = integer_terms(s) else { return s.to_string() };
    let mut out = String::new();
    for (c, m) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        let mono = fmt_signed_monomial(0, m);
        let body = if mag.is_one() {
            mono
        } else if m == 0 {
            mag.to_string()
        } else {
            format!("{mag}*{mono}")
        };
        if out.is_empty() {
            out = if neg { format!("-{body}") } else { body };
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    out
}

/// Parses a signed monomial such as `q^2`, `-q^3`, `i*q_s^5`, `-i`, `1` or `q^-1`.
pub fn parse_signed_monomial(text: &str) -> Result<Scalar> {
    let err = || Error::Parse(format!("not a signed monomial: {text:?}"));
    let mut s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut k = 0i64;
    if let Some(rest) = s.strip_prefix('-') {
        k += 2;
        s = rest.to_string();
    } else if let Some(rest) = s.strip_prefix('+') {
        s = rest.to_string();
    }
    if let Some(rest) = s.strip_prefix("i*") {
        k += 1;
        return Ok(signed_qs(k, parse_power(rest).ok_or_else(err)?));
    }
    if s == "i" {
        return Ok(signed_qs(k + 1, 0));
    }
    if s == "1" {
        return Ok(signed_qs(k, 0));
    }
    Ok(signed_qs(k, parse_power(&s).ok_or_else(err)?))
}

fn parse_power(s: &str) -> Option<i64> {
    let (base, exp) = match s.split_once('^') {
        Some((b, e)) => (b, e.trim_matches(|c| c == '(' || c == ')' || c == '{' || c == '}').parse::<i64>().ok()?),
        None => (s, 1),
    };
    match base {
        "q" => Some(2 * exp),
        "q_s" | "qs" => Some(exp),
        _ => None,
    }
}

fn rational_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let err = || Error::Parse(format!("bad rational {s:?}"));
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d == BigInt::from(0) {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

fn gauss_poly_json(p: &Poly<GaussRational>) -> Value {
    Value::Array(
        p.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| json!([e, rational_str(c.re()), rational_str(c.im())]))
            .collect(),
    )
}

fn gauss_poly_from_json(v: &Value) -> Result<Poly<GaussRational>> {
    let err = || Error::Parse(format!("bad polynomial {v}"));
    let mut coeffs: Vec<GaussRational> = Vec::new();
    for t in v.as_array().ok_or_else(err)? {
        let t = t.as_array().ok_or_else(err)?;
        if t.len() != 3 {
            return Err(err());
        }
        let e = t[0].as_u64().ok_or_else(err)? as usize;
        let re = parse_rational(t[1].as_str().ok_or_else(err)?)?;
        let im = parse_rational(t[2].as_str().ok_or_else(err)?)?;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, GaussRational::zero());
        }
        coeffs[e] = coeffs[e].add(&GaussRational::new(re, im));
    }
    Ok(Poly::new(coeffs))
}

/// Canonical JSON form `{"num": [[e, re, im], ..], "den": [..]}` of a scalar.
pub fn scalar_to_json(s: &Scalar) -> Value {
    json!({ "num": gauss_poly_json(s.num()), "den": gauss_poly_json(s.den()) })
}

pub fn scalar_from_json(v: &Value) -> Result<Scalar> {
    let num = gauss_poly_from_json(&v["num"])?;
    let den = gauss_poly_from_json(&v["den"])?;
    Scalar::new(num, den)
}

fn spectral_poly_json(p: &Poly<Scalar>) -> Value {
    Value::Array(
        p.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| json!([e, scalar_to_json(c)]))
            .collect(),
    )
}

fn spectral_poly_from_json(v: &Value) -> Result<Poly<Scalar>> {
    let err = || Error::Parse(format!("bad polynomial {v}"));
    let mut coeffs: Vec<Scalar> = Vec::new();
    for t in v.as_array().ok_or_else(err)? {
        let t = t.as_array().ok_or_else(err)?;
        if t.len() != 2 {
            return Err(err());
        }
        let e = t[0].as_u64().ok_or_else(err)? as usize;
        let c = scalar_from_json(&t[1])?;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, Scalar::zero());
        }
        coeffs[e] = coeffs[e].add(&c);
    }
    Ok(Poly::new(coeffs))
}

/// Canonical JSON form of a spectral function; coefficients are nested scalar objects.
pub fn spectral_to_json(f: &SpectralFn) -> Value {
    json!({ "num": spectral_poly_json(f.num()), "den": spectral_poly_json(f.den()) })
}

pub fn spectral_from_json(v: &Value) -> Result<SpectralFn> {
    let num = spectral_poly_from_json(&v["num"])?;
    let den = spectral_poly_from_json(&v["den"])?;
    SpectralFn::new(num, den)
}

/// Polynomial in `z` over scalars as JSON coefficient triples list.
pub fn zpoly_to_json(p: &Poly<Scalar>) -> Value {
    spectral_poly_json(p)
}

pub fn zpoly_from_json(v: &Value) -> Result<Poly<Scalar>> {
    spectral_poly_from_json(v)
}
