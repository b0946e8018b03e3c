use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::Field;
use super::modp::Fp;
use super::poly::{euclid_gcd, gcd_trivial, Poly};

/// Element `re + im * i` of the Gaussian rationals.
///
/// Both parts are kept in lowest terms with positive denominators by `BigRational`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRational {
    re: BigRational,
    im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(re: BigRational) -> Self {
        GaussRational { re, im: BigRational::zero() }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRational { re: BigRational::zero(), im: BigRational::one() }
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::from_int(1),
            1 => Self::i(),
            2 => Self::from_int(-1),
            _ => Self::i().neg(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// If this is one of `1, i, -1, -i`, the exponent `k` with `i^k` equal to it.
    pub fn unit_exponent(&self) -> Option<i64> {
        (0..4).find(|&k| *self == Self::i_pow(k))
    }

    /// Image in `F_p` under `i -> s` (`sign = 1`) or `i -> -s` (`sign = -1`).
    pub fn reduce_mod(&self, sign: i64) -> Option<Fp> {
        let re = Fp::from_rational(&self.re)?;
        if self.im.is_zero() {
            return Some(re);
        }
        let im = Fp::from_rational(&self.im)?;
        let s = if sign >= 0 { Fp::i() } else { Fp::i().neg() };
        Some(re.add(&im.mul(&s)))
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |r: &BigRational| -> String {
            if r.is_one() {
                "i".to_string()
            } else if (-r).is_one() {
                "-i".to_string()
            } else {
                format!("{}*i", fmt_rational(r))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => f.write_str(&fmt_rational(&self.re)),
            (true, false) => f.write_str(&imag(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { " - " } else { " + " };
                write!(f, "{}{}{}", fmt_rational(&self.re), sign, imag(&self.im.abs()))
            }
        }
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Field for GaussRational {
    fn fp_image(&self, _point: Fp) -> Option<Fp> {
        self.reduce_mod(1)
    }

    fn zero() -> Self {
        GaussRational { re: BigRational::zero(), im: BigRational::zero() }
    }
    fn one() -> Self {
        Self::from_int(1)
    }
    fn from_i64(n: i64) -> Self {
        Self::from_int(n)
    }
    fn poly_var() -> &'static str {
        "qs"
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        GaussRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn sub(&self, o: &Self) -> Self {
        GaussRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul(&self, o: &Self) -> Self {
        match (self.im.is_zero(), o.im.is_zero()) {
            (true, true) => GaussRational { re: &self.re * &o.re, im: BigRational::zero() },
            (true, false) => GaussRational { re: &self.re * &o.re, im: &self.re * &o.im },
            (false, true) => GaussRational { re: &self.re * &o.re, im: &self.im * &o.re },
            (false, false) => GaussRational {
                re: &self.re * &o.re - &self.im * &o.im,
                im: &self.re * &o.im + &self.im * &o.re,
            },
        }
    }
    fn neg(&self) -> Self {
        GaussRational { re: -&self.re, im: -&self.im }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(GaussRational { re: self.re.recip(), im: BigRational::zero() });
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(GaussRational { re: &self.re / &norm, im: -&self.im / &norm })
    }
    fn size(&self) -> usize {
        let bits = |r: &BigRational| (r.numer().bits() + r.denom().bits()) as usize;
        1 + (bits(&self.re) + bits(&self.im)) / 64
    }
    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        gauss_gcd(a, b)
    }
}

fn reduce_poly(a: &Poly<GaussRational>, sign: i64) -> Option<Poly<Fp>> {
    let coeffs: Option<Vec<Fp>> = a.coeffs().iter().map(|c| c.reduce_mod(sign)).collect();
    let p = Poly::new(coeffs?);
    (p.degree() == a.degree()).then_some(p)
}

/// Monic gcd over `Q(i)`.
///
/// Coprimality is certified by a single modular image: if the leading coefficients survive
/// reduction, the gcd modulo the prime bounds the true gcd degree from above. Nontrivial gcds
/// are lifted from the two conjugate embeddings by rational reconstruction and confirmed by
/// exact division, falling back to the Euclidean algorithm.
fn gauss_gcd(a: &Poly<GaussRational>, b: &Poly<GaussRational>) -> Poly<GaussRational> {
    if let Some(g) = gcd_trivial(a, b) {
        return g;
    }
    let (Some(a1), Some(b1)) = (reduce_poly(a, 1), reduce_poly(b, 1)) else {
        return euclid_gcd(a, b);
    };
    let g1 = euclid_gcd(&a1, &b1);
    if g1.degree() == Some(0) {
        return Poly::one();
    }
    let (Some(a2), Some(b2)) = (reduce_poly(a, -1), reduce_poly(b, -1)) else {
        return euclid_gcd(a, b);
    };
    let g2 = euclid_gcd(&a2, &b2);
    if g2.degree() != g1.degree() {
        return euclid_gcd(a, b);
    }
    let half = Fp::from_i64(2).inv().expect("odd prime");
    let s_inv = Fp::i().inv().expect("nonzero").mul(&half);
    let mut coeffs = Vec::with_capacity(g1.coeffs().len());
    for (c1, c2) in g1.coeffs().iter().zip(g2.coeffs()) {
        let re = c1.add(c2).mul(&half).rational_reconstruct();
        let im = c1.sub(c2).mul(&s_inv).rational_reconstruct();
        match (re, im) {
            (Some(re), Some(im)) => coeffs.push(GaussRational::new(re, im)),
            _ => return euclid_gcd(a, b),
        }
    }
    let g = Poly::new(coeffs);
    if a.exact_div(&g).is_some() && b.exact_div(&g).is_some() {
        g
    } else {
        euclid_gcd(a, b)
    }
}
