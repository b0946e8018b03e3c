use std::fmt;

use super::field::Field;
use super::modp::Fp;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Reduced fraction of univariate polynomials over a field.
///
/// Invariants: the denominator is monic and coprime to the numerator; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFn<F> {
    /// Normalizes `num/den` to its canonical reduced form.
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly<F>, den: Poly<F>) -> Self {
        if num.is_zero() {
            return Self::zero_fn();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        Self::monic_den(num, den)
    }

    fn monic_den(num: Poly<F>, den: Poly<F>) -> Self {
        let l = den.lead().expect("nonzero denominator").clone();
        if l.is_one() {
            RatFn { num, den }
        } else {
            let li = l.inv().expect("nonzero");
            RatFn { num: num.scale(&li), den: den.scale(&li) }
        }
    }

    fn zero_fn() -> Self {
        RatFn { num: Poly::zero(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFn { num: p, den: Poly::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The variable.
    pub fn var() -> Self {
        Self::from_poly(Poly::x())
    }

    /// The Laurent monomial `c * x^k`.
    pub fn monomial(c: F, k: i64) -> Self {
        if c.is_zero() {
            return Self::zero_fn();
        }
        if k >= 0 {
            Self::from_poly(Poly::monomial(c, k as usize))
        } else {
            RatFn { num: Poly::constant(c), den: Poly::monomial(F::one(), k.unsigned_abs() as usize) }
        }
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Whether the denominator is a power of the variable.
    pub fn is_laurent(&self) -> bool {
        self.den.is_monomial()
    }

    /// The value if this is a constant.
    pub fn as_constant(&self) -> Option<F> {
        if self.den.is_one() && self.num.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// If this is a Laurent monomial `c * x^k`, returns `(c, k)`.
    pub fn as_monomial(&self) -> Option<(F, i64)> {
        if !self.den.is_monomial() || !self.num.is_monomial() {
            return None;
        }
        let kn = self.num.degree()? as i64;
        let kd = self.den.degree()? as i64;
        Some((self.num.lead()?.clone(), kn - kd))
    }

    /// Exact value at `x`; fails when `x` is a pole.
    pub fn eval(&self, x: &F) -> Result<F> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(x).div(&d))
    }

    /// Substitutes `x -> c x` for nonzero `c`.
    pub fn scale_var(&self, c: &F) -> Self {
        Self::monic_den(self.num.scale_var(c), self.den.scale_var(c))
    }

    /// Applies a field homomorphism to the coefficients; `None` if a denominator degenerates.
    pub fn map_checked<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<RatFn<G>> {
        let num: Option<Vec<G>> = self.num.coeffs().iter().map(&f).collect();
        let den: Option<Vec<G>> = self.den.coeffs().iter().map(&f).collect();
        let den = Poly::new(den?);
        if den.degree() != self.den.degree() {
            return None;
        }
        RatFn::new(Poly::new(num?), den).ok()
    }

}

impl<F: Field> Field for RatFn<F> {
    fn fp_image(&self, point: Fp) -> Option<Fp> {
        let eval = |p: &Poly<F>| -> Option<Fp> {
            let mut acc = Fp::zero();
            for c in p.coeffs().iter().rev() {
                acc = acc.mul(&point).add(&c.fp_image(point)?);
            }
            Some(acc)
        };
        eval(&self.num)?.mul(&eval(&self.den)?.inv()?).into()
    }

    fn zero() -> Self {
        Self::zero_fn()
    }
    fn one() -> Self {
        RatFn { num: Poly::one(), den: Poly::one() }
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(F::from_i64(n))
    }
    fn poly_var() -> &'static str {
        "z"
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return Self::from_poly(self.num.add(&o.num));
            }
            return Self::reduce(self.num.add(&o.num), self.den.clone());
        }
        let g = self.den.gcd(&o.den);
        if g.is_one() {
            let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            if num.is_zero() {
                return Self::zero_fn();
            }
            return RatFn { num, den: self.den.mul(&o.den) };
        }
        let d1 = self.den.exact_div(&g).expect("gcd divides");
        let d2 = o.den.exact_div(&g).expect("gcd divides");
        let num = self.num.mul(&d2).add(&o.num.mul(&d1));
        if num.is_zero() {
            return Self::zero_fn();
        }
        let h = num.gcd(&g);
        let den = self.den.mul(&d2);
        if h.is_one() {
            RatFn { num, den }
        } else {
            RatFn { num: num.exact_div(&h).expect("gcd divides"), den: den.exact_div(&h).expect("gcd divides") }
        }
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero_fn();
        }
        if let Some(c) = o.as_constant() {
            return RatFn { num: self.num.scale(&c), den: self.den.clone() };
        }
        if let Some(c) = self.as_constant() {
            return RatFn { num: o.num.scale(&c), den: o.den.clone() };
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let (n1, d2) = if g1.is_one() {
            (self.num.clone(), o.den.clone())
        } else {
            (self.num.exact_div(&g1).expect("gcd divides"), o.den.exact_div(&g1).expect("gcd divides"))
        };
        let (n2, d1) = if g2.is_one() {
            (o.num.clone(), self.den.clone())
        } else {
            (o.num.exact_div(&g2).expect("gcd divides"), self.den.exact_div(&g2).expect("gcd divides"))
        };
        Self::monic_den(n1.mul(&n2), d1.mul(&d2))
    }
    fn neg(&self) -> Self {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }
    fn size(&self) -> usize {
        self.num.coeffs().iter().chain(self.den.coeffs()).map(Field::size).sum()
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::monic_den(self.den.clone(), self.num.clone()))
    }
}

impl<F: Field> fmt::Display for RatFn<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = F::poly_var();
        let num = self.num.display_in(var);
        if self.den.is_one() {
            return f.write_str(&num);
        }
        let den = self.den.display_in(var);
        let wrap = |s: String| if s.contains([' ', '*']) { format!("({s})") } else { s };
        write!(f, "{}/{}", wrap(num), wrap(den))
    }
}

impl<F: Field> fmt::Debug for RatFn<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
