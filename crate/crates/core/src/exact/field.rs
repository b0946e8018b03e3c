use std::fmt::{Debug, Display};

use super::modp::Fp;
use super::poly::Poly;

/// A commutative field with exact arithmetic.
///
/// Methods take references so that heap-backed elements are never cloned implicitly.
pub trait Field: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, or `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Name of the variable of polynomials whose coefficients lie in this field.
    fn poly_var() -> &'static str {
        "x"
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Quotient `self / other`; panics when `other` is zero.
    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv().expect("division by zero"))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Integer power allowing negative exponents; panics on `0^(-k)`.
    fn powi(&self, e: i64) -> Self {
        let p = self.pow(e.unsigned_abs() as u32);
        if e < 0 {
            p.inv().expect("division by zero")
        } else {
            p
        }
    }

    /// Rough storage size, used to prefer cheap pivots.
    fn size(&self) -> usize {
        1
    }

    /// Image under a ring homomorphism to `F_p` that sends every field variable to `point`,
    /// or `None` when the homomorphism is undefined at this element.
    fn fp_image(&self, point: Fp) -> Option<Fp>;

    /// Monic greatest common divisor of two polynomials over this field.
    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        super::poly::euclid_gcd(a, b)
    }
}
