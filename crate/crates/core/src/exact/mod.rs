//! Exact arithmetic tower: Gaussian rationals, rational functions in `q_s` ([`Scalar`]),
//! rational functions in the spectral variable `z` ([`SpectralFn`]), a word-size prime field
//! for modular pre-checks, and dense linear algebra over any of them.

mod field;
mod gauss;
mod linalg;
mod modp;
mod poly;
mod ratfn;
mod scalar;

pub use field::Field;
pub use gauss::GaussRational;
pub use linalg::{Echelon, Matrix};
pub use modp::{is_prime_u64, modulus, sqrt_neg_one_mod, Fp};
pub use poly::{euclid_gcd, Poly};
pub use ratfn::RatFn;
pub use scalar::*;

/// Monic gcd of two polynomials over any field.
pub fn poly_gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    a.gcd(b)
}

/// Canonical reduced form of a raw fraction.
pub fn normalize<F: Field>(num: Poly<F>, den: Poly<F>) -> crate::Result<RatFn<F>> {
    RatFn::new(num, den)
}
