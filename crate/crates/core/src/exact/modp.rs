use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::field::Field;

struct Modulus {
    p: u64,
    sqrt_neg_one: u64,
}

static MODULUS: OnceLock<Modulus> = OnceLock::new();

fn modulus_data() -> &'static Modulus {
    MODULUS.get_or_init(|| {
        let mut p = (1u64 << 62) - 3;
        while !is_prime_u64(p) {
            p -= 4;
        }
        let sqrt_neg_one = sqrt_neg_one(p);
        Modulus { p, sqrt_neg_one }
    })
}

/// The working prime, the largest prime below `2^62` congruent to 1 mod 4.
pub fn modulus() -> u64 {
    modulus_data().p
}

/// A fixed square root of `-1` modulo [`modulus`].
pub fn sqrt_neg_one_mod() -> u64 {
    modulus_data().sqrt_neg_one
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn sqrt_neg_one(p: u64) -> u64 {
    (2..)
        .map(|a| pow_mod(a, (p - 1) / 4, p))
        .find(|&s| mul_mod(s, s, p) == p - 1)
        .expect("p = 1 mod 4 has a square root of -1")
}

/// Element of the prime field `F_p` for the working prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp(u64);

impl Fp {
    pub fn new(v: u64) -> Self {
        Fp(v % modulus())
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// The fixed square root of `-1`.
    pub fn i() -> Self {
        Fp(sqrt_neg_one_mod())
    }

    fn from_bigint(n: &BigInt) -> Self {
        let p = BigInt::from(modulus());
        let r = n.mod_floor(&p);
        Fp(r.to_u64().expect("reduced residue fits in u64"))
    }

    /// Image of a rational number, or `None` when its denominator vanishes.
    pub fn from_rational(r: &BigRational) -> Option<Self> {
        let d = Self::from_bigint(r.denom());
        let dinv = d.inv()?;
        Some(Self::from_bigint(r.numer()).mul(&dinv))
    }

    /// Recovers a rational `a/b` with `|a|, b <= sqrt(p/2)` congruent to this residue.
    pub fn rational_reconstruct(self) -> Option<BigRational> {
        let p = modulus() as i128;
        let bound = ((p / 2) as f64).sqrt() as i128;
        let (mut r0, mut r1) = (p, self.0 as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 > bound {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if t1 == 0 || t1.abs() > bound {
            return None;
        }
        let (num, den) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
        let q = BigRational::new(BigInt::from(num), BigInt::from(den));
        (Fp::from_rational(&q) == Some(self)).then_some(q)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for Fp {
    fn fp_image(&self, _point: Fp) -> Option<Fp> {
        Some(*self)
    }

    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn from_i64(n: i64) -> Self {
        let p = modulus() as i128;
        Fp((n as i128).rem_euclid(p) as u64)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn is_one(&self) -> bool {
        self.0 == 1
    }
    fn add(&self, o: &Self) -> Self {
        let p = modulus();
        let s = self.0 + o.0;
        Fp(if s >= p { s - p } else { s })
    }
    fn sub(&self, o: &Self) -> Self {
        let p = modulus();
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + p - o.0 })
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(mul_mod(self.0, o.0, modulus()))
    }
    fn neg(&self) -> Self {
        if self.0 == 0 {
            *self
        } else {
            Fp(modulus() - self.0)
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            let p = modulus();
            Some(Fp(pow_mod(self.0, p - 2, p)))
        }
    }
}
