//! Affine Cartan data for the twisted types `A(2)_{2n-1}`, `A(2)_{2n}`, `D(2)_{n+1}` and the
//! untwisted `B(1)_n`, with the constants `p*`, `t` and `theta` attached to each type.
//!
//! Simple roots live in the `epsilon` basis of the classical weight lattice. Weights are stored
//! with doubled coordinates so that the half-integral spin weights stay integral.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::{signed_qs, Scalar};

/// Affine type family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `A(2)_{2n-1}`.
    A2odd,
    /// `A(2)_{2n}`.
    A2even,
    /// `B(1)_n`.
    B1,
    /// `D(2)_{n+1}`.
    D2,
    /// `A(1)_n`, formula evaluation only.
    A1,
    /// `C(1)_n`, formula evaluation only.
    C1,
    /// `D(1)_n`, formula evaluation only.
    D1,
}

impl Family {
    pub const ALL: [Family; 7] = [Family::A2odd, Family::A2even, Family::B1, Family::D2, Family::A1, Family::C1, Family::D1];

    /// Smallest admissible rank.
    pub fn min_rank(self) -> usize {
        match self {
            Family::A2odd => 3,
            Family::A2even => 2,
            Family::B1 => 3,
            Family::D2 => 2,
            Family::A1 => 1,
            Family::C1 => 2,
            Family::D1 => 4,
        }
    }

    /// Whether module tables (and hence end-to-end computations) exist for this family.
    pub fn has_modules(self) -> bool {
        matches!(self, Family::A2odd | Family::A2even | Family::B1 | Family::D2)
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::A2odd => "A2odd",
            Family::A2even => "A2even",
            Family::B1 => "B1",
            Family::D2 => "D2",
            Family::A1 => "A1",
            Family::C1 => "C1",
            Family::D1 => "D1",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnsupportedType(s.to_string()))
    }
}

/// A family together with its rank parameter `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineType {
    pub family: Family,
    pub n: usize,
}

impl AffineType {
    /// Validates the rank bound for the family.
    pub fn new(family: Family, n: usize) -> Result<Self> {
        if n < family.min_rank() {
            return Err(Error::UnsupportedRank { family: family.name(), min: family.min_rank(), n });
        }
        Ok(AffineType { family, n })
    }

    /// `t = 2` for `D(2)_{n+1}` and `1` otherwise.
    pub fn t(self) -> usize {
        if self.family == Family::D2 {
            2
        } else {
            1
        }
    }

    /// `theta = 1` for the types with a spin node (`B(1)_n`, `D(2)_{n+1}`), `0` otherwise.
    pub fn theta(self) -> usize {
        if matches!(self.family, Family::B1 | Family::D2) {
            1
        } else {
            0
        }
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={}", self.family, self.n)
    }
}

/// Classical weight with doubled `epsilon` coordinates: `coords[k] = 2 * (lambda, eps_{k+1})`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i32>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    /// Weight from ordinary integer `epsilon` coordinates.
    pub fn from_eps(coords: &[i32]) -> Self {
        Weight(coords.iter().map(|c| 2 * c).collect())
    }

    /// `eps_j` (1-based).
    pub fn eps(n: usize, j: usize) -> Self {
        let mut w = Self::zero(n);
        w.0[j - 1] = 2;
        w
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    /// Adds `m` times an integral root given in ordinary coordinates.
    pub fn add_root(&self, root: &[i32], m: i32) -> Weight {
        Weight(self.0.iter().zip(root).map(|(a, r)| a + 2 * m * r).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// The coordinates as half-integers `(numerator, 2)` rendered for humans.
    pub fn coords_string(&self) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&c| if c % 2 == 0 { (c / 2).to_string() } else { format!("{c}/2") })
            .collect();
        format!("({})", parts.join(","))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.coords_string())
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.coords_string())
    }
}

/// Affine Cartan datum with the realization of simple roots in the `epsilon` basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanDatum {
    pub ty: AffineType,
    /// Simple roots `alpha_0..alpha_n` in ordinary `epsilon` coordinates.
    pub roots: Vec<Vec<i32>>,
    /// Scale `s` of the form: `(eps_j, eps_k) = s * delta_jk`.
    pub form_scale: i32,
    /// Cartan matrix `a_ij = <h_i, alpha_j>`.
    pub cartan: Vec<Vec<i32>>,
    /// Symmetrizers `(alpha_i, alpha_i)`; `D * A` is symmetric for `D = diag(symmetrizers)`.
    pub symmetrizers: Vec<i64>,
    /// `q_i = q_s^{qi_exp[i]}`.
    pub qi_exp: Vec<i64>,
    /// Coefficients of the null root `delta = sum a_i alpha_i`.
    pub null_coeffs: Vec<i64>,
    /// Coefficients of the canonical central element `c = sum c_i h_i`.
    pub center_coeffs: Vec<i64>,
    /// `p* = i^{p_star_exp.0} * q_s^{p_star_exp.1}`.
    pub p_star_exp: (i64, i64),
    pub t: usize,
    pub theta: usize,
    /// The involution `i -> i*` on the classical nodes, indexed from 0 (entry 0 unused).
    pub star: Vec<usize>,
}

fn dot(a: &[i32], b: &[i32]) -> i64 {
    a.iter().zip(b).map(|(x, y)| *x as i64 * *y as i64).sum()
}

/// Builds the Cartan datum for a type with module data.
pub fn cartan_datum(ty: AffineType) -> Result<CartanDatum> {
    let n = ty.n;
    let fam = ty.family;
    if !fam.has_modules() {
        return Err(Error::FormulaOnly(fam.name().to_string()));
    }
    if n < fam.min_rank() {
        return Err(Error::UnsupportedRank { family: fam.name(), min: fam.min_rank(), n });
    }
    let e = |j: usize| -> Vec<i32> {
        let mut v = vec![0; n];
        v[j - 1] = 1;
        v
    };
    let mut roots = Vec::with_capacity(n + 1);
    let alpha0 = match fam {
        Family::A2odd | Family::B1 => e(1).iter().zip(e(2)).map(|(a, b)| -a - b).collect(),
        _ => e(1).iter().map(|a| -a).collect::<Vec<i32>>(),
    };
    roots.push(alpha0);
    for i in 1..n {
        roots.push(e(i).iter().zip(e(i + 1)).map(|(a, b)| a - b).collect());
    }
    roots.push(match fam {
        Family::A2odd | Family::A2even => e(n).iter().map(|a| 2 * a).collect(),
        _ => e(n),
    });
    let form_scale = if fam == Family::D2 { 2 } else { 1 };
    let norms: Vec<i64> = roots.iter().map(|r| dot(r, r)).collect();
    let cartan: Vec<Vec<i32>> = (0..=n)
        .map(|i| (0..=n).map(|j| (2 * dot(&roots[i], &roots[j]) / norms[i]) as i32).collect())
        .collect();
    let qi_exp: Vec<i64> = norms.iter().map(|m| form_scale as i64 * m).collect();
    let mut null_coeffs = vec![2i64; n + 1];
    let mut center_coeffs = vec![2i64; n + 1];
    match fam {
        Family::A2odd => {
            null_coeffs[0] = 1;
            null_coeffs[1] = 1;
            null_coeffs[n] = 1;
            center_coeffs[0] = 1;
            center_coeffs[1] = 1;
        }
        Family::A2even => {
            null_coeffs[n] = 1;
            center_coeffs[0] = 1;
        }
        Family::B1 => {
            null_coeffs[0] = 1;
            null_coeffs[1] = 1;
            center_coeffs[0] = 1;
            center_coeffs[1] = 1;
            center_coeffs[n] = 1;
        }
        Family::D2 => {
            null_coeffs = vec![1; n + 1];
            center_coeffs[0] = 1;
            center_coeffs[n] = 1;
        }
        _ => unreachable!(),
    }
    let nn = n as i64;
    // p* = -(-q)^{2n}, (-q)^{2n+1}, -(-q)^{2n-1}, -(-q^2)^n as i^k q_s^m.
    let p_star_exp = match fam {
        Family::A2odd => (2, 4 * nn),
        Family::A2even => ((2 * (2 * nn + 1)) % 4, 2 * (2 * nn + 1)),
        Family::B1 => ((2 + 2 * (2 * nn - 1)) % 4, 2 * (2 * nn - 1)),
        Family::D2 => ((2 + 2 * nn) % 4, 4 * nn),
        _ => unreachable!(),
    };
    Ok(CartanDatum {
        ty,
        roots,
        form_scale,
        symmetrizers: norms,
        cartan,
        qi_exp,
        null_coeffs,
        center_coeffs,
        p_star_exp,
        t: ty.t(),
        theta: ty.theta(),
        star: (0..=n).collect(),
    })
}

impl CartanDatum {
    pub fn n(&self) -> usize {
        self.ty.n
    }

    /// `<h_i, w>`.
    pub fn pairing(&self, i: usize, w: &Weight) -> i32 {
        let r = &self.roots[i];
        let num: i64 = r.iter().zip(&w.0).map(|(a, b)| *a as i64 * *b as i64).sum();
        let den = 2 * dot(r, r);
        // With doubled coordinates <h_i, w> = 2 * sum(r_k * w_k / 2) / |r|^2.
        let v = 2 * num / den;
        debug_assert_eq!(v * den, 2 * num, "non-integral pairing");
        v as i32
    }

    /// Exponent `m` with `K_i` acting on weight `w` by `q_s^m`, i.e. `m = 2 (alpha_i, w)`.
    pub fn k_exp(&self, i: usize, w: &Weight) -> i64 {
        let r = &self.roots[i];
        let num: i64 = r.iter().zip(&w.0).map(|(a, b)| *a as i64 * *b as i64).sum();
        self.form_scale as i64 * num
    }

    /// `q_i` as a scalar.
    pub fn q_i(&self, i: usize) -> Scalar {
        signed_qs(0, self.qi_exp[i])
    }

    /// `p*` as a scalar.
    pub fn p_star(&self) -> Scalar {
        signed_qs(self.p_star_exp.0, self.p_star_exp.1)
    }

    /// Classical image of `alpha_i` as a (doubled) weight.
    pub fn root_weight(&self, i: usize) -> Weight {
        Weight::from_eps(&self.roots[i])
    }

    /// Fundamental weight `varpi_k` of the classical part.
    pub fn fundamental_weight(&self, k: usize) -> Weight {
        let n = self.n();
        assert!((1..=n).contains(&k), "fundamental weight index out of range");
        let spin = k == n && matches!(self.ty.family, Family::B1 | Family::D2);
        let mut w = Weight::zero(n);
        for c in w.0.iter_mut().take(k) {
            *c = if spin { 1 } else { 2 };
        }
        w
    }

    /// Whether `w` is dominant for the classical nodes `1..n`.
    pub fn is_dominant(&self, w: &Weight) -> bool {
        (1..=self.n()).all(|i| self.pairing(i, w) >= 0)
    }

    /// Simple reflection `s_i` on a weight.
    pub fn reflect(&self, i: usize, w: &Weight) -> Weight {
        let m = self.pairing(i, w);
        w.add_root(&self.roots[i], -m)
    }

    /// Dominant representative of the classical Weyl orbit of `w`.
    pub fn dominant_conjugate(&self, w: &Weight) -> Weight {
        let mut w = w.clone();
        loop {
            match (1..=self.n()).find(|&i| self.pairing(i, &w) < 0) {
                Some(i) => w = self.reflect(i, &w),
                None => return w,
            }
        }
    }

    /// Largest classical index `k` for which the fusion route builds `V(varpi_k)`.
    pub fn max_fused_index(&self) -> usize {
        self.n() - self.theta
    }
}

/// `<h_i, w>` for a datum.
pub fn pairing(datum: &CartanDatum, i: usize, w: &Weight) -> i32 {
    datum.pairing(i, w)
}
