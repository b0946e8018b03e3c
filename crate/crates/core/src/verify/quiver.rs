use serde_json::{json, Value};

use super::closed::closed_form_denominator;
use crate::cartan::AffineType;
use crate::error::{Error, Result};
use crate::exact::{fmt_scalar, Field, Scalar};

/// A vertex `j` with spectral parameter `X(j)` carrying the fundamental module `V(ϖ_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuiverVertex {
    pub id: String,
    pub x: Scalar,
    pub ty: AffineType,
    pub k: usize,
}

/// The Schur–Weyl quiver: arrow counts, symmetric Cartan matrix and the exponents `(d_ij, d_ji)`
/// of `Q_{i,j}(u, v) = (u - v)^{d_ij} (v - u)^{d_ji}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverOutput {
    pub vertices: Vec<String>,
    pub arrows: Vec<Vec<u32>>,
    pub cartan: Vec<Vec<i64>>,
    pub q_exponents: Vec<Vec<(u32, u32)>>,
}

impl QuiverOutput {
    pub fn to_json(&self) -> Value {
        json!({
            "vertices": self.vertices,
            "arrows": self.arrows,
            "cartan": self.cartan,
            "q_exponents": self.q_exponents.iter().map(|row| row.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// Builds the quiver with `d_ij` the order of the zero of `d_{s(i),s(j)}(z)` at `X(j)/X(i)`.
pub fn schur_weyl_quiver(vertices: &[QuiverVertex]) -> Result<QuiverOutput> {
    let m = vertices.len();
    let mut arrows = vec![vec![0u32; m]; m];
    for (i, vi) in vertices.iter().enumerate() {
        let xi_inv = vi.x.inv().ok_or_else(|| Error::Parse(format!("vertex {} has X = 0", vi.id)))?;
        for (j, vj) in vertices.iter().enumerate() {
            if i == j {
                continue;
            }
            if vi.ty != vj.ty {
                return Err(Error::MismatchedData);
            }
            let d = closed_form_denominator(vi.ty, vi.k, vj.k)?;
            arrows[i][j] = d.multiplicity(&vj.x.mul(&xi_inv));
        }
    }
    let cartan = (0..m)
        .map(|i| (0..m).map(|j| if i == j { 2 } else { -(arrows[i][j] as i64) - arrows[j][i] as i64 }).collect())
        .collect();
    let q_exponents = (0..m).map(|i| (0..m).map(|j| (arrows[i][j], arrows[j][i])).collect()).collect();
    Ok(QuiverOutput { vertices: vertices.iter().map(|v| v.id.clone()).collect(), arrows, cartan, q_exponents })
}

impl std::fmt::Display for QuiverVertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: X = {}, V(ϖ_{}) of {}", self.id, fmt_scalar(&self.x), self.k, self.ty)
    }
}
