use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Value};

use super::closed::closed_form_denominator;
use crate::cartan::{cartan_datum, AffineType, Family};
use crate::error::{Error, Result};
use crate::exact::{fmt_scalar, Scalar};
use crate::rmatrix::{
    denominator, modular_denominator, normalized_r_matrix, pole_orders, reduce_poly, DenomPoly, Intertwiner,
};

/// Result of comparing a computed denominator with its closed form.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub ty: AffineType,
    pub k: usize,
    pub l: usize,
    pub computed: DenomPoly,
    pub closed_form: DenomPoly,
    pub equal: bool,
    pub pole_orders: Vec<(Scalar, u32)>,
    pub timing_ms: u128,
    /// Whether the modular denominator agrees with the closed form, when that check ran.
    pub modular_agrees: Option<bool>,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "type": self.ty.family.name(),
            "n": self.ty.n,
            "k": self.k,
            "l": self.l,
            "computed": self.computed.to_json(),
            "closed_form": self.closed_form.to_json(),
            "equal": self.equal,
            "unit": if self.equal { Value::from("1") } else { Value::Null },
            "pole_orders": self
                .pole_orders
                .iter()
                .map(|(r, m)| json!({"root": fmt_scalar(r), "mult": m}))
                .collect::<Vec<_>>(),
            "timing_ms": self.timing_ms,
            "modular_precheck": self.modular_agrees,
        })
    }

    /// Rebuilds a report from its JSON form.
    pub fn from_json(v: &Value) -> Result<Self> {
        let err = || Error::Parse(format!("bad report {v}"));
        let family: Family = v.get("type").and_then(Value::as_str).ok_or_else(err)?.parse()?;
        let field = |name: &str| v.get(name).and_then(Value::as_u64).ok_or_else(err);
        let ty = AffineType::new(family, field("n")? as usize)?;
        let computed = DenomPoly::from_json(v.get("computed").ok_or_else(err)?)?;
        let closed_form = DenomPoly::from_json(v.get("closed_form").ok_or_else(err)?)?;
        Ok(Report {
            ty,
            k: field("k")? as usize,
            l: field("l")? as usize,
            pole_orders: pole_orders(&computed),
            equal: v.get("equal").and_then(Value::as_bool).ok_or_else(err)?,
            computed,
            closed_form,
            timing_ms: field("timing_ms")? as u128,
            modular_agrees: v.get("modular_precheck").and_then(Value::as_bool),
        })
    }
}

/// Computes `d_{k,l}` from the normalized R-matrix and compares it with the closed form.
///
/// With `modular_precheck`, the denominator is first computed over a prime field and compared
/// with the reduction of the closed form.
pub fn compare_end_to_end(ty: AffineType, k: usize, l: usize, modular_precheck: bool) -> Result<Report> {
    compare_with_r_matrix(ty, k, l, modular_precheck).map(|(report, _)| report)
}

/// Like [`compare_end_to_end`], also returning the solved R-matrix.
pub fn compare_with_r_matrix(ty: AffineType, k: usize, l: usize, modular_precheck: bool) -> Result<(Report, Intertwiner)> {
    if !ty.family.has_modules() {
        return Err(Error::FormulaOnly(ty.to_string()));
    }
    let closed_form = closed_form_denominator(ty, k, l)?;
    let datum = Arc::new(cartan_datum(ty)?);
    let start = Instant::now();
    let modular_agrees = if modular_precheck {
        let md = modular_denominator(&datum, k, l)?;
        Some(reduce_poly(&closed_form.poly) == Some(md))
    } else {
        None
    };
    let r = normalized_r_matrix(&datum, k, l)?;
    let computed = denominator(&r)?;
    let timing_ms = start.elapsed().as_millis();
    let report = Report {
        ty,
        k,
        l,
        equal: computed.poly == closed_form.poly,
        pole_orders: pole_orders(&computed),
        computed,
        closed_form,
        timing_ms,
        modular_agrees,
    };
    Ok((report, r))
}

/// The values `s` for which `d_{k,l}` of `D2` has double poles at `z = ±(-q^2)^{s/2}`:
/// `2 <= k, l <= n - 1`, `k + l > n`, `2n + 2 - k - l <= s <= k + l` and `s ≡ k + l (mod 2)`.
pub fn double_pole_predicate(ty: AffineType, k: usize, l: usize) -> Result<Vec<i64>> {
    if ty.family != Family::D2 {
        return Err(Error::UnsupportedType(format!("double poles are described for D2 only, got {ty}")));
    }
    let n = ty.n as i64;
    let (k, l) = (k as i64, l as i64);
    if k < 2 || l < 2 || k > n - 1 || l > n - 1 || k + l <= n {
        return Ok(Vec::new());
    }
    Ok((2 * n + 2 - k - l..=k + l).filter(|s| (s - k - l) % 2 == 0).collect())
}
