//! Command execution: cache lookups, computations and report lines.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use rmf_core::brackets::{framework_check, recursion_pairs, verify_lemma41, verify_recursion, Verdict};
use rmf_core::cartan::{cartan_datum, AffineType, CartanDatum};
use rmf_core::exact::{fmt_scalar, parse_signed_monomial};
use rmf_core::fusion::fundamental_rep;
use rmf_core::modules::{check_relations, Rep};
use rmf_core::rmatrix::{denominator, normalized_r_matrix, pole_orders};
use rmf_core::verify::{closed_form_denominator, compare_end_to_end, schur_weyl_quiver, table_pairs, QuiverVertex};
use rmf_core::Error;

use crate::cache::Cache;
use crate::job::{JobSpec, Kind};

/// Why a run stopped without a complete report.
#[derive(Debug)]
pub enum Failure {
    /// Bad input: exit code 2.
    Usage(String),
    /// Computation or I/O error: exit code 1.
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::IndexOutOfRange(_)
            | Error::UnsupportedType(_)
            | Error::UnsupportedRank { .. }
            | Error::FormulaOnly(_)
            | Error::Parse(_)
            | Error::NotSignedMonomial(_) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

/// Report lines and whether every check passed.
pub struct Outcome {
    pub lines: Vec<Value>,
    pub pass: bool,
}

fn datum(ty: AffineType) -> Result<Arc<CartanDatum>, Failure> {
    Ok(Arc::new(cartan_datum(ty)?))
}

fn ty_key(ty: AffineType) -> (String, String) {
    (ty.family.name().to_string(), ty.n.to_string())
}

/// Runs a validated job.
pub fn run(job: &JobSpec, cache: &Cache) -> Result<Outcome, Failure> {
    match job.kind {
        Kind::Repr => repr(job, cache),
        Kind::Rmatrix => rmatrix(job, cache),
        Kind::Denom => {
            let (ty, k, l) = (job.ty.expect("type"), job.k.expect("k"), job.l.expect("l"));
            let line = denom_cell(ty, k, l, job.modular_precheck, cache)?;
            let pass = line["equal"].as_bool().unwrap_or(true);
            Ok(Outcome { lines: vec![line], pass })
        }
        Kind::VerifyGrid => verify_grid(job, cache),
        Kind::Quiver => quiver(job),
        Kind::BracketCheck => bracket_check(job),
    }
}

fn repr(job: &JobSpec, cache: &Cache) -> Result<Outcome, Failure> {
    let (ty, k) = (job.ty.expect("type"), job.k.expect("k"));
    let d = datum(ty)?;
    let (family, n) = ty_key(ty);
    let key = Cache::key(&["repr", &family, &n, &k.to_string()]);
    let rep = match cache.get(&key) {
        Some(v) => Rep::from_json(&d, &v)?,
        None => {
            let rep = fundamental_rep(&d, k)?;
            cache.put(&key, &rep.to_json())?;
            (*rep).clone()
        }
    };
    let failures = check_relations(&rep);
    let line = json!({
        "type": family,
        "n": ty.n,
        "k": k,
        "dim": rep.dim(),
        "relations_failed": failures,
        "rep": rep.to_json(),
    });
    Ok(Outcome { lines: vec![line], pass: failures.is_empty() })
}

fn rmatrix(job: &JobSpec, cache: &Cache) -> Result<Outcome, Failure> {
    let (ty, k, l) = (job.ty.expect("type"), job.k.expect("k"), job.l.expect("l"));
    let (family, n) = ty_key(ty);
    let key = Cache::key(&["rmatrix", &family, &n, &k.to_string(), &l.to_string()]);
    let line = match cache.get(&key) {
        Some(v) => v,
        None => {
            let d = datum(ty)?;
            let start = Instant::now();
            let r = normalized_r_matrix(&d, k, l)?;
            let den = denominator(&r)?;
            let failures = r.check();
            let v = json!({
                "type": family,
                "n": ty.n,
                "k": k,
                "l": l,
                "hom_dim": r.hom_dim(),
                "intertwiner_failures": failures,
                "denominator": den.to_json(),
                "pole_orders": pole_orders(&den)
                    .iter()
                    .map(|(r, m)| json!({"root": fmt_scalar(r), "mult": m}))
                    .collect::<Vec<_>>(),
                "timing_ms": start.elapsed().as_millis() as u64,
            });
            cache.put(&key, &v)?;
            v
        }
    };
    let pass = line["hom_dim"] == 1 && line["intertwiner_failures"].as_array().is_some_and(|a| a.is_empty());
    Ok(Outcome { lines: vec![line], pass })
}

/// One grid cell: the end-to-end comparison report, or the closed form alone for
/// formula-only types.
fn denom_cell(ty: AffineType, k: usize, l: usize, modular: bool, cache: &Cache) -> Result<Value, Failure> {
    if !ty.family.has_modules() {
        let closed = closed_form_denominator(ty, k, l)?;
        return Ok(json!({
            "type": ty.family.name(),
            "n": ty.n,
            "k": k,
            "l": l,
            "computed": null,
            "closed_form": closed.to_json(),
            "equal": null,
        }));
    }
    let (family, n) = ty_key(ty);
    let key = Cache::key(&["denom", &family, &n, &k.to_string(), &l.to_string(), if modular { "modular" } else { "exact" }]);
    if let Some(v) = cache.get(&key) {
        return Ok(v);
    }
    let v = compare_end_to_end(ty, k, l, modular)?.to_json();
    cache.put(&key, &v)?;
    Ok(v)
}

fn verify_grid(job: &JobSpec, cache: &Cache) -> Result<Outcome, Failure> {
    let ty = job.ty.expect("type");
    let max = job.max_k.unwrap_or(ty.n);
    let cells: Vec<(usize, usize)> = table_pairs(ty).into_iter().filter(|&(k, l)| k <= max && l <= max).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(job.jobs)
        .build()
        .map_err(|e| Failure::Runtime(e.to_string()))?;
    let results: Vec<Result<Value, Failure>> =
        pool.install(|| cells.par_iter().map(|&(k, l)| denom_cell(ty, k, l, job.modular_precheck, cache)).collect());
    let lines = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let pass = lines.iter().all(|v| v["equal"] == true && v["modular_precheck"] != false);
    Ok(Outcome { lines, pass })
}

fn verdict_line(check: &str, k: usize, l: usize, v: &Verdict) -> Value {
    json!({
        "check": check,
        "k": k,
        "l": l,
        "pass": v.pass,
        "unit": v.unit.as_ref().map(|u| u.to_string()),
        "detail": v.detail,
    })
}

fn bracket_check(job: &JobSpec) -> Result<Outcome, Failure> {
    let ty = job.ty.expect("type");
    let d = datum(ty)?;
    let mut lines = Vec::new();
    for (k, l) in recursion_pairs(&d) {
        lines.push(verdict_line("recursion", k, l, &verify_recursion(&d, k, l)?));
    }
    for (k, l) in [(1, 1), (1, 2), (2, 2)] {
        if k <= ty.n && l <= ty.n {
            lines.push(verdict_line("lemma41", k, l, &verify_lemma41(&d, k, l)?));
        }
    }
    for l in 2..=ty.n - d.theta {
        lines.push(verdict_line("framework", 1, l, &framework_check(&d, l)?));
    }
    let pass = lines.iter().all(|v| v["pass"] == true);
    Ok(Outcome { lines, pass })
}

fn vertex(entry: &Value) -> Result<QuiverVertex, Failure> {
    let bad = |what: &str| Failure::Usage(format!("quiver spec entry {entry}: {what}"));
    let id = match &entry["j"] {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(bad("missing \"j\"")),
    };
    let x = parse_signed_monomial(entry["X"].as_str().ok_or_else(|| bad("missing \"X\""))?)?;
    let s = &entry["s"];
    let family = s["type"].as_str().ok_or_else(|| bad("missing \"s.type\""))?.parse()?;
    let n = s["n"].as_u64().ok_or_else(|| bad("missing \"s.n\""))? as usize;
    let k = s["k"].as_u64().ok_or_else(|| bad("missing \"s.k\""))? as usize;
    let ty = AffineType::new(family, n)?;
    if k == 0 || k > n {
        return Err(bad("k outside 1..=n"));
    }
    Ok(QuiverVertex { id, x, ty, k })
}

fn quiver(job: &JobSpec) -> Result<Outcome, Failure> {
    let path = job.spec.as_ref().expect("spec path");
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let spec: Value =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let entries = spec.as_array().ok_or_else(|| Failure::Usage("quiver spec must be a JSON list".into()))?;
    let vertices = entries.iter().map(vertex).collect::<Result<Vec<_>, _>>()?;
    let out = schur_weyl_quiver(&vertices)?;
    Ok(Outcome { lines: vec![out.to_json()], pass: true })
}
