//! Validated job descriptions built from the command line.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rmf_core::cartan::{AffineType, Family};

/// Exact R-matrix, denominator and bracket computations for quantum affine algebras.
#[derive(Debug, Parser)]
#[command(name = "rmf", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the fundamental module V(ϖ_k) and check its defining relations.
    Repr(Common),
    /// Solve for the normalized R-matrix R_{k,l}(z) and report its denominator.
    Rmatrix(Common),
    /// Compare the computed denominator d_{k,l}(z) with its closed form.
    Denom(Common),
    /// Compare computed and closed-form denominators for every (k, l) of a type.
    VerifyGrid(Common),
    /// Build the Schur–Weyl quiver of a vertex list.
    Quiver(QuiverArgs),
    /// Check the bracket recursion, the denominator formula for a_{k,l} and the framework identity.
    BracketCheck(Common),
}

#[derive(Debug, Args)]
pub struct Common {
    /// One of A2odd, A2even, B1, D2, A1, C1, D1.
    #[arg(long = "type")]
    pub ty: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    #[command(flatten)]
    pub run: RunArgs,
    /// Also compute the denominator over a prime field before the exact solve.
    #[arg(long)]
    pub modular_precheck: bool,
    /// Restrict grid runs to k, l <= max-k.
    #[arg(long)]
    pub max_k: Option<usize>,
}

#[derive(Debug, Args)]
pub struct QuiverArgs {
    /// JSON list of {"j": id, "X": scalar, "s": {"type", "n", "k"}}.
    #[arg(long)]
    pub spec: PathBuf,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Write the newline-delimited JSON report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Result cache directory.
    #[arg(long, env = "RMF_CACHE")]
    pub cache: Option<PathBuf>,
    /// Worker threads for grid cells; defaults to the available parallelism.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Repr,
    Rmatrix,
    Denom,
    VerifyGrid,
    Quiver,
    BracketCheck,
}

/// A fully validated job.
#[derive(Clone, Debug)]
pub struct JobSpec {
    pub kind: Kind,
    pub ty: Option<AffineType>,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub out: Option<PathBuf>,
    pub cache: Option<PathBuf>,
    pub jobs: usize,
    pub modular_precheck: bool,
    pub max_k: Option<usize>,
    pub spec: Option<PathBuf>,
}

fn index(name: &str, v: Option<usize>, n: usize, required: bool) -> Result<Option<usize>, String> {
    match v {
        None if required => Err(format!("--{name} is required")),
        Some(x) if x == 0 || x > n => Err(format!("--{name} {x} is outside 1..={n}")),
        other => Ok(other),
    }
}

impl JobSpec {
    /// Validates every field before any computation starts.
    pub fn from_cli(cli: Cli) -> Result<JobSpec, String> {
        let (kind, common, run, spec) = match cli.command {
            Command::Repr(c) => (Kind::Repr, Some(c), None, None),
            Command::Rmatrix(c) => (Kind::Rmatrix, Some(c), None, None),
            Command::Denom(c) => (Kind::Denom, Some(c), None, None),
            Command::VerifyGrid(c) => (Kind::VerifyGrid, Some(c), None, None),
            Command::BracketCheck(c) => (Kind::BracketCheck, Some(c), None, None),
            Command::Quiver(q) => (Kind::Quiver, None, Some(q.run), Some(q.spec)),
        };
        let mut job = JobSpec {
            kind,
            ty: None,
            k: None,
            l: None,
            out: None,
            cache: None,
            jobs: 1,
            modular_precheck: false,
            max_k: None,
            spec,
        };
        let run = match common {
            Some(c) => {
                let family: Family = c.ty.parse().map_err(|e| format!("--type: {e}"))?;
                let ty = AffineType::new(family, c.n).map_err(|e| format!("--n: {e}"))?;
                let n = ty.n;
                let needs_k = matches!(kind, Kind::Repr | Kind::Rmatrix | Kind::Denom);
                let needs_l = matches!(kind, Kind::Rmatrix | Kind::Denom);
                job.k = index("k", c.k, n, needs_k)?;
                job.l = index("l", c.l, n, needs_l)?;
                if !needs_k && c.k.is_some() {
                    return Err("--k is not used by this command".into());
                }
                if !needs_l && c.l.is_some() {
                    return Err("--l is not used by this command".into());
                }
                if c.max_k.is_some() && kind != Kind::VerifyGrid {
                    return Err("--max-k applies to verify-grid only".into());
                }
                if c.modular_precheck && !matches!(kind, Kind::Denom | Kind::VerifyGrid) {
                    return Err("--modular-precheck applies to denom and verify-grid only".into());
                }
                job.max_k = index("max-k", c.max_k, n, false)?;
                job.modular_precheck = c.modular_precheck;
                if !family.has_modules() && kind != Kind::Denom {
                    return Err(format!("{family} is a formula-only type: no module tables to compute with"));
                }
                job.ty = Some(ty);
                c.run
            }
            None => run.expect("quiver run arguments"),
        };
        job.jobs = match run.jobs {
            Some(0) => return Err("--jobs must be positive".into()),
            Some(j) => j,
            None => std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1),
        };
        job.out = run.out;
        job.cache = run.cache;
        Ok(job)
    }
}
