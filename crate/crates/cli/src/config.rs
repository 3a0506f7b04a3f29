use clap::{Args, ValueEnum};
use qalpha_core::json::ParamsJson;
use qalpha_core::oracle::{DEFAULT_J, DEFAULT_TOL};
use qalpha_core::{Mode, QParams, Scalar};

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Base q in (0, 1), as "p/q" (decimals only in float mode) [default: 1/4]
    #[arg(long, global = true)]
    pub q: Option<String>,

    /// Q = q^alpha; required in exact mode when q^alpha is irrational
    #[arg(long = "Q", global = true)]
    pub big_q: Option<String>,

    /// Order alpha in (0, 1] [default: 1/2]
    #[arg(long, global = true)]
    pub alpha: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,

    /// Series truncation order for evaluation
    #[arg(long, global = true, default_value_t = 96)]
    pub order: usize,

    /// Tolerance for series tails and quadrature
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,

    /// Grid points per side for Jackson sums
    #[arg(long, global = true, default_value_t = DEFAULT_J)]
    pub j: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

pub struct RunConfig {
    pub params: QParams,
    pub order: usize,
    pub tol: f64,
    pub j: usize,
    pub format: Format,
}

impl RunConfig {
    pub fn load(g: &GlobalArgs) -> Result<Self, Failure> {
        let mode = match g.mode {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        };
        // Q defaults to 1/2 only alongside the default q and alpha
        let (q, alpha, big_q) = match (&g.q, &g.alpha, &g.big_q) {
            (None, None, None) => ("1/4", "1/2", Some("1/2")),
            (q, a, b) => (q.as_deref().unwrap_or("1/4"), a.as_deref().unwrap_or("1/2"), b.as_deref()),
        };
        let parse = |s: &str| Scalar::parse(s, mode).map_err(Failure::usage_from);
        let pj = ParamsJson {
            q: parse(q)?,
            big_q: big_q.map(parse).transpose()?,
            alpha: parse(alpha)?,
            mode: Some(mode),
        };
        let params = pj.to_params().map_err(Failure::usage_from)?;
        if !(g.tol > 0.0) {
            return Err(Failure::usage(format!("--tol must be positive, got {}", g.tol)));
        }
        Ok(RunConfig {
            params,
            order: g.order,
            tol: g.tol,
            j: g.j,
            format: g.format,
        })
    }
}
