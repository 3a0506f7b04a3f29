mod config;
mod output;
mod verify;

use std::fmt;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qalpha_core::alphaseries::{series_eval, SeriesValue};
use qalpha_core::inverse::invert_detailed;
use qalpha_core::json::{parse_alpha_series, parse_problem, parse_time_expr, parse_transform};
use qalpha_core::odesolver::solve_ivp;
use qalpha_core::qcore::{beta_qa, bnk_table, gamma_qa, q_alpha, q_alpha_factorial};
use qalpha_core::transform::{natural_series, natural_time_expr};
use qalpha_core::{AlphaSeries, QError, Scalar};

use config::{Format, GlobalArgs, RunConfig};
use output::{scalar_value, Table};

#[derive(Debug, Parser)]
#[command(name = "qalpha", version, about = "q-deformed conformable fractional calculus")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Gamma_{q,alpha}(n) = [(n-1) alpha]!
    Gamma {
        n: i64,
        /// Cross-check against the Jackson integral
        #[arg(long)]
        verify: bool,
    },
    /// B_{q,alpha}(m, n)
    Beta {
        m: i64,
        n: i64,
        #[arg(long)]
        verify: bool,
    },
    /// Evaluate a time expression or alpha-series by series summation
    Eval {
        /// JSON file; stdin when omitted or "-"
        input: Option<PathBuf>,
        /// Comma-separated sample times
        #[arg(long, value_delimiter = ',', conflicts_with = "sample")]
        at: Vec<f64>,
        /// t0,t1,n: n evenly spaced times from t0 to t1
        #[arg(long)]
        sample: Option<String>,
    },
    /// Transform a time expression or alpha-series
    Transform { input: Option<PathBuf> },
    /// Invert a transform by partial fractions
    Invert { input: Option<PathBuf> },
    /// Solve a constant-coefficient initial value problem
    Solve {
        input: Option<PathBuf>,
        /// t0,t1,n: emit n sampled values of the solution as CSV
        #[arg(long)]
        sample: Option<String>,
    },
    /// Run built-in verification checks
    Verify {
        #[arg(value_enum, default_value_t = verify::Suite::All)]
        suite: verify::Suite,
    },
    /// Print coefficient tables
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        /// Largest index
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Qnumbers,
    Bnk,
}

#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub const USAGE: u8 = 2;
    pub const MATH: u8 = 3;
    pub const VERIFY: u8 = 4;

    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: Self::USAGE,
            message: message.into(),
        }
    }

    pub fn usage_from(e: impl fmt::Display) -> Self {
        Self::usage(e.to_string())
    }

    fn verify(message: impl Into<String>) -> Self {
        Failure {
            code: Self::VERIFY,
            message: message.into(),
        }
    }
}

impl From<QError> for Failure {
    fn from(e: QError) -> Self {
        let code = match e {
            QError::Parse(_) | QError::InvalidParams(_) | QError::ModeMismatch { .. } | QError::ParamMismatch => {
                Self::USAGE
            }
            _ => Self::MATH,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Self::usage(format!("invalid JSON: {e}"))
    }
}

type CmdResult = Result<(), Failure>;

fn read_json(input: &Option<PathBuf>) -> Result<Value, Failure> {
    let text = match input {
        Some(path) if path.as_os_str() != "-" => std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?,
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    Ok(serde_json::from_str(&text)?)
}

fn parse_sample(arg: &str) -> Result<Vec<f64>, Failure> {
    let bad = || Failure::usage(format!("--sample expects t0,t1,n; got '{arg}'"));
    let parts: Vec<&str> = arg.split(',').map(str::trim).collect();
    let [t0, t1, n] = parts[..] else {
        return Err(bad());
    };
    let t0: f64 = t0.parse().map_err(|_| bad())?;
    let t1: f64 = t1.parse().map_err(|_| bad())?;
    let n: usize = n.parse().map_err(|_| bad())?;
    if n == 0 || !(t0.is_finite() && t1.is_finite()) {
        return Err(bad());
    }
    if n == 1 {
        return Ok(vec![t0]);
    }
    Ok((0..n).map(|i| t0 + (t1 - t0) * i as f64 / (n - 1) as f64).collect())
}

fn sample_table(f: &AlphaSeries, times: &[f64], tol: f64) -> Result<(Table, Vec<SeriesValue>), Failure> {
    let mut table = Table::new(&["t", "value", "tail"]);
    let mut values = Vec::with_capacity(times.len());
    for &t in times {
        let v = series_eval(f, t, tol)?;
        table.push(vec![json!(t), json!(v.value), json!(v.tail)]);
        values.push(v);
    }
    Ok((table, values))
}

fn print_scalar(label: &str, args: Value, value: &Scalar, cfg: &RunConfig) {
    match cfg.format {
        Format::Text => {
            println!("{value}");
            if value.is_exact() {
                println!("{}", value.to_f64());
            }
        }
        Format::Json => {
            let mut obj = json!({ "function": label, "value": scalar_value(value), "float": value.to_f64() });
            obj.as_object_mut().unwrap().extend(args.as_object().unwrap().clone());
            println!("{}", serde_json::to_string_pretty(&obj).unwrap());
        }
        Format::Csv => {
            println!("value,float");
            println!("{value},{}", value.to_f64());
        }
    }
}

fn report_oracle(value: &Scalar, oracle: f64, err: f64, tol: f64, cfg: &RunConfig) -> CmdResult {
    let ok = err < tol;
    match cfg.format {
        Format::Json => println!(
            "{}",
            json!({ "oracle": oracle, "error": err, "tolerance": tol, "verified": ok })
        ),
        _ => println!("oracle {oracle:e}, error {err:.1e} ({})", if ok { "PASS" } else { "FAIL" }),
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::verify(format!("{value} disagrees with the integral oracle {oracle}")))
    }
}

fn cmd_gamma(n: i64, check: bool, cfg: &RunConfig) -> CmdResult {
    if n < 1 {
        return Err(Failure::usage(format!("gamma needs a positive integer, got {n}")));
    }
    let g = gamma_qa(n, &cfg.params)?;
    print_scalar("gamma", json!({ "n": n }), &g, cfg);
    if check {
        let oracle = verify::gamma_oracle(n, cfg).map_err(|e| Failure { code: Failure::MATH, message: e })?;
        let err = (oracle - g.to_f64()).abs() / g.to_f64().abs();
        report_oracle(&g, oracle, err, verify::GAMMA_REL_TOL, cfg)?;
    }
    Ok(())
}

fn cmd_beta(m: i64, n: i64, check: bool, cfg: &RunConfig) -> CmdResult {
    if m < 1 || n < 1 {
        return Err(Failure::usage(format!("beta needs positive integers, got {m}, {n}")));
    }
    let b = beta_qa(m, n, &cfg.params)?;
    print_scalar("beta", json!({ "m": m, "n": n }), &b, cfg);
    if check {
        let oracle = verify::beta_oracle(m, n, cfg).map_err(|e| Failure { code: Failure::MATH, message: e })?;
        let err = (oracle - b.to_f64()).abs();
        report_oracle(&b, oracle, err, verify::BETA_ABS_TOL, cfg)?;
    }
    Ok(())
}

/// `{"alpha_series": ...}` or a time expression.
fn parse_function(v: &Value, cfg: &RunConfig) -> Result<AlphaSeries, Failure> {
    if v.get("alpha_series").is_some() {
        return Ok(parse_alpha_series(v, &cfg.params)?);
    }
    Ok(parse_time_expr(v, &cfg.params)?.to_series(cfg.order, &cfg.params)?)
}

fn cmd_eval(input: &Option<PathBuf>, at: &[f64], sample: &Option<String>, cfg: &RunConfig) -> CmdResult {
    let times = match sample {
        Some(s) => parse_sample(s)?,
        None if at.is_empty() => return Err(Failure::usage("eval needs --at or --sample")),
        None => at.to_vec(),
    };
    let f = parse_function(&read_json(input)?, cfg)?;
    let (table, _) = sample_table(&f, &times, cfg.tol)?;
    println!("{}", table.render(cfg.format));
    Ok(())
}

fn cmd_transform(input: &Option<PathBuf>, cfg: &RunConfig) -> CmdResult {
    let v = read_json(input)?;
    let r = if v.get("alpha_series").is_some() {
        natural_series(&parse_alpha_series(&v, &cfg.params)?)
    } else {
        natural_time_expr(&parse_time_expr(&v, &cfg.params)?, &cfg.params)?
    };
    println!("{}", serde_json::to_string(&r)?);
    Ok(())
}

fn cmd_invert(input: &Option<PathBuf>, cfg: &RunConfig) -> CmdResult {
    let r = parse_transform(&read_json(input)?, &cfg.params)?;
    let inv = invert_detailed(&r, &cfg.params)?;
    for d in &inv.inexact {
        eprintln!("warning: sqrt({d}) is irrational; the affected terms are in float mode");
    }
    println!("{}", serde_json::to_string(&inv.expr)?);
    Ok(())
}

fn cmd_solve(input: &Option<PathBuf>, sample: &Option<String>, cfg: &RunConfig) -> CmdResult {
    let times = sample.as_deref().map(parse_sample).transpose()?;
    let (prob, p) = parse_problem(&read_json(input)?, Some(&cfg.params))?;
    let sol = solve_ivp(&prob, &p)?;
    let Some(times) = times else {
        println!("{}", serde_json::to_string(&sol)?);
        return Ok(());
    };
    let series = sol.to_series(cfg.order, &p)?;
    let (table, values) = sample_table(&series, &times, cfg.tol)?;
    match cfg.format {
        Format::Json => {
            let samples: Vec<Value> = times
                .iter()
                .zip(&values)
                .map(|(t, v)| json!({ "t": t, "value": v.value, "tail": v.tail }))
                .collect();
            let out = json!({ "solution": sol, "samples": samples });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        _ => println!("{}", table.render(Format::Csv)),
    }
    Ok(())
}

fn cmd_verify(suite: verify::Suite, cfg: &RunConfig) -> CmdResult {
    let checks = verify::run(suite, cfg);
    let failed = checks.iter().filter(|c| c.status == verify::Status::Fail).count();
    let mut table = Table::new(&["status", "check", "detail"]);
    for c in &checks {
        table.push(vec![json!(c.status.label()), json!(c.name), json!(c.detail)]);
    }
    println!("{}", table.render(cfg.format));
    if cfg.format == Format::Text {
        let skipped = checks.iter().filter(|c| c.status == verify::Status::Skip).count();
        println!("{} passed, {failed} failed, {skipped} skipped", checks.len() - failed - skipped);
    }
    if failed > 0 {
        return Err(Failure::verify(format!("{failed} check(s) failed")));
    }
    Ok(())
}

fn cmd_table(kind: TableKind, n: usize, cfg: &RunConfig) -> CmdResult {
    let p = &cfg.params;
    let table = match kind {
        TableKind::Qnumbers => {
            let mut t = Table::new(&["k", "q_number", "factorial"]);
            for k in 0..=n {
                t.push(vec![
                    json!(k),
                    scalar_value(&q_alpha(k as i64, p)),
                    scalar_value(&q_alpha_factorial(k as u32, p)),
                ]);
            }
            t
        }
        TableKind::Bnk => {
            let b = bnk_table(n, p);
            let mut t = Table::new(&["n", "k", "b"]);
            for i in 0..=n {
                for (k, v) in b.row(i).iter().enumerate() {
                    t.push(vec![json!(i), json!(k), scalar_value(v)]);
                }
            }
            t
        }
    };
    println!("{}", table.render(cfg.format));
    Ok(())
}

fn run(cli: &Cli) -> CmdResult {
    let cfg = RunConfig::load(&cli.global)?;
    match &cli.command {
        Command::Gamma { n, verify } => cmd_gamma(*n, *verify, &cfg),
        Command::Beta { m, n, verify } => cmd_beta(*m, *n, *verify, &cfg),
        Command::Eval { input, at, sample } => cmd_eval(input, at, sample, &cfg),
        Command::Transform { input } => cmd_transform(input, &cfg),
        Command::Invert { input } => cmd_invert(input, &cfg),
        Command::Solve { input, sample } => cmd_solve(input, sample, &cfg),
        Command::Verify { suite } => cmd_verify(*suite, &cfg),
        Command::Table { kind, n } => cmd_table(*kind, *n, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Failure::USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
