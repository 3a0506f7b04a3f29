//! Numeric q,alpha-integrals by truncated Jackson sums, independent of the
//! symbolic layer.
//!
//! `int_0^inf f(x) d_{q,alpha} x = (1-q) sum_{j in Z} x_j^alpha f(x_j)` on the
//! geometric grid `x_j = c q^j`. The anchor `c` is placed on the zeros of the
//! transform kernel: with `c = (1-q)^{-1/alpha}` the factor
//! `1/e_{q,alpha}(q x)` vanishes identically for `j < 0`, so the sum is
//! finite on the left. Off the anchored grid the kernel grows like
//! `Q^{-j^2/2}` as `j -> -inf` and the bilateral sum diverges.

use serde::{Deserialize, Serialize};

use crate::alphaseries::{inv_e_kernel, TimeExpr};
use crate::error::{QError, Result};
use crate::params::QParams;

pub const DEFAULT_J: usize = 200;
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureReport {
    pub value: f64,
    pub terms_used: usize,
    pub tail_bound: f64,
    pub converged: bool,
}

/// Tail estimate from the last two terms of one side, assuming geometric decay.
fn tail_estimate(prev: f64, last: f64) -> f64 {
    let (prev, last) = (prev.abs(), last.abs());
    if last == 0.0 {
        return 0.0;
    }
    if prev == 0.0 {
        return f64::INFINITY;
    }
    let r = last / prev;
    if r < 1.0 {
        last * r / (1.0 - r)
    } else {
        f64::INFINITY
    }
}

fn finish(mut terms: Vec<f64>, tail_bound: f64, tol: f64) -> QuadratureReport {
    let terms_used = terms.len();
    terms.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    let value: f64 = terms.iter().sum();
    QuadratureReport {
        value,
        terms_used,
        tail_bound,
        converged: value.is_finite() && tail_bound < tol,
    }
}

fn check_args(j: usize, tol: f64) -> Result<()> {
    if j < 2 {
        return Err(QError::Domain("at least two grid points per side are needed".into()));
    }
    if !(tol > 0.0) {
        return Err(QError::Domain(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

/// `(1-q) sum_{j=-J}^{J} x_j^alpha f(x_j)` with `x_j = anchor * q^j`.
pub fn jackson_bilateral<F>(f: F, anchor: f64, p: &QParams, j_max: usize, tol: f64) -> Result<QuadratureReport>
where
    F: Fn(f64) -> Result<f64>,
{
    check_args(j_max, tol)?;
    if !(anchor > 0.0) {
        return Err(QError::Domain(format!("grid anchor must be positive, got {anchor}")));
    }
    let (q, a) = (p.q_f64(), p.alpha_f64());
    let j_max = j_max as i32;
    let mut terms = Vec::with_capacity(2 * j_max as usize + 1);
    for j in -j_max..=j_max {
        let x = anchor * q.powi(j);
        let v = f(x)?;
        terms.push(if v == 0.0 { 0.0 } else { (1.0 - q) * x.powf(a) * v });
    }
    let n = terms.len();
    let tail = tail_estimate(terms[1], terms[0]) + tail_estimate(terms[n - 2], terms[n - 1]);
    Ok(finish(terms, tail, tol))
}

/// `int_0^inf f(x) d_{q,alpha} x` on the kernel-anchored grid.
pub fn jackson_integral_0_inf<F>(f: F, p: &QParams, j_max: usize, tol: f64) -> Result<QuadratureReport>
where
    F: Fn(f64) -> Result<f64>,
{
    jackson_bilateral(f, kernel_anchor(p), p, j_max, tol)
}

/// `c = (1-q)^{-1/alpha}`: `(1-q) c^alpha = 1`.
pub fn kernel_anchor(p: &QParams) -> f64 {
    (1.0 - p.q_f64()).powf(-1.0 / p.alpha_f64())
}

/// `int_0^1 f(x) d_{q,alpha} x = (1-q) sum_{j=0}^{J} Q^j f(q^j)`.
pub fn jackson_integral_0_1<F>(f: F, p: &QParams, j_max: usize, tol: f64) -> Result<QuadratureReport>
where
    F: Fn(f64) -> Result<f64>,
{
    check_args(j_max, tol)?;
    let (q, big_q) = (p.q_f64(), p.big_q_f64());
    let mut terms = Vec::with_capacity(j_max + 1);
    for j in 0..=j_max as i32 {
        let v = f(q.powi(j))?;
        terms.push(if v == 0.0 { 0.0 } else { (1.0 - q) * big_q.powi(j) * v });
    }
    let tail = tail_estimate(terms[j_max - 1], terms[j_max]);
    Ok(finish(terms, tail, tol))
}

/// `N(f)(u, s) = int_0^inf f(u t) / e_{q,alpha}(q s t) d_{q,alpha} t`.
///
/// `f` is not evaluated where the kernel vanishes.
pub fn natural_numeric<F>(f: F, u: f64, s: f64, p: &QParams, j_max: usize, tol: f64) -> Result<QuadratureReport>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(u > 0.0 && s > 0.0) {
        return Err(QError::Domain(format!("need u > 0 and s > 0, got u = {u}, s = {s}")));
    }
    let q = p.q_f64();
    let integrand = |t: f64| -> Result<f64> {
        let k = inv_e_kernel(q * s * t, p)?;
        if k == 0.0 {
            Ok(0.0)
        } else {
            Ok(f(u * t)? * k)
        }
    };
    jackson_bilateral(integrand, kernel_anchor(p) / s, p, j_max, tol)
}

/// [`natural_numeric`] of a time expression, evaluated atom by atom.
pub fn natural_numeric_expr(e: &TimeExpr, u: f64, s: f64, p: &QParams, j_max: usize, tol: f64) -> Result<QuadratureReport> {
    natural_numeric(|t| e.eval(t, p), u, s, p, j_max, tol)
}
