//! The conformable q-derivative `D^{q,alpha}` and q-integral `I^{q,alpha}`,
//! the shifted-power basis `(x^alpha - a)^n_{q^alpha}`, and the generalized
//! q,alpha-Taylor expansion about `x^alpha = a`.
//!
//! Points are addressed by `X = x^alpha` wherever exactness matters: the
//! operator only ever sees `x^alpha` and `(qx)^alpha = Q x^alpha`, so a
//! rational `X` keeps the whole computation in the rationals, and a negative
//! center `a` is legal.

use serde::{Deserialize, Serialize};

use crate::alphaseries::AlphaSeries;
use crate::error::{QError, Result};
use crate::params::QParams;
use crate::qcore::{q_alpha, q_alpha_factorial};
use crate::scalar::Scalar;

/// Deepest iterated pointwise derivative.
pub const MAX_POINTWISE_DEPTH: usize = 16;

/// `D^{q,alpha}` on coefficients: `c_n t^{alpha n} -> [n alpha] c_n t^{alpha(n-1)}`.
pub fn dqa_series(f: &AlphaSeries) -> AlphaSeries {
    let p = f.params();
    if f.order() == 0 {
        return AlphaSeries::zero(0, p);
    }
    let coeffs = (1..=f.order())
        .map(|n| q_alpha(n as i64, p) * f.coeff(n))
        .collect();
    AlphaSeries::from_parts(coeffs, p)
}

/// `(D^{q,alpha})^n f`.
pub fn dqa_series_n(f: &AlphaSeries, n: usize) -> AlphaSeries {
    (0..n).fold(f.clone(), |acc, _| dqa_series(&acc))
}

/// `I^{q,alpha}` with zero constant: `c_n t^{alpha n} -> c_n t^{alpha(n+1)} / [(n+1) alpha]`.
pub fn iqa_series(f: &AlphaSeries) -> AlphaSeries {
    let p = f.params();
    let mut coeffs = Vec::with_capacity(f.order() + 2);
    coeffs.push(p.zero());
    for n in 0..=f.order() {
        coeffs.push(f.coeff(n) / q_alpha(n as i64 + 1, p));
    }
    AlphaSeries::from_parts(coeffs, p)
}

/// The defining q-difference at the point with `x^alpha = x_alpha`, for an
/// evaluator that takes `x^alpha`:
/// `[alpha] (f(X) - f(QX)) / (X (1 - Q))`.
pub fn dqa_pointwise<F>(f: F, x_alpha: &Scalar, p: &QParams) -> Result<Scalar>
where
    F: Fn(&Scalar) -> Result<Scalar>,
{
    p.check(x_alpha)?;
    if x_alpha.is_zero() {
        return Err(QError::Singular(
            "D^{q,alpha} divides by x^alpha and is undefined at x = 0".into(),
        ));
    }
    let fx = f(x_alpha)?;
    let fqx = f(&(x_alpha * p.big_q()))?;
    let denom = x_alpha * &(p.one() - p.big_q());
    Ok(q_alpha(1, p) * (fx - fqx) / denom)
}

/// The defining q-difference for a real evaluator at real `x > 0`.
pub fn dqa_pointwise_real<F>(f: F, x: f64, p: &QParams) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    dqa_pointwise_real_n(f, x, 1, p)
}

/// `(D^{q,alpha})^n f(x)` from the values of `f` on `x, qx, ..., q^n x`.
pub fn dqa_pointwise_real_n<F>(f: F, x: f64, n: usize, p: &QParams) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(x > 0.0) {
        return Err(QError::Singular(format!(
            "D^{{q,alpha}} needs x > 0, got {x}"
        )));
    }
    if n > MAX_POINTWISE_DEPTH {
        return Err(QError::Domain(format!(
            "pointwise derivative depth {n} exceeds {MAX_POINTWISE_DEPTH}"
        )));
    }
    let (q, alpha, big_q) = (p.q_f64(), p.alpha_f64(), p.big_q_f64());
    let qa = (1.0 - big_q) / (1.0 - q);
    let grid: Vec<f64> = (0..=n).map(|k| x * q.powi(k as i32)).collect();
    let mut vals: Vec<f64> = grid.iter().map(|&g| f(g)).collect();
    for level in 0..n {
        vals = (0..n - level)
            .map(|k| qa * (vals[k] - vals[k + 1]) / (grid[k].powf(alpha) * (1.0 - big_q)))
            .collect();
    }
    Ok(vals[0])
}

/// `prod_{j<n} (a + Q^j b)` for series `a`, `b`.
pub fn shifted_power_series(a: &AlphaSeries, b: &AlphaSeries, n: u32) -> Result<AlphaSeries> {
    let p = a.params();
    let order = a.order().min(b.order());
    let mut acc = AlphaSeries::monomial(p.one(), 0, order, p)?;
    let mut qj = p.one();
    for _ in 0..n {
        acc = acc.mul(&a.add(&b.scale(&qj)?)?)?;
        qj = qj * p.big_q();
    }
    Ok(acc)
}

/// `(x^alpha - a)^n_{q^alpha} = prod_{j<n} (x^alpha - Q^j a)` expanded in
/// alpha-monomials, exact through order `max(n, DEFAULT_ORDER)`.
pub fn shifted_basis_expand(a: &Scalar, n: u32, p: &QParams) -> Result<AlphaSeries> {
    p.check(a)?;
    let order = crate::alphaseries::DEFAULT_ORDER.max(n as usize);
    let x = AlphaSeries::monomial(p.one(), 1, order, p)?;
    let minus_a = AlphaSeries::monomial(-a, 0, order, p)?;
    shifted_power_series(&x, &minus_a, n)
}

/// Coefficients `d_n = (D^n f)(a^{1/alpha})` of the expansion
/// `f = sum d_n (x^alpha - a)^n_{q^alpha} / [n alpha]!`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftedBasisExpansion {
    /// Value of `x^alpha` at the expansion point.
    pub center: Scalar,
    pub terms: Vec<Scalar>,
}

impl ShiftedBasisExpansion {
    /// Rebuilds the monomial series from the basis coefficients.
    pub fn reconstruct(&self, p: &QParams) -> Result<AlphaSeries> {
        let order = crate::alphaseries::DEFAULT_ORDER.max(self.terms.len().saturating_sub(1));
        let mut acc = AlphaSeries::zero(order, p);
        for (n, d) in self.terms.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            let basis = shifted_basis_expand(&self.center, n as u32, p)?.truncate(order);
            let c = d / &q_alpha_factorial(n as u32, p);
            acc = acc.add(&basis.scale(&c)?)?;
        }
        Ok(acc)
    }
}

/// Generalized q,alpha-Taylor expansion of `f` about `x^alpha = a`.
pub fn taylor_qa(f: &AlphaSeries, a: &Scalar, p: &QParams) -> Result<ShiftedBasisExpansion> {
    p.check(a)?;
    if f.params() != p {
        return Err(QError::ParamMismatch);
    }
    let mut terms = Vec::with_capacity(f.order() + 1);
    let mut g = f.clone();
    for _ in 0..=f.order() {
        terms.push(g.eval_at_x_alpha(a)?);
        g = dqa_series(&g);
    }
    Ok(ShiftedBasisExpansion {
        center: a.clone(),
        terms,
    })
}
