//! Truncated formal series `sum_n c_n t^{alpha n}` and the deformed special
//! functions built on them.

mod expr;
mod kernel;
mod special;

pub use expr::{AtomKind, TimeAtom, TimeExpr, Term};
pub use kernel::{
    cap_exp_numeric, exp_numeric, inv_e_kernel, inv_e_kernel_with, q_pochhammer_inf,
    trig_numeric, KERNEL_EPS,
};
pub use special::{make_cap_exp_series, make_cos_series, make_exp_series, make_sin_series};

use crate::error::{QError, Result};
use crate::params::QParams;
use crate::scalar::Scalar;

/// Truncation order used when callers do not pick one.
pub const DEFAULT_ORDER: usize = 32;

/// Default absolute/relative tail tolerance for [`series_eval`].
pub const DEFAULT_EVAL_TOL: f64 = 1e-12;

/// `sum_{n=0}^{order} c_n t^{alpha n}`; coefficients above `order` are unknown.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaSeries {
    coeffs: Vec<Scalar>,
    order: usize,
    params: QParams,
}

impl AlphaSeries {
    /// Pads `coeffs` with zeros up to `order`. Errors if there are more
    /// coefficients than the order admits or a coefficient has the wrong mode.
    pub fn new(mut coeffs: Vec<Scalar>, order: usize, params: &QParams) -> Result<Self> {
        if coeffs.len() > order + 1 {
            return Err(QError::Domain(format!(
                "{} coefficients do not fit order {order}",
                coeffs.len()
            )));
        }
        for c in &coeffs {
            params.check(c)?;
        }
        coeffs.resize(order + 1, params.zero());
        Ok(AlphaSeries {
            coeffs,
            order,
            params: params.clone(),
        })
    }

    /// An alpha-polynomial, exact through `max(DEFAULT_ORDER, degree)`.
    pub fn polynomial(coeffs: Vec<Scalar>, params: &QParams) -> Result<Self> {
        let order = DEFAULT_ORDER.max(coeffs.len().saturating_sub(1));
        Self::new(coeffs, order, params)
    }

    pub fn zero(order: usize, params: &QParams) -> Self {
        AlphaSeries {
            coeffs: vec![params.zero(); order + 1],
            order,
            params: params.clone(),
        }
    }

    /// `c * t^{alpha n}`.
    pub fn monomial(c: Scalar, n: usize, order: usize, params: &QParams) -> Result<Self> {
        params.check(&c)?;
        let mut s = Self::zero(order.max(n), params);
        s.coeffs[n] = c;
        Ok(s)
    }

    pub(crate) fn from_parts(coeffs: Vec<Scalar>, params: &QParams) -> Self {
        debug_assert!(!coeffs.is_empty());
        AlphaSeries {
            order: coeffs.len() - 1,
            coeffs,
            params: params.clone(),
        }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Scalar {
        self.coeffs.get(n).cloned().unwrap_or_else(|| self.params.zero())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn params(&self) -> &QParams {
        &self.params
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Index of the last nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        AlphaSeries::from_parts(self.coeffs[..=order].to_vec(), &self.params)
    }

    fn check_params(&self, other: &Self) -> Result<()> {
        if self.params == other.params {
            Ok(())
        } else {
            Err(QError::ParamMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_params(other)?;
        let order = self.order.min(other.order);
        let coeffs = (0..=order).map(|n| &self.coeffs[n] + &other.coeffs[n]).collect();
        Ok(AlphaSeries::from_parts(coeffs, &self.params))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        AlphaSeries::from_parts(coeffs, &self.params)
    }

    pub fn scale(&self, c: &Scalar) -> Result<Self> {
        self.params.check(c)?;
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        Ok(AlphaSeries::from_parts(coeffs, &self.params))
    }

    /// Cauchy product capped at the smaller order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_params(other)?;
        let order = self.order.min(other.order);
        let mut coeffs = vec![self.params.zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Ok(AlphaSeries::from_parts(coeffs, &self.params))
    }

    /// Multiplies by `t^{alpha n}`, raising the order by `n`.
    pub fn mul_t_power(&self, n: usize) -> Self {
        let mut coeffs = vec![self.params.zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        AlphaSeries::from_parts(coeffs, &self.params)
    }

    /// `f(qt)`: `c_n -> Q^n c_n`.
    pub fn shift_q(&self) -> Self {
        let mut qn = self.params.one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c * &qn);
            qn = qn * self.params.big_q();
        }
        AlphaSeries::from_parts(coeffs, &self.params)
    }

    /// Exact value after substituting `t^alpha := x_alpha`.
    pub fn eval_at_x_alpha(&self, x_alpha: &Scalar) -> Result<Scalar> {
        self.params.check(x_alpha)?;
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(self.params.zero(), |acc, c| acc * x_alpha + c))
    }
}

/// Result of [`series_eval`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    /// Magnitude of the last retained term.
    pub tail: f64,
}

/// Sums `f` at `t >= 0`. The tail estimate is the larger of the last two
/// terms (cos and sin series alternate with structural zeros); it is an
/// error when that exceeds `tol * |sum|`.
pub fn series_eval(f: &AlphaSeries, t: f64, tol: f64) -> Result<SeriesValue> {
    if !(t >= 0.0) {
        return Err(QError::Domain(format!("series_eval needs t >= 0, got {t}")));
    }
    let x = t.powf(f.params.alpha_f64());
    let mut sum = 0.0;
    let mut xn = 1.0;
    let mut terms = Vec::with_capacity(f.coeffs.len());
    for c in &f.coeffs {
        let term = c.to_f64() * xn;
        sum += term;
        terms.push(term.abs());
        xn *= x;
    }
    let n = terms.len();
    let last = terms[n.saturating_sub(2)..].iter().cloned().fold(0.0, f64::max);
    if !last.is_finite() || !sum.is_finite() || last > tol * sum.abs() {
        return Err(QError::NonConvergent {
            last_term: last,
            bound: tol * sum.abs(),
        });
    }
    Ok(SeriesValue { value: sum, tail: last })
}
