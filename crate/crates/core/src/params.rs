use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{QError, Result};
use crate::scalar::{exact_root, Mode, Scalar};

/// Tolerance used to check that a supplied `Q` really equals `q^alpha`.
pub const Q_CONSISTENCY_TOL: f64 = 1e-12;

/// Deformation parameters `q`, `alpha` and the derived base `Q = q^alpha`.
///
/// Cloning is cheap; the values live behind an `Arc`.
#[derive(Clone)]
pub struct QParams(Arc<Inner>);

struct Inner {
    q: Scalar,
    alpha: Scalar,
    big_q: Scalar,
    one_minus_q: Scalar,
    mode: Mode,
}

impl QParams {
    /// Exact-mode parameters. When `big_q` is `None` the constructor tries to
    /// take the rational root `q^alpha` itself.
    pub fn exact(q: BigRational, alpha: BigRational, big_q: Option<BigRational>) -> Result<Self> {
        if !(q.is_positive() && q < BigRational::one()) {
            return Err(QError::InvalidParams(format!("q must lie in (0, 1), got {q}")));
        }
        if !alpha.is_positive() {
            return Err(QError::InvalidParams(format!("alpha must be positive, got {alpha}")));
        }
        let big_q = match big_q {
            Some(v) => v,
            None => rational_power(&q, &alpha).ok_or_else(|| {
                QError::InvalidParams(format!(
                    "q^alpha = ({q})^({alpha}) is not rational; supply Q explicitly or use float mode"
                ))
            })?,
        };
        let expected = q.to_f64().unwrap().powf(alpha.to_f64().unwrap());
        let supplied = big_q.to_f64().unwrap_or(f64::NAN);
        if !((expected - supplied).abs() <= Q_CONSISTENCY_TOL) {
            return Err(QError::InvalidParams(format!(
                "Q = {big_q} is inconsistent with q^alpha = {expected}"
            )));
        }
        let one_minus_q = Scalar::Exact(BigRational::one() - &q);
        Ok(QParams(Arc::new(Inner {
            q: Scalar::Exact(q),
            alpha: Scalar::Exact(alpha),
            big_q: Scalar::Exact(big_q),
            one_minus_q,
            mode: Mode::Exact,
        })))
    }

    pub fn float(q: f64, alpha: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(QError::InvalidParams(format!("q must lie in (0, 1), got {q}")));
        }
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(QError::InvalidParams(format!("alpha must be positive, got {alpha}")));
        }
        Ok(QParams(Arc::new(Inner {
            q: Scalar::Float(q),
            alpha: Scalar::Float(alpha),
            big_q: Scalar::Float(q.powf(alpha)),
            one_minus_q: Scalar::Float(1.0 - q),
            mode: Mode::Float,
        })))
    }

    pub fn mode(&self) -> Mode {
        self.0.mode
    }

    pub fn q(&self) -> &Scalar {
        &self.0.q
    }

    pub fn alpha(&self) -> &Scalar {
        &self.0.alpha
    }

    /// `Q = q^alpha`.
    pub fn big_q(&self) -> &Scalar {
        &self.0.big_q
    }

    pub fn one_minus_q(&self) -> &Scalar {
        &self.0.one_minus_q
    }

    pub fn q_f64(&self) -> f64 {
        self.0.q.to_f64()
    }

    pub fn alpha_f64(&self) -> f64 {
        self.0.alpha.to_f64()
    }

    pub fn big_q_f64(&self) -> f64 {
        self.0.big_q.to_f64()
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(self.mode())
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(self.mode())
    }

    pub fn int(&self, n: i64) -> Scalar {
        Scalar::from_int(n, self.mode())
    }

    pub fn ratio(&self, n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d, self.mode())
    }

    /// `Q^k`, any integer `k`.
    pub fn big_q_pow(&self, k: i64) -> Scalar {
        self.0.big_q.powi(k)
    }

    /// `q^k`, any integer `k`.
    pub fn q_pow(&self, k: i64) -> Scalar {
        self.0.q.powi(k)
    }

    /// Rejects scalars whose mode differs from the parameters' mode.
    pub fn check(&self, s: &Scalar) -> Result<()> {
        s.check_mode(self.mode())
    }

    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        Scalar::parse(s, self.mode())
    }
}

impl PartialEq for QParams {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.mode == other.0.mode
                && self.0.q == other.0.q
                && self.0.alpha == other.0.alpha
                && self.0.big_q == other.0.big_q)
    }
}

impl fmt::Debug for QParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QParams")
            .field("q", &self.0.q.to_string())
            .field("alpha", &self.0.alpha.to_string())
            .field("Q", &self.0.big_q.to_string())
            .field("mode", &self.0.mode)
            .finish()
    }
}

/// `base^exp` for rational `exp = a/b`, when the result is rational.
fn rational_power(base: &BigRational, exp: &BigRational) -> Option<BigRational> {
    let a = exp.numer().to_i32()?;
    let b = exp.denom().to_u32()?;
    let n = exact_root(base.numer(), b)?;
    let d = exact_root(base.denom(), b)?;
    let root = BigRational::new(n, d);
    if root.is_zero() {
        return None;
    }
    Some(num_traits::pow::Pow::pow(&root, a))
}
