//! Product forms. `1/e_{q,alpha}(x) = ((1-q) x^alpha; Q)_inf` is entire in
//! `x^alpha`, so it is the evaluator of choice for the transform kernel,
//! which the Jackson grid samples at arbitrarily large arguments.

use num_complex::Complex64;

use crate::error::{QError, Result};
use crate::params::QParams;

/// Factors are multiplied in until `(1-q) Q^J x^alpha` drops below this.
pub const KERNEL_EPS: f64 = 1e-14;

const MAX_FACTORS: usize = 100_000;

/// A factor within a few ulps of zero is an exact zero of the product.
fn snaps_to_zero(factor: f64, term: f64) -> bool {
    factor.abs() <= 16.0 * f64::EPSILON * term.abs().max(1.0)
}

/// `(z; Q)_inf = prod_{j>=0} (1 - z Q^j)`, for `0 < Q < 1`.
pub fn q_pochhammer_inf(z: f64, big_q: f64) -> f64 {
    let mut acc = 1.0;
    let mut term = z;
    for _ in 0..MAX_FACTORS {
        if term.abs() < KERNEL_EPS * 1e-3 {
            break;
        }
        let factor = 1.0 - term;
        if snaps_to_zero(factor, term) {
            return 0.0;
        }
        acc *= factor;
        term *= big_q;
    }
    acc
}

fn q_pochhammer_inf_complex(z: Complex64, big_q: f64) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    let mut term = z;
    for _ in 0..MAX_FACTORS {
        if term.norm() < KERNEL_EPS * 1e-3 {
            break;
        }
        acc *= Complex64::new(1.0, 0.0) - term;
        term *= big_q;
    }
    acc
}

/// `1/e_{q,alpha}(x)` with an automatically chosen factor count.
pub fn inv_e_kernel(x: f64, p: &QParams) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(QError::Domain(format!("kernel needs x >= 0, got {x}")));
    }
    let z = (1.0 - p.q_f64()) * x.powf(p.alpha_f64());
    Ok(q_pochhammer_inf(z, p.big_q_f64()))
}

/// `prod_{j=0}^{J} (1 - (1-q) Q^j x^alpha)`; errors unless the last factor's
/// deformation is below [`KERNEL_EPS`].
pub fn inv_e_kernel_with(x: f64, p: &QParams, factors: usize) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(QError::Domain(format!("kernel needs x >= 0, got {x}")));
    }
    let big_q = p.big_q_f64();
    let z = (1.0 - p.q_f64()) * x.powf(p.alpha_f64());
    let last = z * big_q.powi(factors as i32);
    if last >= KERNEL_EPS {
        return Err(QError::NonConvergent {
            last_term: last,
            bound: KERNEL_EPS,
        });
    }
    let mut acc = 1.0;
    let mut term = z;
    for _ in 0..=factors {
        let factor = 1.0 - term;
        if snaps_to_zero(factor, term) {
            return Ok(0.0);
        }
        acc *= factor;
        term *= big_q;
    }
    Ok(acc)
}

/// `e_{q,alpha}(at)` with `a^alpha = beta`, as the reciprocal of the product.
pub fn exp_numeric(beta: f64, t: f64, p: &QParams) -> Result<f64> {
    let z = (1.0 - p.q_f64()) * beta * t.powf(p.alpha_f64());
    let d = q_pochhammer_inf(z, p.big_q_f64());
    if d == 0.0 {
        return Err(QError::Singular(format!("e_q,alpha has a pole at t = {t}")));
    }
    Ok(1.0 / d)
}

/// `E_{q,alpha}(at) = (-(1-q) beta t^alpha; Q)_inf`.
pub fn cap_exp_numeric(beta: f64, t: f64, p: &QParams) -> f64 {
    let z = (1.0 - p.q_f64()) * beta * t.powf(p.alpha_f64());
    q_pochhammer_inf(-z, p.big_q_f64())
}

/// `(c_{q,alpha}(at), s_{q,alpha}(at))` from `e_{q,alpha}(i^{1/alpha} a t)`.
pub fn trig_numeric(beta: f64, t: f64, p: &QParams) -> (f64, f64) {
    let z = Complex64::new(0.0, (1.0 - p.q_f64()) * beta * t.powf(p.alpha_f64()));
    let e = q_pochhammer_inf_complex(z, p.big_q_f64()).inv();
    (e.re, e.im)
}
