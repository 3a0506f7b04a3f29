//! Series for `e_{q,alpha}(at)`, `E_{q,alpha}(at)`, `c_{q,alpha}(at)` and
//! `s_{q,alpha}(at)`, parametrized by `beta = a^alpha`.

use super::AlphaSeries;
use crate::error::Result;
use crate::params::QParams;
use crate::qcore::q_alpha;
use crate::scalar::Scalar;

/// `beta^n / [n alpha]!` for n = 0..=order.
fn exp_coeffs(beta: &Scalar, order: usize, p: &QParams) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(order + 1);
    let mut c = p.one();
    out.push(c.clone());
    for n in 1..=order {
        c = c * beta / q_alpha(n as i64, p);
        out.push(c.clone());
    }
    out
}

/// `e_{q,alpha}(at) = sum beta^n t^{alpha n} / [n alpha]!`.
pub fn make_exp_series(beta: &Scalar, order: usize, p: &QParams) -> Result<AlphaSeries> {
    p.check(beta)?;
    Ok(AlphaSeries::from_parts(exp_coeffs(beta, order, p), p))
}

/// `E_{q,alpha}(at) = sum Q^{n(n-1)/2} beta^n t^{alpha n} / [n alpha]!`.
pub fn make_cap_exp_series(beta: &Scalar, order: usize, p: &QParams) -> Result<AlphaSeries> {
    p.check(beta)?;
    let mut coeffs = exp_coeffs(beta, order, p);
    let mut weight = p.one();
    for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
        // Q^{n(n-1)/2} = Q^{(n-1)(n-2)/2} * Q^{n-1}
        weight = weight * p.big_q_pow(n as i64 - 1);
        *c = &*c * &weight;
    }
    Ok(AlphaSeries::from_parts(coeffs, p))
}

/// `c_{q,alpha}(at)`: even coefficients `(-1)^k beta^{2k} / [2k alpha]!`.
pub fn make_cos_series(beta: &Scalar, order: usize, p: &QParams) -> Result<AlphaSeries> {
    p.check(beta)?;
    let coeffs = exp_coeffs(beta, order, p)
        .into_iter()
        .enumerate()
        .map(|(n, c)| match n % 4 {
            0 => c,
            2 => -c,
            _ => p.zero(),
        })
        .collect();
    Ok(AlphaSeries::from_parts(coeffs, p))
}

/// `s_{q,alpha}(at)`: odd coefficients `(-1)^k beta^{2k+1} / [(2k+1) alpha]!`.
pub fn make_sin_series(beta: &Scalar, order: usize, p: &QParams) -> Result<AlphaSeries> {
    p.check(beta)?;
    let coeffs = exp_coeffs(beta, order, p)
        .into_iter()
        .enumerate()
        .map(|(n, c)| match n % 4 {
            1 => c,
            3 => -c,
            _ => p.zero(),
        })
        .collect();
    Ok(AlphaSeries::from_parts(coeffs, p))
}
