//! Linear constant-coefficient initial-value problems
//! `sum_{j=0}^{k} a_j (D^{q,alpha})^{k-j} f = b`, solved in the transform
//! domain.

use crate::alphaseries::{AlphaSeries, TimeExpr};
use crate::error::{QError, Result};
use crate::inverse::invert;
use crate::params::QParams;
use crate::poly::Poly;
use crate::qcalculus::dqa_series;
use crate::rational::RationalFn;
use crate::scalar::{Mode, Scalar};
use crate::transform::{natural_time_expr, TransformExpr};

#[derive(Debug, Clone, PartialEq)]
pub struct ODEProblem {
    /// `a_0..a_k`, leading coefficient first.
    pub coeffs: Vec<Scalar>,
    pub rhs: TimeExpr,
    /// `y_j = (D^j f)(0)` for `j < k`.
    pub init: Vec<Scalar>,
}

impl ODEProblem {
    pub fn new(coeffs: Vec<Scalar>, rhs: TimeExpr, init: Vec<Scalar>) -> Result<Self> {
        let prob = ODEProblem { coeffs, rhs, init };
        prob.validate()?;
        Ok(prob)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.coeffs.len() < 2 {
            return Err(QError::Domain("an equation of order >= 1 needs at least two coefficients".into()));
        }
        if self.coeffs[0].is_zero() {
            return Err(QError::Domain("leading coefficient a_0 must be nonzero".into()));
        }
        if self.init.len() != self.order() {
            return Err(QError::Domain(format!(
                "order {} needs {} initial values, got {}",
                self.order(),
                self.order(),
                self.init.len()
            )));
        }
        Ok(())
    }

    fn check(&self, p: &QParams) -> Result<()> {
        self.validate()?;
        for c in self.coeffs.iter().chain(&self.init) {
            p.check(c)?;
        }
        self.rhs.check(p)
    }
}

/// `sum_j a_j w^{k-j}`.
pub fn char_poly(prob: &ODEProblem) -> Poly {
    let mode = prob.coeffs[0].mode();
    let coeffs: Vec<Scalar> = prob.coeffs.iter().rev().cloned().collect();
    Poly::new(coeffs, mode)
}

/// `sum_j a_j sum_{i < k-j} w^{k-j-1-i} y_i`: the initial-value terms moved
/// to the right-hand side.
fn boundary_poly(prob: &ODEProblem, mode: Mode) -> Poly {
    let k = prob.order();
    let mut out = vec![Scalar::zero(mode); k];
    for (j, a) in prob.coeffs.iter().enumerate().take(k) {
        for (i, y) in prob.init.iter().enumerate().take(k - j) {
            let e = k - j - 1 - i;
            out[e] = &out[e] + &(a * y);
        }
    }
    Poly::new(out, mode)
}

/// `phi` of the solution's transform `Y^{-1} phi(w)`.
pub fn transformed_solution(prob: &ODEProblem, p: &QParams) -> Result<TransformExpr> {
    prob.check(p)?;
    let rho = natural_time_expr(&prob.rhs, p)?;
    if rho.has_tail() {
        return Err(QError::Unsupported(
            "right-hand sides with series tails cannot be solved in closed form".into(),
        ));
    }
    let chi = char_poly(prob);
    check_resonance(rho.rational.den(), &chi)?;
    let numer = &rho.rational + &RationalFn::from_poly(boundary_poly(prob, p.mode()));
    let phi = numer.checked_div(&RationalFn::from_poly(chi))?;
    Ok(TransformExpr::from_rational(phi))
}

/// Errors when the forcing term shares a nonzero pole with the
/// characteristic polynomial.
fn check_resonance(rhs_den: &Poly, chi: &Poly) -> Result<()> {
    let strip = |p: &Poly| p.shift_down(p.zero_multiplicity());
    let g = strip(rhs_den).gcd(&strip(chi));
    match g.degree() {
        Some(d) if d > 0 => {
            let shared = if d == 1 {
                format!("w = {}", -g.coeff(0))
            } else {
                format!("the roots of {g}")
            };
            Err(QError::UnsupportedMultiplicity(format!(
                "{shared} (resonance: the right-hand side shares this pole with the characteristic polynomial)"
            )))
        }
        _ => Ok(()),
    }
}

pub fn solve_ivp(prob: &ODEProblem, p: &QParams) -> Result<TimeExpr> {
    invert(&transformed_solution(prob, p)?, p)
}

/// `sum_j a_j D^{k-j} f - b` on the series of `sol`, truncated at `order`.
/// Coefficients below `order - k` are exact.
pub fn residual_series(prob: &ODEProblem, sol: &TimeExpr, order: usize, p: &QParams) -> Result<AlphaSeries> {
    prob.check(p)?;
    let k = prob.order();
    let f = sol.to_series(order, p)?;
    let mut derivs = vec![f];
    for _ in 0..k {
        derivs.push(dqa_series(derivs.last().unwrap()));
    }
    let mut acc = prob.rhs.to_series(order, p)?.neg();
    for (j, a) in prob.coeffs.iter().enumerate() {
        acc = acc.add(&derivs[k - j].scale(a)?)?;
    }
    Ok(acc)
}

/// `(D^j f)(0)` for `j < k`: the `j`-th series coefficient times `[j alpha]!`.
pub fn initial_values(sol: &TimeExpr, k: usize, p: &QParams) -> Result<Vec<Scalar>> {
    let mut f = sol.to_series(k.max(1), p)?;
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(f.coeff(0));
        f = dqa_series(&f);
    }
    Ok(out)
}
