//! Partial fractions over `w` and inversion back to time-domain atoms.
//!
//! Supported denominators factor over the rationals as
//! `w^k * prod (w - r_i) * prod (w^2 + d_j)` with distinct nonzero `r_i` and
//! distinct `d_j > 0`. Everything else is rejected.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::alphaseries::{TimeAtom, TimeExpr};
use crate::error::{QError, Result};
use crate::params::QParams;
use crate::poly::Poly;
use crate::qcore::q_alpha_factorial;
use crate::rational::RationalFn;
use crate::scalar::{Mode, Scalar};
use crate::transform::TransformExpr;

#[derive(Debug, Clone, PartialEq)]
pub enum PartialFractionTerm {
    /// `c / w^k`
    PoleAtZero { k: usize, c: Scalar },
    /// `c / (w - r)`, `r != 0`
    SimplePole { r: Scalar, c: Scalar },
    /// `(b w + c) / (w^2 + d)`, `d > 0`
    Quadratic { d: Scalar, b: Scalar, c: Scalar },
}

impl PartialFractionTerm {
    pub fn to_rational(&self) -> RationalFn {
        let mode = Mode::Exact;
        match self {
            PartialFractionTerm::PoleAtZero { k, c } => RationalFn::inverse_power(c.clone(), *k),
            PartialFractionTerm::SimplePole { r, c } => {
                RationalFn::new(Poly::constant(c.clone()), Poly::linear(r)).unwrap()
            }
            PartialFractionTerm::Quadratic { d, b, c } => RationalFn::new(
                Poly::new(vec![c.clone(), b.clone()], mode),
                quadratic(d),
            )
            .unwrap(),
        }
    }
}

fn quadratic(d: &Scalar) -> Poly {
    let mode = d.mode();
    Poly::new(vec![d.clone(), Scalar::zero(mode), Scalar::one(mode)], mode)
}

/// Sum of the terms over a common denominator.
pub fn recombine(terms: &[PartialFractionTerm]) -> RationalFn {
    terms
        .iter()
        .fold(RationalFn::zero(Mode::Exact), |acc, t| &acc + &t.to_rational())
}

fn exact(x: &BigRational) -> Scalar {
    Scalar::Exact(x.clone())
}

/// Integer coefficients proportional to `p`.
fn integer_coeffs(p: &Poly) -> Vec<BigInt> {
    let rats: Vec<BigRational> = p.coeffs().iter().map(|c| c.as_rational().unwrap().clone()).collect();
    let lcm = rats.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    rats.iter().map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer()).collect()
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Positive divisors of `n != 0`. Prime factors above [`TRIAL_LIMIT`] are
/// treated as prime.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut f = 2u64;
    while f <= TRIAL_LIMIT && BigInt::from(f) * BigInt::from(f) <= n {
        let bf = BigInt::from(f);
        let mut e = 0;
        while (&n % &bf).is_zero() {
            n /= &bf;
            e += 1;
        }
        if e > 0 {
            factors.push((bf, e));
        }
        f += if f == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        factors.push((n, 1));
    }
    let mut out = vec![BigInt::one()];
    for (prime, e) in factors {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut pk = d.clone();
            for _ in 0..=e {
                next.push(pk.clone());
                pk *= &prime;
            }
        }
        out = next;
    }
    out
}

/// Distinct rational roots of `p` (which must not vanish at 0), by the
/// rational root theorem.
fn rational_roots(p: &Poly) -> Vec<BigRational> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let a = integer_coeffs(p);
    let (a0, an) = (&a[0], a.last().unwrap());
    debug_assert!(!a0.is_zero());
    let mut roots = Vec::new();
    for num in divisors(a0) {
        for den in divisors(an) {
            for sign in [1, -1] {
                let r = BigRational::new(BigInt::from(sign) * &num, den.clone());
                if roots.contains(&r) {
                    continue;
                }
                if p.eval(&exact(&r)).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Exact decomposition of a proper rational function.
pub fn partial_fractions(phi: &RationalFn) -> Result<Vec<PartialFractionTerm>> {
    if phi.mode() == Mode::Float {
        return Err(QError::Inexpressible {
            op: "partial-fraction decomposition".into(),
            mode: Mode::Float,
        });
    }
    if phi.is_zero() {
        return Ok(Vec::new());
    }
    if !phi.is_proper() {
        return Err(QError::Improper {
            num: phi.num().degree().unwrap_or(0),
            den: phi.den().degree().unwrap_or(0),
        });
    }
    let num = phi.num();
    let den = phi.den();
    let k0 = den.zero_multiplicity();
    let m = den.shift_down(k0);

    // linear factors
    let mut rest = m.clone();
    let mut linear = Vec::new();
    for r in rational_roots(&m) {
        let f = Poly::linear(&exact(&r));
        rest = rest.div_exact(&f)?;
        if rest.eval(&exact(&r)).is_zero() {
            return Err(QError::UnsupportedMultiplicity(exact(&r).to_string()));
        }
        linear.push(r);
    }

    // the remainder must be a product of w^2 + d
    let mut quadratics = Vec::new();
    if rest.degree().unwrap_or(0) > 0 {
        let coeffs = rest.coeffs();
        if coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return Err(QError::UnsupportedFactor(rest.to_string()));
        }
        let even: Vec<Scalar> = coeffs.iter().step_by(2).cloned().collect();
        let mut s = Poly::new(even, Mode::Exact);
        for z in rational_roots(&s) {
            let f = Poly::linear(&exact(&z));
            s = s.div_exact(&f)?;
            if !z.is_negative() {
                let factor = Poly::linear(&exact(&z)).substitute_square();
                return Err(QError::UnsupportedFactor(factor.to_string()));
            }
            if s.eval(&exact(&z)).is_zero() {
                return Err(QError::UnsupportedMultiplicity(format!(
                    "±i·sqrt({})",
                    exact(&-z.clone())
                )));
            }
            quadratics.push(-z);
        }
        if s.degree().unwrap_or(0) > 0 {
            return Err(QError::UnsupportedFactor(s.substitute_square().to_string()));
        }
    }

    let mut terms = Vec::new();

    // principal part at w = 0: Laurent coefficients of num/m
    if k0 > 0 {
        let e = power_series_quotient(num, &m, k0);
        for k in 1..=k0 {
            let c = e[k0 - k].clone();
            if !c.is_zero() {
                terms.push(PartialFractionTerm::PoleAtZero { k, c });
            }
        }
    }

    for r in &linear {
        let rs = exact(r);
        let cof = den.div_exact(&Poly::linear(&rs))?;
        let c = num.eval(&rs) / cof.eval(&rs);
        if !c.is_zero() {
            terms.push(PartialFractionTerm::SimplePole { r: rs, c });
        }
    }

    for d in &quadratics {
        let ds = exact(d);
        let q = quadratic(&ds);
        let cof = den.div_exact(&q)?;
        let (n0, n1) = reduce_mod_quadratic(num, &q)?;
        let (p0, p1) = reduce_mod_quadratic(&cof, &q)?;
        let det = &p0 * &p0 + &ds * &p1 * &p1;
        let b = (&n1 * &p0 - &p1 * &n0) / &det;
        let c = (&p0 * &n0 + &ds * &p1 * &n1) / &det;
        if !b.is_zero() || !c.is_zero() {
            terms.push(PartialFractionTerm::Quadratic { d: ds, b, c });
        }
    }

    debug_assert!(recombine(&terms) == *phi);
    Ok(terms)
}

/// First `n` coefficients of `a / b` as a power series at 0, `b(0) != 0`.
fn power_series_quotient(a: &Poly, b: &Poly, n: usize) -> Vec<Scalar> {
    let b0 = b.coeff(0);
    let mut out: Vec<Scalar> = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = a.coeff(i);
        for (j, e) in out.iter().enumerate() {
            acc = acc - b.coeff(i - j) * e;
        }
        out.push(acc / &b0);
    }
    out
}

/// `p mod (w^2 + d)` as `(p0, p1)` with remainder `p1 w + p0`.
fn reduce_mod_quadratic(p: &Poly, q: &Poly) -> Result<(Scalar, Scalar)> {
    let (_, r) = p.div_rem(q)?;
    Ok((r.coeff(0), r.coeff(1)))
}

/// Inversion result. `inexact` lists the `d` whose square root had to be
/// taken in floating point; the affected terms are in float mode.
#[derive(Debug, Clone, PartialEq)]
pub struct Inversion {
    pub expr: TimeExpr,
    pub inexact: Vec<Scalar>,
}

pub fn invert(r: &TransformExpr, p: &QParams) -> Result<TimeExpr> {
    invert_detailed(r, p).map(|inv| inv.expr)
}

pub fn invert_detailed(r: &TransformExpr, p: &QParams) -> Result<Inversion> {
    if r.m != 1 {
        return Err(QError::NonInvertible(format!(
            "homogeneity {} is not the transform of a function",
            r.m
        )));
    }
    if r.has_tail() {
        return Err(QError::Unsupported(
            "series tails have no partial-fraction inverse".into(),
        ));
    }
    if r.mode() != p.mode() {
        return Err(QError::ModeMismatch {
            expected: p.mode(),
            found: r.mode(),
        });
    }
    let mut pieces: Vec<(Scalar, TimeAtom)> = Vec::new();
    let mut inexact = Vec::new();
    for t in partial_fractions(&r.rational)? {
        match t {
            PartialFractionTerm::PoleAtZero { k, c } => {
                let n = (k - 1) as u32;
                pieces.push((c / q_alpha_factorial(n, p), TimeAtom::Power(n)));
            }
            PartialFractionTerm::SimplePole { r, c } => pieces.push((c, TimeAtom::Exp(r))),
            PartialFractionTerm::Quadratic { d, b, c } => match d.sqrt_exact() {
                Some(root) => {
                    pieces.push((b, TimeAtom::Cos(root.clone())));
                    pieces.push((c / &root, TimeAtom::Sin(root)));
                }
                None => {
                    let root = Scalar::Float(d.to_f64().sqrt());
                    pieces.push((b.to_float(), TimeAtom::Cos(root.clone())));
                    pieces.push((c.to_float() / &root, TimeAtom::Sin(root)));
                    inexact.push(d);
                }
            },
        }
    }
    Ok(Inversion {
        expr: TimeExpr::from_terms(pieces),
        inexact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphaseries::TimeAtom;
    use crate::qcore::q_alpha;
    use crate::scalar::ratio;
    use crate::transform::{natural_atom, natural_time_expr};

    fn params() -> QParams {
        QParams::exact(ratio(1, 4), ratio(1, 2), Some(ratio(1, 2))).unwrap()
    }

    fn ex(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d, Mode::Exact)
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFn {
        RationalFn::new(Poly::from_ints(num, Mode::Exact), Poly::from_ints(den, Mode::Exact)).unwrap()
    }

    #[test]
    fn three_linear_factors() {
        // (w^2 + w - 1) / (w (w^2 + w - 6))
        let phi = rf(&[-1, 1, 1], &[0, -6, 1, 1]);
        let terms = partial_fractions(&phi).unwrap();
        assert_eq!(
            terms,
            vec![
                PartialFractionTerm::PoleAtZero { k: 1, c: ex(1, 6) },
                PartialFractionTerm::SimplePole { r: ex(-3, 1), c: ex(1, 3) },
                PartialFractionTerm::SimplePole { r: ex(2, 1), c: ex(1, 2) },
            ]
        );
        assert_eq!(recombine(&terms), phi);
    }

    #[test]
    fn linear_and_quadratic_factor() {
        // (6w^2 + 50) / ((w + 3)(w^2 + 4))
        let den = &Poly::from_ints(&[3, 1], Mode::Exact) * &Poly::from_ints(&[4, 0, 1], Mode::Exact);
        let phi = RationalFn::new(Poly::from_ints(&[50, 0, 6], Mode::Exact), den).unwrap();
        let terms = partial_fractions(&phi).unwrap();
        assert_eq!(
            terms,
            vec![
                PartialFractionTerm::SimplePole { r: ex(-3, 1), c: ex(8, 1) },
                PartialFractionTerm::Quadratic { d: ex(4, 1), b: ex(-2, 1), c: ex(6, 1) },
            ]
        );
    }

    #[test]
    fn trivial_and_zero() {
        let phi = rf(&[1], &[0, 1]);
        assert_eq!(
            partial_fractions(&phi).unwrap(),
            vec![PartialFractionTerm::PoleAtZero { k: 1, c: ex(1, 1) }]
        );
        assert!(partial_fractions(&RationalFn::zero(Mode::Exact)).unwrap().is_empty());
    }

    #[test]
    fn higher_pole_at_zero_with_rational_roots() {
        // (w + 5) / (w^3 (2w - 1)(3w + 2))
        let den = &Poly::from_ints(&[0, 0, 0, 1], Mode::Exact)
            * &(&Poly::from_ints(&[-1, 2], Mode::Exact) * &Poly::from_ints(&[2, 3], Mode::Exact));
        let phi = RationalFn::new(Poly::from_ints(&[5, 1], Mode::Exact), den).unwrap();
        let terms = partial_fractions(&phi).unwrap();
        assert_eq!(recombine(&terms), phi);
        assert!(terms.iter().any(|t| matches!(t, PartialFractionTerm::SimplePole { r, .. } if *r == ex(1, 2))));
        assert!(terms.iter().any(|t| matches!(t, PartialFractionTerm::SimplePole { r, .. } if *r == ex(-2, 3))));
    }

    #[test]
    fn several_quadratics() {
        // 1 / ((w^2 + 1)(w^2 + 9/4)(w - 1))
        let den = &(&Poly::from_ints(&[1, 0, 1], Mode::Exact)
            * &Poly::new(vec![ex(9, 4), ex(0, 1), ex(1, 1)], Mode::Exact))
            * &Poly::from_ints(&[-1, 1], Mode::Exact);
        let phi = RationalFn::new(Poly::from_ints(&[1], Mode::Exact), den).unwrap();
        let terms = partial_fractions(&phi).unwrap();
        assert_eq!(terms.len(), 3);
        assert_eq!(recombine(&terms), phi);
    }

    #[test]
    fn rejections() {
        assert!(matches!(
            partial_fractions(&rf(&[1], &[1, -2, 1])),
            Err(QError::UnsupportedMultiplicity(_))
        ));
        assert!(matches!(
            partial_fractions(&rf(&[1], &[-2, 0, 1])),
            Err(QError::UnsupportedFactor(_))
        ));
        assert!(matches!(
            partial_fractions(&rf(&[1], &[1, 1, 1])),
            Err(QError::UnsupportedFactor(_))
        ));
        assert!(matches!(
            partial_fractions(&rf(&[1], &[4, 0, 4, 0, 1])),
            Err(QError::UnsupportedMultiplicity(_))
        ));
        assert!(matches!(
            partial_fractions(&rf(&[0, 0, 1], &[1, 1])),
            Err(QError::Improper { num: 2, den: 1 })
        ));
    }

    #[test]
    fn inversions() {
        let p = params();
        let one = natural_atom(&TimeAtom::Power(0), &p).unwrap();
        assert_eq!(invert(&one, &p).unwrap(), TimeExpr::single(ex(1, 1), TimeAtom::Power(0)));

        let ex1 = TransformExpr::from_rational(rf(&[-1, 1, 1], &[0, -6, 1, 1]));
        assert_eq!(
            invert(&ex1, &p).unwrap(),
            TimeExpr::from_terms([
                (ex(1, 6), TimeAtom::Power(0)),
                (ex(1, 3), TimeAtom::Exp(ex(-3, 1))),
                (ex(1, 2), TimeAtom::Exp(ex(2, 1))),
            ])
        );

        let t2 = TransformExpr::from_rational(RationalFn::inverse_power(ex(5, 1), 3));
        let expected = ex(5, 1) / (q_alpha(1, &p) * q_alpha(2, &p));
        assert_eq!(invert(&t2, &p).unwrap(), TimeExpr::single(expected, TimeAtom::Power(2)));
    }

    #[test]
    fn inexact_square_root_goes_float() {
        let p = params();
        let r = TransformExpr::from_rational(rf(&[1, 1], &[2, 0, 1]));
        let inv = invert_detailed(&r, &p).unwrap();
        assert_eq!(inv.inexact, vec![ex(2, 1)]);
        let root = Scalar::Float(2f64.sqrt());
        assert_eq!(inv.expr.coefficient_of(&TimeAtom::Cos(root.clone())), Some(&Scalar::Float(1.0)));
        let s = inv.expr.coefficient_of(&TimeAtom::Sin(root)).unwrap().to_f64();
        assert!((s - 1.0 / 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn non_invertible_forms() {
        let p = params();
        let r = TransformExpr::from_rational(rf(&[1], &[0, 1])).mul_y_power(1);
        assert!(matches!(invert(&r, &p), Err(QError::NonInvertible(_))));
        let cap = natural_atom(&TimeAtom::CapExp(ex(1, 1)), &p).unwrap();
        assert!(matches!(invert(&cap, &p), Err(QError::Unsupported(_))));
    }

    #[test]
    fn round_trip_through_transform() {
        let p = params();
        let e = TimeExpr::from_terms([
            (ex(2, 1), TimeAtom::Power(0)),
            (ex(-1, 3), TimeAtom::Power(3)),
            (ex(4, 1), TimeAtom::Exp(ex(-5, 2))),
            (ex(1, 7), TimeAtom::Exp(ex(3, 1))),
            (ex(3, 1), TimeAtom::Cos(ex(2, 3))),
            (ex(-6, 1), TimeAtom::Sin(ex(2, 3))),
            (ex(1, 1), TimeAtom::Sin(ex(5, 1))),
        ]);
        let r = natural_time_expr(&e, &p).unwrap();
        assert_eq!(invert(&r, &p).unwrap(), e);
    }
}
