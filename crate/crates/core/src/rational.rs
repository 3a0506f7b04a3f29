//! Rational functions in `w`, kept in canonical form: coprime numerator and
//! denominator, monic denominator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{QError, Result};
use crate::poly::Poly;
use crate::scalar::{Mode, Scalar};

#[derive(Debug, Clone)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(QError::DivisionByZero);
        }
        let mode = num.mode();
        if num.is_zero() {
            return Ok(Self::zero(mode));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree().unwrap_or(0) > 0 {
            (num.div_rem(&g)?.0, den.div_rem(&g)?.0)
        } else {
            (num, den)
        };
        let lead = den.leading().unwrap().recip();
        Ok(RationalFn {
            num: num.scale(&lead),
            den: den.scale(&lead),
        })
    }

    pub fn zero(mode: Mode) -> Self {
        RationalFn {
            num: Poly::zero(mode),
            den: Poly::one(mode),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        let mode = p.mode();
        RationalFn {
            num: p,
            den: Poly::one(mode),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// `c / w^k`.
    pub fn inverse_power(c: Scalar, k: usize) -> Self {
        let mode = c.mode();
        Self::new(Poly::constant(c), Poly::monomial(Scalar::one(mode), k)).expect("nonzero")
    }

    /// `sum_j g_j w^{-(j+1)}`.
    pub fn from_laurent_tail(g: &[Scalar], mode: Mode) -> Self {
        if g.is_empty() {
            return Self::zero(mode);
        }
        let k = g.len() - 1;
        let num = Poly::new(g.iter().rev().cloned().collect(), mode);
        Self::new(num, Poly::monomial(Scalar::one(mode), k + 1)).expect("nonzero")
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn mode(&self) -> Mode {
        self.num.mode()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_proper(&self) -> bool {
        self.num.degree().is_none_or(|n| n < self.den.degree().unwrap())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.mode());
        }
        RationalFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        Self::new(&self.num * p, self.den.clone()).expect("nonzero")
    }

    /// `phi(c w)` for nonzero `c`.
    pub fn substitute_scale(&self, c: &Scalar) -> Self {
        Self::new(self.num.substitute_scale(c), self.den.substitute_scale(c)).expect("nonzero")
    }

    /// Divides by `w^k`.
    pub fn div_w_power(&self, k: usize) -> Self {
        Self::new(self.num.clone(), self.den.shift_up(k)).expect("nonzero")
    }

    /// Multiplies by `w^k`.
    pub fn mul_w_power(&self, k: usize) -> Self {
        Self::new(self.num.shift_up(k), self.den.clone()).expect("nonzero")
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn eval(&self, w: &Scalar) -> Result<Scalar> {
        let d = self.den.eval(w);
        if d.is_zero() {
            return Err(QError::Singular(format!("pole at w = {w}")));
        }
        Ok(self.num.eval(w) / d)
    }

    pub fn eval_f64(&self, w: f64) -> f64 {
        self.num.eval_f64(w) / self.den.eval_f64(w)
    }

    /// Splits off the polynomial part: `phi = poly + proper`.
    pub fn split_polynomial(&self) -> (Poly, RationalFn) {
        let (q, r) = self.num.div_rem(&self.den).expect("nonzero");
        (q, RationalFn::new(r, self.den.clone()).expect("nonzero"))
    }

    /// Coefficients `g_0..g_{k-1}` of the expansion at infinity of the proper
    /// part, `sum_j g_j w^{-(j+1)}`, together with the polynomial part.
    pub fn laurent_at_infinity(&self, k: usize) -> (Poly, Vec<Scalar>) {
        let mode = self.mode();
        let (poly, proper) = self.split_polynomial();
        let d = proper.den.degree().unwrap();
        let den_rev: Vec<Scalar> = (0..=d).map(|i| proper.den.coeff(d - i)).collect();
        // v^{d-1} r(1/v); empty when the proper part vanishes.
        let num_rev: Vec<Scalar> = if d == 0 {
            Vec::new()
        } else {
            (0..d).map(|i| proper.num.coeff(d - 1 - i)).collect()
        };
        let lead_inv = den_rev[0].recip();
        let mut g: Vec<Scalar> = Vec::with_capacity(k);
        for j in 0..k {
            let mut acc = num_rev.get(j).cloned().unwrap_or_else(|| Scalar::zero(mode));
            for i in 1..=j.min(d) {
                acc = acc - &den_rev[i] * &g[j - i];
            }
            g.push(acc * &lead_inv);
        }
        (poly, g)
    }
}

impl PartialEq for RationalFn {
    /// Cross-multiplication.
    fn eq(&self, other: &Self) -> bool {
        (&self.num * &other.den) == (&other.num * &self.den)
    }
}

impl Add for &RationalFn {
    type Output = RationalFn;

    fn add(self, rhs: &RationalFn) -> RationalFn {
        if self.den == rhs.den {
            return RationalFn::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        RationalFn::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero")
    }
}

impl Sub for &RationalFn {
    type Output = RationalFn;

    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self + &(-rhs)
    }
}

impl Mul for &RationalFn {
    type Output = RationalFn;

    fn mul(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }
}

impl Div for &RationalFn {
    type Output = RationalFn;

    /// Panics on division by the zero function; see [`RationalFn::checked_div`].
    fn div(self, rhs: &RationalFn) -> RationalFn {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;

    fn neg(self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c, Mode::Exact)
    }

    fn ex(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d, Mode::Exact)
    }

    #[test]
    fn canonical_form_cancels_and_normalizes() {
        let r = RationalFn::new(&p(&[-2, 1]) * &p(&[1, 1]), &p(&[-2, 1]) * &p(&[0, 3])).unwrap();
        assert_eq!(r.num(), &p(&[1, 1]).scale(&ex(1, 3)));
        assert_eq!(r.den(), &p(&[0, 1]));
        assert!(RationalFn::new(p(&[1]), Poly::zero(Mode::Exact)).is_err());
    }

    #[test]
    fn field_operations() {
        let a = RationalFn::new(p(&[1]), p(&[0, 1])).unwrap();
        let b = RationalFn::new(p(&[1]), p(&[-2, 1])).unwrap();
        let s = &a + &b;
        assert_eq!(s, RationalFn::new(p(&[-2, 2]), p(&[0, -2, 1])).unwrap());
        assert_eq!(&(&s - &b), &a);
        assert_eq!(&(&a * &b) / &b, a);
        assert!(a.checked_div(&RationalFn::zero(Mode::Exact)).is_err());
    }

    #[test]
    fn laurent_expansion_of_geometric_series() {
        // 1/(w - 2) = sum 2^j w^{-(j+1)}
        let r = RationalFn::new(p(&[1]), p(&[-2, 1])).unwrap();
        let (poly, g) = r.laurent_at_infinity(6);
        assert!(poly.is_zero());
        let expected: Vec<Scalar> = (0..6).map(|j| ex(1 << j, 1)).collect();
        assert_eq!(g, expected);
        assert_eq!(RationalFn::from_laurent_tail(&g, Mode::Exact).laurent_at_infinity(6).1, g);
    }

    #[test]
    fn laurent_with_polynomial_part() {
        // (w^2 + 1)/w = w + 1/w
        let r = RationalFn::new(p(&[1, 0, 1]), p(&[0, 1])).unwrap();
        let (poly, g) = r.laurent_at_infinity(3);
        assert_eq!(poly, p(&[0, 1]));
        assert_eq!(g, vec![ex(1, 1), ex(0, 1), ex(0, 1)]);
    }
}
