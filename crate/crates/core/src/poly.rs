//! Dense univariate polynomials over [`Scalar`], used for the transform
//! variable `w`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{QError, Result};
use crate::scalar::{Mode, Scalar};

/// Relative threshold below which float coefficients are treated as zero.
pub const FLOAT_ZERO_TOL: f64 = 1e-11;

/// Ascending coefficients, trailing zeros trimmed. The zero polynomial has
/// no coefficients but still remembers its mode.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<Scalar>,
    mode: Mode,
}

impl Poly {
    pub fn zero(mode: Mode) -> Self {
        Poly { coeffs: Vec::new(), mode }
    }

    pub fn one(mode: Mode) -> Self {
        Self::constant(Scalar::one(mode))
    }

    pub fn constant(c: Scalar) -> Self {
        let mode = c.mode();
        Self::new(vec![c], mode)
    }

    /// `c * w^k`.
    pub fn monomial(c: Scalar, k: usize) -> Self {
        let mode = c.mode();
        let mut coeffs = vec![Scalar::zero(mode); k];
        coeffs.push(c);
        Self::new(coeffs, mode)
    }

    /// `w - r`.
    pub fn linear(r: &Scalar) -> Self {
        let mode = r.mode();
        Self::new(vec![-r, Scalar::one(mode)], mode)
    }

    pub fn new(coeffs: Vec<Scalar>, mode: Mode) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.mode() == mode));
        let mut p = Poly { coeffs, mode };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64], mode: Mode) -> Self {
        Self::new(coeffs.iter().map(|&c| Scalar::from_int(c, mode)).collect(), mode)
    }

    fn trim(&mut self) {
        match self.mode {
            Mode::Exact => {
                while self.coeffs.last().is_some_and(Scalar::is_zero) {
                    self.coeffs.pop();
                }
            }
            Mode::Float => {
                let scale = self.max_abs();
                while self
                    .coeffs
                    .last()
                    .is_some_and(|c| c.is_negligible(scale, FLOAT_ZERO_TOL))
                {
                    self.coeffs.pop();
                }
            }
        }
    }

    fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Scalar::zero(self.mode))
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    /// Multiplicity of the root `w = 0`.
    pub fn zero_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect(), self.mode)
    }

    /// Multiplies by `w^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Scalar::zero(self.mode); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs, self.mode)
    }

    /// Divides by `w^k`; the low `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.zero_multiplicity() >= k.min(self.coeffs.len()));
        Self::new(self.coeffs.iter().skip(k).cloned().collect(), self.mode)
    }

    /// `p(c w)`.
    pub fn substitute_scale(&self, c: &Scalar) -> Self {
        let mut pow = Scalar::one(self.mode);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow = pow * c;
        }
        Self::new(out, self.mode)
    }

    /// `p(w^2)`.
    pub fn substitute_square(&self) -> Self {
        let zero = Scalar::zero(self.mode);
        let mut out = Vec::with_capacity(2 * self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.clone());
            out.push(zero.clone());
        }
        Self::new(out, self.mode)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(self.mode), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) if !l.is_one() => self.scale(&l.recip()),
            _ => self.clone(),
        }
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let Some(dd) = d.degree() else {
            return Err(QError::DivisionByZero);
        };
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n <= dd {
            return Ok((Poly::zero(self.mode), self.clone()));
        }
        let mut quot = vec![Scalar::zero(self.mode); n - dd];
        for i in (0..n - dd).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] = &rem[i + j] - &(&c * dc);
                }
            }
            rem[i + dd] = Scalar::zero(self.mode);
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot, self.mode), Poly::new(rem, self.mode)))
    }

    /// Exact quotient; errors if the remainder does not vanish.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(QError::Unsupported(format!("{self} is not divisible by {d}")))
        }
    }

    /// Monic greatest common divisor. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return if other.is_zero() { Poly::zero(self.mode) } else { other.monic() };
        }
        if other.is_zero() {
            return self.monic();
        }
        // gcd(w^i a, w^j b) = w^min(i,j) gcd(a, b) when w divides neither a nor b
        let (i, j) = (self.zero_multiplicity(), other.zero_multiplicity());
        let (a, b) = (self.shift_down(i), other.shift_down(j));
        let g = if a.degree() == Some(0) || b.degree() == Some(0) {
            Poly::one(self.mode)
        } else {
            a.euclid(b)
        };
        g.shift_up(i.min(j))
    }

    fn euclid(self, other: Poly) -> Poly {
        let (mut a, mut b) = (self, other);
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            let r = match r.mode {
                Mode::Float if r.max_abs() <= FLOAT_ZERO_TOL * b.max_abs() => Poly::zero(r.mode),
                _ if r.is_zero() => r,
                _ => r.monic(),
            };
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, n: u32) -> Poly {
        (0..n).fold(Poly::one(self.mode), |acc, _| &acc * self)
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::new(coeffs, self.mode)
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::new(coeffs, self.mode)
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.mode);
        }
        let mut out = vec![Scalar::zero(self.mode); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out, self.mode)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect(), self.mode)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one();
            match i {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("w")?,
                1 => write!(f, "{mag}*w")?,
                _ if unit => write!(f, "w^{i}")?,
                _ => write!(f, "{mag}*w^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c, Mode::Exact)
    }

    #[test]
    fn arithmetic_and_division() {
        let a = p(&[-6, 1, 1]); // w^2 + w - 6
        let b = p(&[-2, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, p(&[3, 1]));
        assert!(r.is_zero());
        assert_eq!(&(&q * &b) + &r, a);
        let (q, r) = p(&[1, 0, 1]).div_rem(&p(&[1, 1])).unwrap();
        assert_eq!(q, p(&[-1, 1]));
        assert_eq!(r, p(&[2]));
    }

    #[test]
    fn gcd_is_monic() {
        let a = &p(&[-2, 1]) * &p(&[3, 1]);
        let b = &p(&[-2, 1]) * &p(&[0, 5]);
        assert_eq!(a.gcd(&b), p(&[-2, 1]));
        assert_eq!(p(&[2]).gcd(&p(&[0, 1])), p(&[1]));
    }

    #[test]
    fn substitution_and_shift() {
        let a = p(&[1, 2, 3]);
        let two = Scalar::from_int(2, Mode::Exact);
        assert_eq!(a.substitute_scale(&two), p(&[1, 4, 12]));
        assert_eq!(a.shift_up(2).shift_down(2), a);
        assert_eq!(a.shift_up(2).zero_multiplicity(), 2);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[0, -6, 1, 1]).to_string(), "w^3 + w^2 - 6*w");
        assert_eq!(p(&[3, 1]).to_string(), "w + 3");
    }

    #[test]
    fn float_gcd_tolerates_roundoff() {
        let a = Poly::new(
            vec![Scalar::Float(-0.3), Scalar::Float(0.1 + 0.2 - 0.3 + 1.0 - 0.7), Scalar::Float(1.0)],
            Mode::Float,
        );
        let root = Scalar::Float(0.5);
        let b = &a * &Poly::linear(&root);
        let g = a.gcd(&b);
        assert_eq!(g.degree(), Some(2));
    }
}
