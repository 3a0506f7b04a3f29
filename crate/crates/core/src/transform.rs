//! The q,alpha-Natural transform in the variable `w = s^alpha / u^alpha`.
//!
//! With `X = s^alpha` and `Y = u^alpha`, every transform handled here is
//! `Y^{-m} (phi(w) + sum_j g_j w^{-(j+1)})`: a homogeneous function of
//! degree `-m` in `(X, Y)`. Substitutions act on `w` alone:
//!
//! * `s -> q^k s` is `w -> Q^k w`,
//! * `u -> q u` is `Y -> Q Y` together with `w -> w / Q`,
//!
//! and the conformable q-derivatives in `s` and `u` become exact rational
//! operations on `phi`.

use crate::alphaseries::{AlphaSeries, TimeAtom, TimeExpr, DEFAULT_ORDER};
use crate::error::{QError, Result};
use crate::params::QParams;
use crate::poly::Poly;
use crate::qcore::{bnk_table, q_alpha_factorial};
use crate::rational::RationalFn;
use crate::scalar::{Mode, Scalar};

#[derive(Debug, Clone)]
pub struct TransformExpr {
    /// Homogeneity: the value carries a factor `Y^{-m}`.
    pub m: i32,
    pub rational: RationalFn,
    /// `g_j`, coefficient of `w^{-(j+1)}` in a truncated series part.
    pub tail: Vec<Scalar>,
}

impl TransformExpr {
    pub fn zero(mode: Mode) -> Self {
        Self::from_rational(RationalFn::zero(mode))
    }

    /// `Y^{-1} phi(w)`.
    pub fn from_rational(rational: RationalFn) -> Self {
        TransformExpr {
            m: 1,
            rational,
            tail: Vec::new(),
        }
    }

    pub fn mode(&self) -> Mode {
        self.rational.mode()
    }

    pub fn has_tail(&self) -> bool {
        self.tail.iter().any(|g| !g.is_zero())
    }

    /// Rational part and tail folded into a single rational function of `w`.
    pub fn combined(&self) -> RationalFn {
        &self.rational + &RationalFn::from_laurent_tail(&self.tail, self.mode())
    }

    /// Polynomial part and the first `k` coefficients of the expansion in
    /// `w^{-1}`.
    pub fn w_expansion(&self, k: usize) -> (Poly, Vec<Scalar>) {
        self.combined().laurent_at_infinity(k)
    }

    fn same_m(&self, other: &Self) -> Result<()> {
        if self.m == other.m {
            Ok(())
        } else {
            Err(QError::Unsupported(format!(
                "cannot add transforms of homogeneity {} and {}",
                self.m, other.m
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_m(other)?;
        let n = self.tail.len().max(other.tail.len());
        let zero = Scalar::zero(self.mode());
        let tail = (0..n)
            .map(|j| {
                self.tail.get(j).unwrap_or(&zero) + other.tail.get(j).unwrap_or(&zero)
            })
            .collect();
        Ok(TransformExpr {
            m: self.m,
            rational: &self.rational + &other.rational,
            tail,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        TransformExpr {
            m: self.m,
            rational: self.rational.scale(c),
            tail: self.tail.iter().map(|g| g * c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Scalar::one(self.mode())))
    }

    /// Multiplies by `Y^n = u^{alpha n}`.
    pub fn mul_y_power(&self, n: i32) -> Self {
        TransformExpr {
            m: self.m - n,
            ..self.clone()
        }
    }

    /// Multiplies by `w^{-k}`.
    pub fn div_w_power(&self, k: usize) -> Self {
        let mut tail = vec![Scalar::zero(self.mode()); k];
        tail.extend(self.tail.iter().cloned());
        TransformExpr {
            m: self.m,
            rational: self.rational.div_w_power(k),
            tail,
        }
    }

    /// Multiplies by `w^k`; tail terms that reach non-negative powers move
    /// into the rational part.
    pub fn mul_w_power(&self, k: usize) -> Self {
        let mode = self.mode();
        let split = k.min(self.tail.len());
        // g_j w^{k-1-j} for j < k
        let mut poly = vec![Scalar::zero(mode); k];
        for (j, g) in self.tail.iter().take(split).enumerate() {
            poly[k - 1 - j] = g.clone();
        }
        let rational =
            &self.rational.mul_w_power(k) + &RationalFn::from_poly(Poly::new(poly, mode));
        TransformExpr {
            m: self.m,
            rational,
            tail: self.tail[split..].to_vec(),
        }
    }

    /// `s -> q^k s`, i.e. `w -> Q^k w`.
    pub fn substitute_s(&self, k: i64, p: &QParams) -> Self {
        let c = p.big_q_pow(k);
        let tail = self
            .tail
            .iter()
            .enumerate()
            .map(|(j, g)| g * &p.big_q_pow(-k * (j as i64 + 1)))
            .collect();
        TransformExpr {
            m: self.m,
            rational: self.rational.substitute_scale(&c),
            tail,
        }
    }

    /// Numeric value at `(u, s)`.
    pub fn eval(&self, u: f64, s: f64, p: &QParams) -> f64 {
        let a = p.alpha_f64();
        let (x, y) = (s.powf(a), u.powf(a));
        let w = x / y;
        let mut v = self.rational.eval_f64(w);
        let mut wn = 1.0 / w;
        for g in &self.tail {
            v += g.to_f64() * wn;
            wn /= w;
        }
        v * y.powi(-self.m)
    }
}

impl PartialEq for TransformExpr {
    fn eq(&self, other: &Self) -> bool {
        if self.m != other.m {
            return false;
        }
        let n = self.tail.len().max(other.tail.len());
        let zero = Scalar::zero(self.mode());
        let tails_agree =
            (0..n).all(|j| self.tail.get(j).unwrap_or(&zero) == other.tail.get(j).unwrap_or(&zero));
        if tails_agree {
            self.rational == other.rational
        } else {
            self.combined() == other.combined()
        }
    }
}

/// `N(t^{alpha n}) = [n alpha]! Y^{-1} w^{-(n+1)}`, summed over the series.
pub fn natural_series(f: &AlphaSeries) -> TransformExpr {
    let p = f.params();
    let mut fact = p.one();
    let mut g = Vec::with_capacity(f.order() + 1);
    for (n, c) in f.coeffs().iter().enumerate() {
        if n > 0 {
            fact = fact * crate::qcore::q_alpha(n as i64, p);
        }
        g.push(c * &fact);
    }
    TransformExpr::from_rational(RationalFn::from_laurent_tail(&g, p.mode()))
}

/// Closed-form transform of one atom; `CapExp` gets a series tail of
/// [`DEFAULT_ORDER`] + 1 terms.
pub fn natural_atom(atom: &TimeAtom, p: &QParams) -> Result<TransformExpr> {
    natural_atom_with_order(atom, DEFAULT_ORDER, p)
}

pub fn natural_atom_with_order(atom: &TimeAtom, order: usize, p: &QParams) -> Result<TransformExpr> {
    if let Some(b) = atom.beta() {
        p.check(b)?;
    }
    let mode = p.mode();
    let one = p.one();
    let rational = match atom {
        TimeAtom::Power(n) => {
            RationalFn::inverse_power(q_alpha_factorial(*n, p), *n as usize + 1)
        }
        TimeAtom::Exp(b) => RationalFn::new(Poly::constant(one), Poly::linear(b))?,
        TimeAtom::Cos(b) => RationalFn::new(Poly::monomial(one, 1), quadratic(b, mode))?,
        TimeAtom::Sin(b) => RationalFn::new(Poly::constant(b.clone()), quadratic(b, mode))?,
        TimeAtom::CapExp(b) => {
            let mut tail = Vec::with_capacity(order + 1);
            let mut g = p.one();
            for n in 0..=order {
                if n > 0 {
                    g = g * b * &p.big_q_pow(n as i64 - 1);
                }
                tail.push(g.clone());
            }
            return Ok(TransformExpr {
                m: 1,
                rational: RationalFn::zero(mode),
                tail,
            });
        }
    };
    Ok(TransformExpr::from_rational(rational))
}

/// `w^2 + beta^2`.
fn quadratic(beta: &Scalar, mode: Mode) -> Poly {
    Poly::new(vec![beta * beta, Scalar::zero(mode), Scalar::one(mode)], mode)
}

/// Transform of a whole expression by linearity.
pub fn natural_time_expr(e: &TimeExpr, p: &QParams) -> Result<TransformExpr> {
    e.check(p)?;
    let mut acc = TransformExpr::zero(p.mode());
    for t in e.terms() {
        acc = acc.add(&natural_atom(&t.atom, p)?.scale(&t.coef))?;
    }
    Ok(acc)
}

/// `N((D^{q,alpha})^n f) = w^n N(f) - Y^{-1} sum_{j<n} w^{n-1-j} (D^j f)(0)`.
pub fn transform_of_derivative(r: &TransformExpr, n: usize, init: &[Scalar]) -> Result<TransformExpr> {
    if r.m != 1 {
        return Err(QError::Unsupported(format!(
            "derivative theorem needs homogeneity 1, got {}",
            r.m
        )));
    }
    if init.len() != n {
        return Err(QError::Domain(format!(
            "{n}-th derivative needs {n} initial values, got {}",
            init.len()
        )));
    }
    let mode = r.mode();
    for v in init {
        v.check_mode(mode)?;
    }
    // sum_j init_j w^{n-1-j}
    let boundary: Vec<Scalar> = (0..n).map(|i| init[n - 1 - i].clone()).collect();
    let boundary = TransformExpr::from_rational(RationalFn::from_poly(Poly::new(boundary, mode)));
    r.mul_w_power(n).sub(&boundary)
}

/// `D^{q,alpha}_s`: `phi -> (phi(w) - phi(Qw)) / ((1-q) w)`, homogeneity `m + 1`.
pub fn dqa_in_s(r: &TransformExpr, p: &QParams) -> TransformExpr {
    let shifted = r.rational.substitute_scale(p.big_q());
    let diff = &r.rational - &shifted;
    let rational = diff.div_w_power(1).scale(&p.one_minus_q().recip());
    let mut tail = vec![p.zero()];
    for (j, g) in r.tail.iter().enumerate() {
        let factor = (p.one() - p.big_q_pow(-(j as i64 + 1))) / p.one_minus_q();
        tail.push(g * &factor);
    }
    TransformExpr {
        m: r.m + 1,
        rational,
        tail,
    }
}

/// `D^{q,alpha}_u`: `phi -> (phi(w) - Q^{-m} phi(w/Q)) / (1-q)`, homogeneity `m + 1`.
pub fn dqa_in_u(r: &TransformExpr, p: &QParams) -> TransformExpr {
    let q_m = p.big_q_pow(-i64::from(r.m));
    let shifted = r.rational.substitute_scale(&p.big_q().recip()).scale(&q_m);
    let rational = (&r.rational - &shifted).scale(&p.one_minus_q().recip());
    let tail = r
        .tail
        .iter()
        .enumerate()
        .map(|(j, g)| {
            let factor = (p.one() - &q_m * &p.big_q_pow(j as i64 + 1)) / p.one_minus_q();
            g * &factor
        })
        .collect();
    TransformExpr {
        m: r.m + 1,
        rational,
        tail,
    }
}

fn require_m1(r: &TransformExpr) -> Result<()> {
    if r.m == 1 {
        Ok(())
    } else {
        Err(QError::Unsupported(format!(
            "t-power rules need the transform of a function (homogeneity 1), got {}",
            r.m
        )))
    }
}

/// `N(t^{alpha n} f) = (-1)^n Q^{n(n-1)/2} u^{alpha n} (D_s)^n R(u, q^{-n} s)`.
pub fn tpower_transform_via_s(r: &TransformExpr, n: usize, p: &QParams) -> Result<TransformExpr> {
    require_m1(r)?;
    let ni = n as i64;
    let mut acc = r.substitute_s(-ni, p);
    for _ in 0..n {
        acc = dqa_in_s(&acc, p);
    }
    let sign = if n.is_multiple_of(2) { p.one() } else { -p.one() };
    let c = sign * p.big_q_pow(ni * (ni - 1) / 2);
    Ok(acc.scale(&c).mul_y_power(n as i32))
}

/// `N(t^{alpha n} f) = (u/s)^{alpha n} (D_u)^n (u^{alpha n} R)`.
pub fn tpower_transform_via_u(r: &TransformExpr, n: usize, p: &QParams) -> Result<TransformExpr> {
    require_m1(r)?;
    let mut acc = r.mul_y_power(n as i32);
    for _ in 0..n {
        acc = dqa_in_u(&acc, p);
    }
    Ok(acc.div_w_power(n))
}

/// `N(t^{alpha n} f) = (u/s)^{alpha n} sum_k b_{n,k} u^{alpha k} (D_u)^k R`.
pub fn bnk_form(r: &TransformExpr, n: usize, p: &QParams) -> Result<TransformExpr> {
    require_m1(r)?;
    let table = bnk_table(n, p);
    let mut acc = TransformExpr::zero(p.mode());
    let mut dk = r.clone();
    for k in 0..=n {
        if k > 0 {
            dk = dqa_in_u(&dk, p);
        }
        let term = dk.mul_y_power(k as i32).scale(table.get(n, k).unwrap());
        acc = acc.add(&term)?;
    }
    Ok(acc.div_w_power(n))
}
