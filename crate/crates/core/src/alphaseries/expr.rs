//! Time-domain expressions: linear combinations of `t^{alpha n}`,
//! `e_{q,alpha}`, `E_{q,alpha}`, `c_{q,alpha}` and `s_{q,alpha}`.

use std::cmp::Ordering;
use std::fmt;

use super::{
    cap_exp_numeric, exp_numeric, make_cap_exp_series, make_cos_series, make_exp_series,
    make_sin_series, trig_numeric, AlphaSeries,
};
use crate::error::Result;
use crate::params::QParams;
use crate::scalar::{Mode, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomKind {
    Power,
    Exp,
    CapExp,
    Cos,
    Sin,
}

impl AtomKind {
    pub fn name(self) -> &'static str {
        match self {
            AtomKind::Power => "power",
            AtomKind::Exp => "exp",
            AtomKind::CapExp => "cap_exp",
            AtomKind::Cos => "cos",
            AtomKind::Sin => "sin",
        }
    }
}

/// One time-domain atom. Rates are stored as `beta = a^alpha`.
#[derive(Debug, Clone, PartialEq)]
pub enum TimeAtom {
    /// `t^{alpha n}`; `Power(0)` is the constant 1.
    Power(u32),
    Exp(Scalar),
    CapExp(Scalar),
    Cos(Scalar),
    Sin(Scalar),
}

impl TimeAtom {
    pub fn kind(&self) -> AtomKind {
        match self {
            TimeAtom::Power(_) => AtomKind::Power,
            TimeAtom::Exp(_) => AtomKind::Exp,
            TimeAtom::CapExp(_) => AtomKind::CapExp,
            TimeAtom::Cos(_) => AtomKind::Cos,
            TimeAtom::Sin(_) => AtomKind::Sin,
        }
    }

    pub fn beta(&self) -> Option<&Scalar> {
        match self {
            TimeAtom::Power(_) => None,
            TimeAtom::Exp(b) | TimeAtom::CapExp(b) | TimeAtom::Cos(b) | TimeAtom::Sin(b) => Some(b),
        }
    }

    fn cmp_key(&self, other: &Self) -> Ordering {
        self.kind().cmp(&other.kind()).then_with(|| match (self, other) {
            (TimeAtom::Power(a), TimeAtom::Power(b)) => a.cmp(b),
            _ => self.beta().unwrap().total_cmp(other.beta().unwrap()),
        })
    }

    /// Rewrites the atom into canonical form, returning the sign (or zero)
    /// picked up: `Exp(0)`, `CapExp(0)`, `Cos(0)` are the constant, `Sin(0)`
    /// vanishes, `Cos(-b) = Cos(b)`, `Sin(-b) = -Sin(b)`.
    fn canonical(self) -> (i8, TimeAtom) {
        match self {
            TimeAtom::Exp(b) | TimeAtom::CapExp(b) | TimeAtom::Cos(b) if b.is_zero() => {
                (1, TimeAtom::Power(0))
            }
            TimeAtom::Sin(b) if b.is_zero() => (0, TimeAtom::Sin(b)),
            TimeAtom::Cos(b) if b.is_negative() => (1, TimeAtom::Cos(-b)),
            TimeAtom::Sin(b) if b.is_negative() => (-1, TimeAtom::Sin(-b)),
            other => (1, other),
        }
    }

    pub fn to_series(&self, order: usize, p: &QParams) -> Result<AlphaSeries> {
        match self {
            TimeAtom::Power(n) => AlphaSeries::monomial(p.one(), *n as usize, order, p),
            TimeAtom::Exp(b) => make_exp_series(b, order, p),
            TimeAtom::CapExp(b) => make_cap_exp_series(b, order, p),
            TimeAtom::Cos(b) => make_cos_series(b, order, p),
            TimeAtom::Sin(b) => make_sin_series(b, order, p),
        }
    }

    /// Numeric value at `t >= 0` from the closed product forms.
    pub fn eval(&self, t: f64, p: &QParams) -> Result<f64> {
        Ok(match self {
            TimeAtom::Power(n) => t.powf(p.alpha_f64()).powi(*n as i32),
            TimeAtom::Exp(b) => exp_numeric(b.to_f64(), t, p)?,
            TimeAtom::CapExp(b) => cap_exp_numeric(b.to_f64(), t, p),
            TimeAtom::Cos(b) => trig_numeric(b.to_f64(), t, p).0,
            TimeAtom::Sin(b) => trig_numeric(b.to_f64(), t, p).1,
        })
    }
}

impl fmt::Display for TimeAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimeAtom::Power(0) => f.write_str("1"),
            TimeAtom::Power(1) => f.write_str("t^a"),
            TimeAtom::Power(n) => write!(f, "t^({n}a)"),
            TimeAtom::Exp(b) => write!(f, "e(beta={b})"),
            TimeAtom::CapExp(b) => write!(f, "E(beta={b})"),
            TimeAtom::Cos(b) => write!(f, "c(beta={b})"),
            TimeAtom::Sin(b) => write!(f, "s(beta={b})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coef: Scalar,
    pub atom: TimeAtom,
}

/// Normalized sum of terms: sorted by (kind, n or beta), one term per atom,
/// no zero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeExpr {
    terms: Vec<Term>,
}

impl TimeExpr {
    pub fn zero() -> Self {
        TimeExpr { terms: Vec::new() }
    }

    pub fn from_terms<I: IntoIterator<Item = (Scalar, TimeAtom)>>(terms: I) -> Self {
        let mut out: Vec<Term> = Vec::new();
        let mut raw: Vec<Term> = terms
            .into_iter()
            .filter_map(|(coef, atom)| {
                let (sign, atom) = atom.canonical();
                match sign {
                    0 => None,
                    1 => Some(Term { coef, atom }),
                    _ => Some(Term { coef: -coef, atom }),
                }
            })
            .collect();
        raw.sort_by(|a, b| a.atom.cmp_key(&b.atom));
        for t in raw {
            match out.last_mut() {
                Some(last) if last.atom == t.atom => last.coef = &last.coef + &t.coef,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coef.is_zero());
        TimeExpr { terms: out }
    }

    pub fn single(coef: Scalar, atom: TimeAtom) -> Self {
        Self::from_terms([(coef, atom)])
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient_of(&self, atom: &TimeAtom) -> Option<&Scalar> {
        self.terms.iter().find(|t| &t.atom == atom).map(|t| &t.coef)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|t| (t.coef.clone(), t.atom.clone())),
        )
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|t| (&t.coef * c, t.atom.clone())))
    }

    /// True when every coefficient and rate is in `mode`.
    pub fn is_mode(&self, mode: Mode) -> bool {
        self.terms.iter().all(|t| {
            t.coef.mode() == mode && t.atom.beta().is_none_or(|b| b.mode() == mode)
        })
    }

    /// Validates every scalar against the parameters' mode.
    pub fn check(&self, p: &QParams) -> Result<()> {
        for t in &self.terms {
            p.check(&t.coef)?;
            if let Some(b) = t.atom.beta() {
                p.check(b)?;
            }
        }
        Ok(())
    }

    pub fn to_series(&self, order: usize, p: &QParams) -> Result<AlphaSeries> {
        self.check(p)?;
        let mut acc = AlphaSeries::zero(order, p);
        for t in &self.terms {
            let s = t.atom.to_series(order, p)?.truncate(order).scale(&t.coef)?;
            acc = acc.add(&s)?;
        }
        Ok(acc)
    }

    /// Atom-wise numeric value at `t`.
    pub fn eval(&self, t: f64, p: &QParams) -> Result<f64> {
        let mut sum = 0.0;
        for term in &self.terms {
            sum += term.coef.to_f64() * term.atom.eval(t, p)?;
        }
        Ok(sum)
    }
}

impl fmt::Display for TimeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})*{}", t.coef, t.atom)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphaseries::series_eval;
    use crate::scalar::ratio;

    fn params() -> QParams {
        QParams::exact(ratio(1, 4), ratio(1, 2), Some(ratio(1, 2))).unwrap()
    }

    fn ex(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d, Mode::Exact)
    }

    #[test]
    fn normalization_merges_and_sorts() {
        let e = TimeExpr::from_terms([
            (ex(1, 2), TimeAtom::Exp(ex(2, 1))),
            (ex(3, 1), TimeAtom::Power(0)),
            (ex(1, 2), TimeAtom::Exp(ex(2, 1))),
            (ex(5, 1), TimeAtom::Sin(ex(1, 1))),
            (ex(-5, 1), TimeAtom::Sin(ex(1, 1))),
            (ex(2, 1), TimeAtom::Exp(ex(0, 1))),
            (ex(4, 1), TimeAtom::Sin(ex(0, 1))),
            (ex(1, 1), TimeAtom::Cos(ex(-3, 1))),
        ]);
        assert_eq!(
            e.terms(),
            &[
                Term { coef: ex(5, 1), atom: TimeAtom::Power(0) },
                Term { coef: ex(1, 1), atom: TimeAtom::Exp(ex(2, 1)) },
                Term { coef: ex(1, 1), atom: TimeAtom::Cos(ex(3, 1)) },
            ]
        );
        let s = TimeExpr::single(ex(2, 1), TimeAtom::Sin(ex(-1, 1)));
        assert_eq!(s.coefficient_of(&TimeAtom::Sin(ex(1, 1))), Some(&ex(-2, 1)));
    }

    #[test]
    fn series_expansion_agrees_with_atomwise_evaluation() {
        let p = params();
        let e = TimeExpr::from_terms([
            (ex(1, 6), TimeAtom::Power(0)),
            (ex(1, 3), TimeAtom::Exp(ex(-3, 1))),
            (ex(1, 2), TimeAtom::Exp(ex(2, 1))),
            (ex(-2, 1), TimeAtom::Cos(ex(2, 1))),
            (ex(3, 1), TimeAtom::Sin(ex(2, 1))),
            (ex(7, 5), TimeAtom::CapExp(ex(1, 2))),
            (ex(-1, 4), TimeAtom::Power(3)),
        ]);
        let s = e.to_series(60, &p).unwrap();
        for t in [0.0, 0.01, 0.02, 0.05] {
            let a = series_eval(&s, t, 1e-12).unwrap().value;
            let b = e.eval(t, &p).unwrap();
            assert!((a - b).abs() < 1e-10, "t = {t}: {a} vs {b}");
        }
    }

    #[test]
    fn mode_check() {
        let p = params();
        let e = TimeExpr::single(Scalar::Float(1.0), TimeAtom::Power(0));
        assert!(e.to_series(4, &p).is_err());
        assert!(e.is_mode(Mode::Float));
    }
}
