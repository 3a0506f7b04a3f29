//! JSON forms.
//!
//! Scalars: exact integers are JSON integers, other exact rationals are
//! `"p/q"` strings, floats are JSON numbers with a fractional part or
//! exponent. Reading an integer or a rational string gives an exact scalar;
//! reading a float gives a float scalar. Exact inputs are accepted in float
//! mode (converted); float inputs are rejected in exact mode.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::alphaseries::{AlphaSeries, TimeAtom, TimeExpr};
use crate::error::{QError, Result};
use crate::odesolver::ODEProblem;
use crate::params::QParams;
use crate::poly::Poly;
use crate::rational::RationalFn;
use crate::scalar::{parse_rational, Mode, Scalar};
use crate::transform::TransformExpr;

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(r) if r.is_integer() => match r.numer().to_i64() {
                Some(n) => s.serialize_i64(n),
                None => s.serialize_str(&r.numer().to_string()),
            },
            Scalar::Exact(r) => s.serialize_str(&format!("{}/{}", r.numer(), r.denom())),
            Scalar::Float(x) => s.serialize_f64(*x),
        }
    }
}

struct ScalarVisitor;

impl<'de> Visitor<'de> for ScalarVisitor {
    type Value = Scalar;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer, a \"p/q\" string or a float")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Scalar, E> {
        Ok(Scalar::Exact(BigRational::from_integer(BigInt::from(v))))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Scalar, E> {
        Ok(Scalar::Exact(BigRational::from_integer(BigInt::from(v))))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Scalar, E> {
        Ok(Scalar::Float(v))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Scalar, E> {
        parse_rational(v).map(Scalar::Exact).map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(ScalarVisitor)
    }
}

/// Converts `s` into `mode`; floats cannot become exact.
pub fn coerce(s: Scalar, mode: Mode) -> Result<Scalar> {
    match (mode, &s) {
        (Mode::Float, Scalar::Exact(_)) => Ok(s.to_float()),
        (Mode::Exact, Scalar::Float(_)) => Err(QError::ModeMismatch {
            expected: Mode::Exact,
            found: Mode::Float,
        }),
        _ => Ok(s),
    }
}

fn coerce_all(v: Vec<Scalar>, mode: Mode) -> Result<Vec<Scalar>> {
    v.into_iter().map(|s| coerce(s, mode)).collect()
}

/// Float if any scalar is a float.
fn common_mode<'a, I: IntoIterator<Item = &'a Scalar>>(it: I) -> Mode {
    if it.into_iter().any(|s| s.mode() == Mode::Float) {
        Mode::Float
    } else {
        Mode::Exact
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum AtomJson {
    Power { n: u32 },
    Exp { beta: Scalar },
    CapExp { beta: Scalar },
    Cos { beta: Scalar },
    Sin { beta: Scalar },
}

impl AtomJson {
    fn from_atom(a: &TimeAtom) -> Self {
        match a {
            TimeAtom::Power(n) => AtomJson::Power { n: *n },
            TimeAtom::Exp(b) => AtomJson::Exp { beta: b.clone() },
            TimeAtom::CapExp(b) => AtomJson::CapExp { beta: b.clone() },
            TimeAtom::Cos(b) => AtomJson::Cos { beta: b.clone() },
            TimeAtom::Sin(b) => AtomJson::Sin { beta: b.clone() },
        }
    }

    fn into_atom(self, mode: Mode) -> Result<TimeAtom> {
        Ok(match self {
            AtomJson::Power { n } => TimeAtom::Power(n),
            AtomJson::Exp { beta } => TimeAtom::Exp(coerce(beta, mode)?),
            AtomJson::CapExp { beta } => TimeAtom::CapExp(coerce(beta, mode)?),
            AtomJson::Cos { beta } => TimeAtom::Cos(coerce(beta, mode)?),
            AtomJson::Sin { beta } => TimeAtom::Sin(coerce(beta, mode)?),
        })
    }

    fn beta(&self) -> Option<&Scalar> {
        match self {
            AtomJson::Power { .. } => None,
            AtomJson::Exp { beta } | AtomJson::CapExp { beta } | AtomJson::Cos { beta } | AtomJson::Sin { beta } => {
                Some(beta)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    coef: Scalar,
    atom: AtomJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TimeExprJson {
    time_expr: Vec<TermJson>,
}

impl TimeExprJson {
    fn mode(&self) -> Mode {
        common_mode(
            self.time_expr
                .iter()
                .flat_map(|t| std::iter::once(&t.coef).chain(t.atom.beta())),
        )
    }

    fn into_expr(self, mode: Mode) -> Result<TimeExpr> {
        let mut terms = Vec::with_capacity(self.time_expr.len());
        for t in self.time_expr {
            terms.push((coerce(t.coef, mode)?, t.atom.into_atom(mode)?));
        }
        Ok(TimeExpr::from_terms(terms))
    }
}

impl Serialize for TimeExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TimeExprJson {
            time_expr: self
                .terms()
                .iter()
                .map(|t| TermJson {
                    coef: t.coef.clone(),
                    atom: AtomJson::from_atom(&t.atom),
                })
                .collect(),
        }
        .serialize(s)
    }
}

/// Mode is inferred: float if any scalar is a float.
impl<'de> Deserialize<'de> for TimeExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TimeExprJson::deserialize(d)?;
        let mode = raw.mode();
        raw.into_expr(mode).map_err(de::Error::custom)
    }
}

fn parse_err(e: serde_json::Error) -> QError {
    QError::Parse(e.to_string())
}

/// A time expression in the parameters' mode. A bare term array is accepted
/// in place of the `{"time_expr": [...]}` wrapper.
pub fn parse_time_expr(v: &Value, p: &QParams) -> Result<TimeExpr> {
    let raw: TimeExprJson = match v {
        Value::Array(_) => TimeExprJson {
            time_expr: serde_json::from_value(v.clone()).map_err(parse_err)?,
        },
        _ => serde_json::from_value(v.clone()).map_err(parse_err)?,
    };
    raw.into_expr(p.mode())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TransformJson {
    m: i32,
    num: Vec<Scalar>,
    den: Vec<Scalar>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    tail: Vec<Scalar>,
}

impl TransformJson {
    fn into_transform(self, mode: Mode) -> Result<TransformExpr> {
        let num = Poly::new(coerce_all(self.num, mode)?, mode);
        let den = Poly::new(coerce_all(self.den, mode)?, mode);
        Ok(TransformExpr {
            m: self.m,
            rational: RationalFn::new(num, den)?,
            tail: coerce_all(self.tail, mode)?,
        })
    }
}

impl Serialize for TransformExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut tail = self.tail.clone();
        while tail.last().is_some_and(Scalar::is_zero) {
            tail.pop();
        }
        TransformJson {
            m: self.m,
            num: self.rational.num().coeffs().to_vec(),
            den: self.rational.den().coeffs().to_vec(),
            tail,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TransformExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TransformJson::deserialize(d)?;
        let mode = common_mode(raw.num.iter().chain(&raw.den).chain(&raw.tail));
        raw.into_transform(mode).map_err(de::Error::custom)
    }
}

pub fn parse_transform(v: &Value, p: &QParams) -> Result<TransformExpr> {
    let raw: TransformJson = serde_json::from_value(v.clone()).map_err(parse_err)?;
    raw.into_transform(p.mode())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesBody {
    coeffs: Vec<Scalar>,
    order: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesJson {
    alpha_series: SeriesBody,
}

impl Serialize for AlphaSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            alpha_series: SeriesBody {
                coeffs: self.coeffs().to_vec(),
                order: self.order(),
            },
        }
        .serialize(s)
    }
}

/// Series carry their parameters, so they are read against a `QParams`.
pub fn parse_alpha_series(v: &Value, p: &QParams) -> Result<AlphaSeries> {
    let raw: SeriesJson = serde_json::from_value(v.clone()).map_err(parse_err)?;
    AlphaSeries::new(coerce_all(raw.alpha_series.coeffs, p.mode())?, raw.alpha_series.order, p)
}

/// Parameter block: `{"q": "1/4", "Q": "1/2", "alpha": "1/2"}`, `Q` optional.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsJson {
    pub q: Scalar,
    #[serde(rename = "Q", default, skip_serializing_if = "Option::is_none")]
    pub big_q: Option<Scalar>,
    pub alpha: Scalar,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
}

impl ParamsJson {
    pub fn from_params(p: &QParams) -> Self {
        ParamsJson {
            q: p.q().clone(),
            big_q: Some(p.big_q().clone()),
            alpha: p.alpha().clone(),
            mode: Some(p.mode()),
        }
    }

    /// Exact unless a float was given or float mode was asked for.
    pub fn to_params(&self) -> Result<QParams> {
        let inferred = common_mode([&self.q, &self.alpha].into_iter().chain(self.big_q.as_ref()));
        let mode = self.mode.unwrap_or(inferred);
        match mode {
            Mode::Exact => {
                let q = coerce(self.q.clone(), Mode::Exact)?;
                let alpha = coerce(self.alpha.clone(), Mode::Exact)?;
                let big_q = self.big_q.clone().map(|b| coerce(b, Mode::Exact)).transpose()?;
                QParams::exact(
                    q.as_rational().unwrap().clone(),
                    alpha.as_rational().unwrap().clone(),
                    big_q.map(|b| b.as_rational().unwrap().clone()),
                )
            }
            Mode::Float => {
                let p = QParams::float(self.q.to_f64(), self.alpha.to_f64())?;
                if let Some(b) = &self.big_q {
                    if (b.to_f64() - p.big_q_f64()).abs() > 1e-12 {
                        return Err(QError::InvalidParams(format!(
                            "Q = {b} is inconsistent with q^alpha = {}",
                            p.big_q_f64()
                        )));
                    }
                }
                Ok(p)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemJson {
    coeffs: Vec<Scalar>,
    #[serde(default)]
    rhs: Option<Value>,
    init: Vec<Scalar>,
    #[serde(default)]
    params: Option<ParamsJson>,
}

/// A problem file. Embedded parameters win over `default_params`.
pub fn parse_problem(v: &Value, default_params: Option<&QParams>) -> Result<(ODEProblem, QParams)> {
    let raw: ProblemJson = serde_json::from_value(v.clone()).map_err(parse_err)?;
    let p = match (&raw.params, default_params) {
        (Some(pj), _) => pj.to_params()?,
        (None, Some(p)) => p.clone(),
        (None, None) => return Err(QError::Parse("problem has no \"params\" block".into())),
    };
    let mode = p.mode();
    let rhs = match &raw.rhs {
        None | Some(Value::Null) => TimeExpr::zero(),
        Some(v) => parse_time_expr(v, &p)?,
    };
    let prob = ODEProblem::new(coerce_all(raw.coeffs, mode)?, rhs, coerce_all(raw.init, mode)?)?;
    Ok((prob, p))
}

pub fn problem_to_json(prob: &ODEProblem, p: &QParams) -> Value {
    serde_json::json!({
        "coeffs": prob.coeffs,
        "rhs": prob.rhs,
        "init": prob.init,
        "params": ParamsJson::from_params(p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::QuadratureReport;
    use crate::qcalculus::taylor_qa;
    use crate::scalar::ratio;
    use crate::transform::natural_time_expr;
    use serde_json::json;

    fn params() -> QParams {
        QParams::exact(ratio(1, 4), ratio(1, 2), Some(ratio(1, 2))).unwrap()
    }

    fn ex(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d, Mode::Exact)
    }

    #[test]
    fn scalar_encoding() {
        assert_eq!(serde_json::to_string(&ex(3, 1)).unwrap(), "3");
        assert_eq!(serde_json::to_string(&ex(-2, 6)).unwrap(), "\"-1/3\"");
        assert_eq!(serde_json::to_string(&Scalar::Float(0.5)).unwrap(), "0.5");
        let s: Scalar = serde_json::from_str("\"6/4\"").unwrap();
        assert_eq!(s, ex(3, 2));
        let s: Scalar = serde_json::from_str("-7").unwrap();
        assert_eq!(s, ex(-7, 1));
        let s: Scalar = serde_json::from_str("0.25").unwrap();
        assert_eq!(s, Scalar::Float(0.25));
        assert!(serde_json::from_str::<Scalar>("\"abc\"").is_err());
        let big = Scalar::Exact(BigRational::from_integer(BigInt::from(10).pow(30)));
        let back: Scalar = serde_json::from_str(&serde_json::to_string(&big).unwrap()).unwrap();
        assert_eq!(back, big);
    }

    #[test]
    fn coercion_rules() {
        assert_eq!(coerce(ex(1, 2), Mode::Float).unwrap(), Scalar::Float(0.5));
        assert!(coerce(Scalar::Float(0.5), Mode::Exact).is_err());
    }

    #[test]
    fn time_expr_round_trip() {
        let e = TimeExpr::from_terms([
            (ex(1, 6), TimeAtom::Power(0)),
            (ex(1, 3), TimeAtom::Exp(ex(-3, 1))),
            (ex(-2, 1), TimeAtom::Cos(ex(2, 1))),
            (ex(5, 7), TimeAtom::CapExp(ex(1, 2))),
        ]);
        let text = serde_json::to_string(&e).unwrap();
        assert!(text.starts_with("{\"time_expr\":[{\"coef\":\"1/6\",\"atom\":{\"kind\":\"power\",\"n\":0}}"));
        let back: TimeExpr = serde_json::from_str(&text).unwrap();
        assert_eq!(back, e);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parse_time_expr(&v, &params()).unwrap(), e);
    }

    #[test]
    fn time_expr_rejects_floats_in_exact_mode() {
        let v = json!({"time_expr": [{"coef": 0.5, "atom": {"kind": "power", "n": 1}}]});
        assert!(parse_time_expr(&v, &params()).is_err());
        let fp = QParams::float(0.25, 0.5).unwrap();
        let e = parse_time_expr(&v, &fp).unwrap();
        assert!(e.is_mode(Mode::Float));
        let bad = json!({"time_expr": [{"coef": 1, "atom": {"kind": "tan", "beta": 1}}]});
        assert!(parse_time_expr(&bad, &params()).is_err());
    }

    #[test]
    fn transform_encoding() {
        let p = params();
        let one = natural_time_expr(&TimeExpr::single(ex(1, 1), TimeAtom::Power(0)), &p).unwrap();
        assert_eq!(serde_json::to_string(&one).unwrap(), r#"{"m":1,"num":[1],"den":[0,1]}"#);
        let cap = natural_time_expr(&TimeExpr::single(ex(1, 1), TimeAtom::CapExp(ex(2, 1))), &p).unwrap();
        let text = serde_json::to_string(&cap).unwrap();
        let back: TransformExpr = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cap);
        assert_eq!(back.tail, cap.tail);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parse_transform(&v, &p).unwrap(), cap);
        assert!(parse_transform(&json!({"m": 1, "num": [1], "den": [0]}), &p).is_err());
    }

    #[test]
    fn series_encoding() {
        let p = params();
        let s = AlphaSeries::new(vec![ex(1, 1), ex(1, 2)], 3, &p).unwrap();
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v, json!({"alpha_series": {"coeffs": [1, "1/2", 0, 0], "order": 3}}));
        assert_eq!(parse_alpha_series(&v, &p).unwrap(), s);
    }

    #[test]
    fn problem_round_trip() {
        let v = json!({
            "coeffs": [1, 3],
            "rhs": {"time_expr": [{"coef": 13, "atom": {"kind": "sin", "beta": 2}}]},
            "init": [6],
            "params": {"q": "1/4", "Q": "1/2", "alpha": "1/2"}
        });
        let (prob, p) = parse_problem(&v, None).unwrap();
        assert_eq!(p, params());
        assert_eq!(prob.order(), 1);
        let again = problem_to_json(&prob, &p);
        let (prob2, _) = parse_problem(&again, None).unwrap();
        assert_eq!(prob2, prob);
        let bare = json!({"coeffs": [1, 0], "rhs": [], "init": [2]});
        assert!(parse_problem(&bare, None).is_err());
        assert!(parse_problem(&bare, Some(&params())).is_ok());
    }

    #[test]
    fn params_block() {
        let pj: ParamsJson = serde_json::from_value(json!({"q": "1/4", "alpha": "1/2"})).unwrap();
        assert_eq!(pj.to_params().unwrap().big_q(), &ex(1, 2));
        let pj: ParamsJson = serde_json::from_value(json!({"q": 0.25, "alpha": 0.5})).unwrap();
        assert_eq!(pj.to_params().unwrap().mode(), Mode::Float);
        let pj: ParamsJson = serde_json::from_value(json!({"q": "1/4", "Q": "1/3", "alpha": "1/2"})).unwrap();
        assert!(pj.to_params().is_err());
    }

    #[test]
    fn reports_and_expansions() {
        let r = QuadratureReport { value: 1.0, terms_used: 3, tail_bound: 0.0, converged: true };
        let v = serde_json::to_value(r).unwrap();
        assert_eq!(v, json!({"value": 1.0, "terms_used": 3, "tail_bound": 0.0, "converged": true}));
        let p = params();
        let f = AlphaSeries::polynomial(vec![ex(1, 1), ex(2, 1)], &p).unwrap().truncate(2);
        let t = taylor_qa(&f, &ex(1, 1), &p).unwrap();
        let v = serde_json::to_value(&t).unwrap();
        assert_eq!(v["center"], json!(1));
        let back: crate::qcalculus::ShiftedBasisExpansion = serde_json::from_value(v).unwrap();
        assert_eq!(back, t);
    }
}
