//! q-numbers, q,alpha-factorials, shifted powers, the deformed Gamma and
//! Beta functions at integer arguments, and the `b_{n,k}` table relating
//! `N(t^{alpha n} f)` to u-derivatives of `N(f)`.

use crate::error::{QError, Result};
use crate::params::QParams;
use crate::scalar::{Mode, Scalar};

/// Exponent argument for [`q_number`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QExponent {
    /// `x = k * alpha`; `q^x = Q^k`, exact in both modes.
    AlphaMultiple(i64),
    /// `x = n`; `q^x = q^n`, exact in both modes.
    Integer(i64),
    /// Arbitrary real exponent; float mode only.
    Real(f64),
}

/// `[x] = (1 - q^x) / (1 - q)`.
pub fn q_number(x: QExponent, p: &QParams) -> Result<Scalar> {
    let qx = match x {
        QExponent::AlphaMultiple(k) => p.big_q_pow(k),
        QExponent::Integer(n) => p.q_pow(n),
        QExponent::Real(x) => match p.mode() {
            Mode::Float => Scalar::Float(p.q_f64().powf(x)),
            Mode::Exact => {
                return Err(QError::Inexpressible {
                    op: format!("q^{x}"),
                    mode: Mode::Exact,
                })
            }
        },
    };
    Ok((p.one() - qx) / p.one_minus_q())
}

/// `[k alpha]`, the workhorse q-number.
pub fn q_alpha(k: i64, p: &QParams) -> Scalar {
    (p.one() - p.big_q_pow(k)) / p.one_minus_q()
}

/// `[n alpha]! = [alpha][2 alpha]...[n alpha]`, with `[0]! = 1`.
pub fn q_alpha_factorial(n: u32, p: &QParams) -> Scalar {
    (1..=i64::from(n)).fold(p.one(), |acc, k| acc * q_alpha(k, p))
}

/// `(a + b)^n_{q^alpha} = prod_{j<n} (a + Q^j b)`.
pub fn shifted_power(a: &Scalar, b: &Scalar, n: u32, p: &QParams) -> Result<Scalar> {
    p.check(a)?;
    p.check(b)?;
    let mut acc = p.one();
    let mut qj = p.one();
    for _ in 0..n {
        acc = acc * (a + &(&qj * b));
        qj = qj * p.big_q();
    }
    Ok(acc)
}

/// `Gamma_{q,alpha}(n) = [(n-1) alpha]!` for integer `n >= 1`.
pub fn gamma_qa(n: i64, p: &QParams) -> Result<Scalar> {
    if n < 1 {
        return Err(QError::Domain(format!("Gamma_q,alpha({n}) needs n >= 1")));
    }
    Ok(q_alpha_factorial((n - 1) as u32, p))
}

/// `B_{q,alpha}(m, n) = Gamma(m) Gamma(n) / Gamma(m + n)`.
pub fn beta_qa(m: i64, n: i64, p: &QParams) -> Result<Scalar> {
    if m < 1 || n < 1 {
        return Err(QError::Domain(format!("B_q,alpha({m}, {n}) needs m, n >= 1")));
    }
    Ok(gamma_qa(m, p)? * gamma_qa(n, p)? / gamma_qa(m + n, p)?)
}

/// Lower-triangular table `b_{n,k}`, `0 <= k <= n <= n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct BnkTable {
    rows: Vec<Vec<Scalar>>,
}

impl BnkTable {
    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> Option<&Scalar> {
        self.rows.get(n)?.get(k)
    }

    pub fn row(&self, n: usize) -> &[Scalar] {
        &self.rows[n]
    }
}

/// Builds `b_{n,k}` from
///
/// ```text
/// b_{0,0} = 1
/// b_{n,0} = [n alpha] b_{n-1,0}
/// b_{n,k} = [(n+k) alpha] b_{n-1,k} + Q^{n-1+k} b_{n-1,k-1}    0 < k < n
/// b_{n,n} = Q^{2n-1} b_{n-1,n-1}
/// ```
///
/// The corner is the general line at `k = n` (where `b_{n-1,n}` vanishes).
pub fn bnk_table(n_max: usize, p: &QParams) -> BnkTable {
    let mut rows: Vec<Vec<Scalar>> = vec![vec![p.one()]];
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let ni = n as i64;
        let mut row = Vec::with_capacity(n + 1);
        row.push(q_alpha(ni, p) * &prev[0]);
        for k in 1..n {
            let ki = k as i64;
            row.push(q_alpha(ni + ki, p) * &prev[k] + p.big_q_pow(ni - 1 + ki) * &prev[k - 1]);
        }
        row.push(p.big_q_pow(2 * ni - 1) * &prev[n - 1]);
        rows.push(row);
    }
    BnkTable { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn params() -> QParams {
        QParams::exact(ratio(1, 4), ratio(1, 2), Some(ratio(1, 2))).unwrap()
    }

    fn ex(n: i64, d: i64) -> Scalar {
        Scalar::Exact(ratio(n, d))
    }

    #[test]
    fn q_number_examples() {
        let p = params();
        assert_eq!(q_number(QExponent::AlphaMultiple(0), &p).unwrap(), ex(0, 1));
        assert_eq!(q_number(QExponent::AlphaMultiple(1), &p).unwrap(), ex(2, 3));
        assert_eq!(q_number(QExponent::AlphaMultiple(2), &p).unwrap(), ex(1, 1));
        // [1] = 1 for any q.
        assert_eq!(q_number(QExponent::Integer(1), &p).unwrap(), ex(1, 1));
        assert!(matches!(
            q_number(QExponent::Real(0.3), &p),
            Err(QError::Inexpressible { .. })
        ));
        let pf = QParams::float(0.25, 0.5).unwrap();
        let v = q_number(QExponent::Real(0.5), &pf).unwrap().to_f64();
        assert!((v - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn q_numbers_positive_and_classical_limit() {
        let p = params();
        for k in 1..20 {
            assert!(q_alpha(k, &p).is_positive());
        }
        let near_one = QParams::exact(ratio(99, 100), ratio(1, 1), None).unwrap();
        for n in 1..=6 {
            let v = q_alpha(n, &near_one).to_f64();
            assert!((v - n as f64).abs() < 0.03 * n as f64, "[{n}] = {v}");
        }
    }

    #[test]
    fn factorial_examples() {
        let p = params();
        assert_eq!(q_alpha_factorial(0, &p), ex(1, 1));
        assert_eq!(q_alpha_factorial(2, &p), ex(2, 3));
        let p2 = QParams::exact(ratio(1, 2), ratio(1, 1), None).unwrap();
        assert_eq!(q_alpha_factorial(2, &p2), ex(3, 2));
    }

    #[test]
    fn shifted_power_examples_and_recurrence() {
        let p = params();
        let one = ex(1, 1);
        assert_eq!(shifted_power(&ex(7, 3), &ex(-5, 2), 0, &p).unwrap(), one);
        assert_eq!(shifted_power(&one, &one, 2, &p).unwrap(), ex(3, 1));
        assert_eq!(shifted_power(&one, &ex(-1, 1), 2, &p).unwrap(), ex(0, 1));
        let (a, b) = (ex(3, 5), ex(-7, 4));
        for n in 0..8u32 {
            let lhs = shifted_power(&a, &b, n, &p).unwrap()
                * (&a + &(p.big_q_pow(i64::from(n)) * &b));
            assert_eq!(lhs, shifted_power(&a, &b, n + 1, &p).unwrap());
        }
        assert!(shifted_power(&Scalar::Float(1.0), &one, 2, &p).is_err());
    }

    #[test]
    fn gamma_examples_and_recurrence() {
        let p = params();
        assert_eq!(gamma_qa(1, &p).unwrap(), ex(1, 1));
        assert_eq!(gamma_qa(3, &p).unwrap(), ex(2, 3));
        assert!(gamma_qa(0, &p).is_err());
        for n in 1..=10 {
            assert_eq!(
                gamma_qa(n + 1, &p).unwrap(),
                q_alpha(n, &p) * gamma_qa(n, &p).unwrap()
            );
        }
        let near = QParams::float(0.9999, 1.0).unwrap();
        assert!((gamma_qa(4, &near).unwrap().to_f64() - 6.0).abs() < 0.01);
    }

    #[test]
    fn beta_examples() {
        let p = params();
        assert_eq!(beta_qa(1, 1, &p).unwrap(), ex(3, 2));
        assert_eq!(beta_qa(2, 1, &p).unwrap(), ex(1, 1));
        for m in 1..=6 {
            for n in 1..=6 {
                assert_eq!(beta_qa(m, n, &p).unwrap(), beta_qa(n, m, &p).unwrap());
            }
        }
        assert!(beta_qa(0, 2, &p).is_err());
    }

    /// Independent oracle: `N(t^{alpha n} t^{alpha m}) = (Y/X)^n sum_k b_{n,k} Y^k D_u^k N(t^{alpha m})`
    /// reduces on monomials to `sum_k b_{n,k} [m]!/[m-k]! = [(n+m)]!/[m]!` for every m;
    /// the rows m = 0..n form a triangular system for `b_{n,.}`.
    fn bnk_by_monomial_matching(n: usize, p: &QParams) -> Vec<Scalar> {
        let fact = |k: usize| q_alpha_factorial(k as u32, p);
        let mut b: Vec<Scalar> = Vec::new();
        for m in 0..=n {
            let target = fact(n + m) / fact(m);
            let known = (0..m).fold(p.zero(), |acc, k| acc + &b[k] * &(fact(m) / fact(m - k)));
            b.push((target - known) / fact(m));
        }
        b
    }

    #[test]
    fn bnk_initial_rows() {
        let p = params();
        let t = bnk_table(2, &p);
        assert_eq!(t.get(0, 0), Some(&ex(1, 1)));
        assert_eq!(t.get(1, 0), Some(&q_alpha(1, &p)));
        assert_eq!(t.get(1, 1), Some(p.big_q()));
    }

    #[test]
    fn bnk_matches_monomial_oracle() {
        for p in [
            params(),
            QParams::exact(ratio(1, 3), ratio(1, 1), None).unwrap(),
            QParams::exact(ratio(8, 27), ratio(1, 3), None).unwrap(),
        ] {
            let t = bnk_table(6, &p);
            for n in 0..=6 {
                assert_eq!(t.row(n), bnk_by_monomial_matching(n, &p).as_slice(), "row {n}");
            }
        }
    }

    #[test]
    fn bnk_corner_exponent_is_two_n_minus_one() {
        let p = params();
        let oracle = bnk_by_monomial_matching(2, &p);
        // b_{2,2} = Q^3 b_{1,1} = Q^4, not Q^{2*1-1} b_{1,1} = Q^2.
        assert_eq!(oracle[2], p.big_q_pow(4));
    }
}
