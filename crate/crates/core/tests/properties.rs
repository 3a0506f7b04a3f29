use num_rational::BigRational;
use proptest::prelude::*;

use qalpha_core::alphaseries::{series_eval, TimeAtom};
use qalpha_core::inverse::{invert, partial_fractions, recombine};
use qalpha_core::odesolver::{initial_values, residual_series, solve_ivp, ODEProblem};
use qalpha_core::qcalculus::{
    dqa_pointwise, dqa_series, dqa_series_n, iqa_series, shifted_basis_expand, taylor_qa,
};
use qalpha_core::transform::{
    bnk_form, natural_series, natural_time_expr, tpower_transform_via_s, tpower_transform_via_u,
    transform_of_derivative,
};
use qalpha_core::{AlphaSeries, Mode, Poly, QParams, RationalFn, Scalar, TimeExpr};

fn params() -> QParams {
    QParams::exact(
        BigRational::new(1.into(), 4.into()),
        BigRational::new(1.into(), 2.into()),
        Some(BigRational::new(1.into(), 2.into())),
    )
    .unwrap()
}

fn ex(n: i64, d: i64) -> Scalar {
    Scalar::from_ratio(n, d, Mode::Exact)
}

fn small_rational() -> impl Strategy<Value = Scalar> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| ex(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Scalar> {
    small_rational().prop_filter("nonzero", |s| !s.is_zero())
}

/// alpha-polynomials of degree <= 6.
fn alpha_poly() -> impl Strategy<Value = AlphaSeries> {
    prop::collection::vec(small_rational(), 1..=7).prop_map(|c| AlphaSeries::polynomial(c, &params()).unwrap())
}

fn same(a: &AlphaSeries, b: &AlphaSeries) -> bool {
    let k = a.order().min(b.order());
    a.truncate(k) == b.truncate(k)
}

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(48)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn leibniz_rule(f in alpha_poly(), g in alpha_poly()) {
        let lhs = dqa_series(&f.mul(&g).unwrap());
        let rhs = f.shift_q().mul(&dqa_series(&g)).unwrap().add(&dqa_series(&f).mul(&g).unwrap()).unwrap();
        prop_assert!(same(&lhs, &rhs));
    }

    #[test]
    fn integration_by_parts(f in alpha_poly(), g in alpha_poly()) {
        let fg = f.mul(&g).unwrap();
        let lhs = iqa_series(&dqa_series(&f).mul(&g).unwrap());
        let rhs = fg.sub(&iqa_series(&f.shift_q().mul(&dqa_series(&g)).unwrap())).unwrap();
        let k = lhs.order().min(rhs.order());
        let diff = rhs.truncate(k).sub(&lhs.truncate(k)).unwrap();
        prop_assert_eq!(diff.coeff(0), fg.coeff(0));
        prop_assert!(diff.coeffs()[1..].iter().all(Scalar::is_zero));
    }

    #[test]
    fn integral_then_derivative_is_identity(f in alpha_poly()) {
        prop_assert!(same(&dqa_series(&iqa_series(&f)), &f));
    }

    #[test]
    fn pointwise_derivative_matches_series(f in alpha_poly(), x in nonzero_rational()) {
        let p = params();
        let df = dqa_series(&f);
        let pointwise = dqa_pointwise(|x: &Scalar| f.eval_at_x_alpha(x), &x, &p).unwrap();
        prop_assert_eq!(pointwise, df.eval_at_x_alpha(&x).unwrap());
    }

    #[test]
    fn shifted_power_vanishes_at_center(a in small_rational(), n in 1u32..=6) {
        let p = params();
        let basis = shifted_basis_expand(&a, n, &p).unwrap();
        prop_assert!(basis.eval_at_x_alpha(&a).unwrap().is_zero());
    }

    #[test]
    fn taylor_round_trip(f in alpha_poly(), a in small_rational()) {
        let p = params();
        let t = taylor_qa(&f, &a, &p).unwrap();
        prop_assert!(same(&t.reconstruct(&p).unwrap(), &f));
    }

    #[test]
    fn transform_is_linear(f in alpha_poly(), g in alpha_poly(), a in small_rational(), b in small_rational()) {
        let combo = f.scale(&a).unwrap().add(&g.scale(&b).unwrap()).unwrap();
        let lhs = natural_series(&combo);
        let rhs = natural_series(&f).scale(&a).add(&natural_series(&g).scale(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_theorem(f in alpha_poly(), n in 1usize..=3) {
        let init: Vec<Scalar> = (0..n).map(|j| dqa_series_n(&f, j).coeff(0)).collect();
        let lhs = transform_of_derivative(&natural_series(&f), n, &init).unwrap();
        prop_assert_eq!(lhs, natural_series(&dqa_series_n(&f, n)));
    }

    #[test]
    fn t_power_routes_agree(f in alpha_poly(), n in 0usize..=3) {
        let p = params();
        let r = natural_series(&f);
        let direct = natural_series(&f.mul_t_power(n));
        prop_assert_eq!(&tpower_transform_via_s(&r, n, &p).unwrap(), &direct);
        prop_assert_eq!(&tpower_transform_via_u(&r, n, &p).unwrap(), &direct);
        prop_assert_eq!(&bnk_form(&r, n, &p).unwrap(), &direct);
    }
}

/// Expressions over the invertible atoms with distinct rates per kind.
fn invertible_expr() -> impl Strategy<Value = TimeExpr> {
    let power = (nonzero_rational(), 0u32..=4).prop_map(|(c, n)| (c, TimeAtom::Power(n)));
    let exp = (nonzero_rational(), nonzero_rational()).prop_map(|(c, b)| (c, TimeAtom::Exp(b)));
    let trig = (nonzero_rational(), nonzero_rational(), 1i64..=5, 1i64..=3)
        .prop_map(|(c, s, n, d)| vec![(c, TimeAtom::Cos(ex(n, d))), (s, TimeAtom::Sin(ex(n, d)))]);
    (
        prop::collection::vec(power, 0..3),
        prop::collection::vec(exp, 0..3),
        prop::collection::vec(trig, 0..2),
    )
        .prop_map(|(a, b, c)| TimeExpr::from_terms(a.into_iter().chain(b).chain(c.into_iter().flatten())))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn inversion_round_trip(e in invertible_expr()) {
        let p = params();
        let r = natural_time_expr(&e, &p).unwrap();
        prop_assert_eq!(invert(&r, &p).unwrap(), e);
    }

    #[test]
    fn partial_fractions_recombine(e in invertible_expr()) {
        let p = params();
        let phi = natural_time_expr(&e, &p).unwrap().rational;
        let terms = partial_fractions(&phi).unwrap();
        prop_assert_eq!(recombine(&terms), phi);
    }

    #[test]
    fn json_round_trip_is_byte_identical(e in invertible_expr()) {
        let text = serde_json::to_string(&e).unwrap();
        let back: TimeExpr = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    /// Second-order problems with distinct rational characteristic roots.
    #[test]
    fn second_order_problems(r1 in -6i64..=6, r2 in -6i64..=6, y0 in small_rational(), y1 in small_rational()) {
        prop_assume!(r1 != r2);
        let p = params();
        // (w - r1)(w - r2) = w^2 - (r1 + r2) w + r1 r2
        let coeffs = vec![ex(1, 1), ex(-(r1 + r2), 1), ex(r1 * r2, 1)];
        let prob = ODEProblem::new(coeffs, TimeExpr::zero(), vec![y0, y1]).unwrap();
        let sol = solve_ivp(&prob, &p).unwrap();
        let res = residual_series(&prob, &sol, 16, &p).unwrap();
        prop_assert!(res.coeffs()[..=14].iter().all(Scalar::is_zero));
        prop_assert_eq!(initial_values(&sol, 2, &p).unwrap(), prob.init.clone());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn expansion_agrees_with_atomwise_evaluation(e in invertible_expr(), t in 0.0f64..0.005) {
        let p = params();
        let s = e.to_series(60, &p).unwrap();
        let a = series_eval(&s, t, 1e-9).unwrap().value;
        let b = e.eval(t, &p).unwrap();
        prop_assert!((a - b).abs() < 1e-10 * b.abs().max(1.0), "{} vs {}", a, b);
    }
}

#[test]
fn recombination_of_mixed_denominator() {
    let den = &(&Poly::from_ints(&[0, 0, 1], Mode::Exact) * &Poly::from_ints(&[5, 1], Mode::Exact))
        * &Poly::new(vec![ex(1, 9), ex(0, 1), ex(1, 1)], Mode::Exact);
    let phi = RationalFn::new(Poly::from_ints(&[7, -3, 0, 2], Mode::Exact), den).unwrap();
    assert_eq!(recombine(&partial_fractions(&phi).unwrap()), phi);
}
