//! Structural properties checked over randomized inputs: algebraic
//! identities behind the bounds, parameter-limit reductions, quadrature
//! consistency, and mean orderings.

use ostrowski::bounds::{
    self, cerone_rhs, BoundContext, Equation, EquationParams, HypothesisMode, MBound,
};
use ostrowski::funcmodel::{FunctionSpec, Interval};
use ostrowski::kernels;
use ostrowski::means;
use ostrowski::quadrature::{integrate, QuadratureConfig};
use proptest::prelude::*;

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

fn assume_ctx() -> BoundContext {
    BoundContext { hypothesis: HypothesisMode::Assume, ..BoundContext::default() }
}

fn small_poly() -> impl Strategy<Value = FunctionSpec> {
    prop::collection::vec(-3.0f64..3.0, 1..6).prop_map(FunctionSpec::Polynomial)
}

fn interval_and_fraction() -> impl Strategy<Value = (f64, f64, f64)> {
    (-2.0f64..2.0, 0.1f64..3.0, 0.0f64..=1.0)
}

proptest! {
    #[test]
    fn cubic_weight_sum_matches_its_closed_form(
        (a, w, t) in interval_and_fraction()
    ) {
        let b = a + w;
        let x = a + w * t;
        let left = (x - a).powi(3) + (b - x).powi(3);
        let u = x - 0.5 * (a + b);
        let right = w * (w * w / 4.0 + 3.0 * u * u);
        prop_assert!(rel_close(left, right, 1e-12), "{left} vs {right}");
    }

    #[test]
    fn sup_norm_form_at_s1_is_the_plain_second_derivative_bound(
        (a, w, t) in interval_and_fraction(),
        m in 0.0f64..5.0
    ) {
        let iv = Interval::new(a, a + w).unwrap();
        let x = a + w * t;
        let tight = bounds::bound_sconvex_m(x, iv, 1.0, m, false).unwrap();
        prop_assert!(rel_close(tight, cerone_rhs(x, iv, m, false), 1e-12));
        let relaxed = bounds::bound_sconvex_m(x, iv, 1.0, m, true).unwrap();
        prop_assert!(rel_close(relaxed, cerone_rhs(x, iv, m, true), 1e-12));
    }

    #[test]
    fn conjugate_exponents_satisfy_the_duality(p in 1.0001f64..50.0) {
        let q = bounds::conjugate_exponent(p).unwrap();
        prop_assert!((1.0 / p + 1.0 / q - 1.0).abs() < 1e-12);
    }

    #[test]
    fn generalized_log_mean_is_monotone_in_its_exponent(
        x in 0.05f64..5.0,
        d in 0.01f64..5.0,
        p1 in -0.9f64..3.0,
        p2 in -0.9f64..3.0,
    ) {
        let excluded = |p: f64| p.abs() <= 1e-3 || (p + 1.0).abs() <= 1e-3;
        prop_assume!(!excluded(p1) && !excluded(p2));
        let (lo, hi) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
        let y = x + d;
        let l_lo = means::gen_log_mean(x, y, lo).unwrap();
        let l_hi = means::gen_log_mean(x, y, hi).unwrap();
        prop_assert!(l_lo <= l_hi + 1e-9 * (1.0 + l_hi.abs()), "{l_lo} > {l_hi}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn power_mean_bound_at_q1_reduces_to_the_moment_bound(
        f in small_poly(),
        (a, w, t) in interval_and_fraction(),
        s in 0.05f64..=1.0,
    ) {
        let iv = Interval::new(a, a + w).unwrap();
        let x = a + w * t;
        let ctx = assume_ctx();
        let pm = bounds::evaluate_equation(
            Equation::PowerMean,
            &f,
            Some(x),
            iv,
            &EquationParams { s: Some(s), q: Some(1.0), ..EquationParams::default() },
            &ctx,
        )
        .unwrap();
        let sc = bounds::evaluate_equation(
            Equation::SConvex,
            &f,
            Some(x),
            iv,
            &EquationParams { s: Some(s), ..EquationParams::default() },
            &ctx,
        )
        .unwrap();
        prop_assert!(rel_close(pm.rhs, sc.rhs, 1e-12), "{} vs {}", pm.rhs, sc.rhs);
        prop_assert_eq!(pm.lhs, sc.lhs);
    }

    #[test]
    fn midpoint_forms_match_their_parents_at_the_midpoint(
        f in small_poly(),
        (a, w, _) in interval_and_fraction(),
        s in 0.05f64..=1.0,
        p in 1.1f64..5.0,
    ) {
        let iv = Interval::new(a, a + w).unwrap();
        let mid = iv.midpoint();
        let ctx = assume_ctx();

        let parent = bounds::evaluate_equation(
            Equation::Cerone,
            &f,
            Some(mid),
            iv,
            &EquationParams::default(),
            &ctx,
        )
        .unwrap();
        let specialized = bounds::evaluate_equation(
            Equation::Midpoint,
            &f,
            None,
            iv,
            &EquationParams::default(),
            &ctx,
        )
        .unwrap();
        prop_assert!(rel_close(specialized.rhs, parent.rhs, 1e-12));
        prop_assert!(rel_close(specialized.lhs, parent.lhs, 1e-12));

        let parent = bounds::evaluate_equation(
            Equation::SConcave,
            &f,
            Some(mid),
            iv,
            &EquationParams { s: Some(s), p: Some(p), ..EquationParams::default() },
            &ctx,
        )
        .unwrap();
        let specialized = bounds::evaluate_equation(
            Equation::SConcaveMidpoint,
            &f,
            None,
            iv,
            &EquationParams { s: Some(s), p: Some(p), ..EquationParams::default() },
            &ctx,
        )
        .unwrap();
        prop_assert!(
            rel_close(specialized.rhs, parent.rhs, 1e-12),
            "{} vs {}", specialized.rhs, parent.rhs
        );
        prop_assert!(rel_close(specialized.lhs, parent.lhs, 1e-12));
    }

    #[test]
    fn quadrature_is_additive_over_a_split(
        f in small_poly(),
        (a, w, t) in interval_and_fraction(),
    ) {
        prop_assume!(t > 0.01 && t < 0.99);
        let b = a + w;
        let c = a + w * t;
        let cfg = QuadratureConfig::default();
        let g = |u: f64| f.eval(u).unwrap_or(f64::NAN);
        let whole = integrate(g, Interval::new(a, b).unwrap(), &cfg).unwrap();
        let left = integrate(g, Interval::new(a, c).unwrap(), &cfg).unwrap();
        let right = integrate(g, Interval::new(c, b).unwrap(), &cfg).unwrap();
        let sum = left.value + right.value;
        prop_assert!(
            (whole.value - sum).abs() <= 3.0 * cfg.abs_tol + 1e-12 * whole.value.abs(),
            "{} vs {}", whole.value, sum
        );
    }

    #[test]
    fn kernel_identity_holds_for_random_cubics(
        f in prop::collection::vec(-3.0f64..3.0, 4..5).prop_map(FunctionSpec::Polynomial),
        (a, w, t) in interval_and_fraction(),
    ) {
        let iv = Interval::new(a, a + w).unwrap();
        let x = a + w * t;
        let e = kernels::identity_residual(&f, x, iv, &QuadratureConfig::default()).unwrap();
        prop_assert!(e.residual < 1e-8, "residual {}", e.residual);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn power_mean_proposition_lhs_agrees_with_the_functional(
        s in 0.1f64..0.9,
        a in 0.05f64..1.0,
        w in 0.1f64..2.0,
        t in 0.0f64..=1.0,
    ) {
        let b = a + w;
        let x = a + w * t;
        let input = means::MeansInput::new(a, b, s, Some(x), None, None).unwrap();
        let r = means::prop_power_bound(&input, means::PowerPropVariant::Moment, &assume_ctx())
            .unwrap();
        let f = FunctionSpec::PowerS(s);
        let iv = Interval::new(a, b).unwrap();
        let functional =
            kernels::ostrowski_functional(&f, x, iv, &QuadratureConfig::default()).unwrap();
        prop_assert!(
            (r.lhs - functional.abs()).abs() < 1e-8,
            "closed form {} vs quadrature {}", r.lhs, functional.abs()
        );
    }

    #[test]
    fn identric_mean_sits_below_the_arithmetic_mean(
        x in 0.01f64..50.0,
        y in 0.01f64..50.0,
    ) {
        let i = means::identric_mean(x, y).unwrap();
        let a = means::arithmetic_mean(x, y).unwrap();
        prop_assert!(i <= a + 1e-12 * (1.0 + a), "I = {i} > A = {a}");
    }

    #[test]
    fn given_m_below_the_true_sup_is_reported_as_uncovered(
        (a, w, t) in interval_and_fraction(),
    ) {
        let iv = Interval::new(a, a + w).unwrap();
        let x = a + w * t;
        let f = FunctionSpec::Polynomial(vec![0.0, 0.0, 0.0, 1.0]);
        let sup = ostrowski::funcmodel::sup_abs_d2(&f, iv).unwrap();
        let r = bounds::evaluate_equation(
            Equation::SConvexBoundedTight,
            &f,
            Some(x),
            iv,
            &EquationParams {
                s: Some(1.0),
                m: MBound::Given(0.5 * sup),
                ..EquationParams::default()
            },
            &BoundContext::default(),
        )
        .unwrap();
        prop_assert!(!r.hypothesis_checked, "undersized M must clear the flag");
    }
}
