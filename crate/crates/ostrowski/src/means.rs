//! Special means and the bound-catalogue consequences for them.
//!
//! The power family `t^s` with `s` in (0, 1) ties the Ostrowski functional
//! to the arithmetic mean `A` and generalized logarithmic mean `L_s`; the
//! natural logarithm ties the midpoint deviation to the identric mean `I`.
//! Both give closed-form left-hand sides that double as independent oracles
//! for the quadrature-based machinery.

use serde::{Deserialize, Serialize};

use crate::bounds::{
    self, check_d2_hypothesis, BoundContext, BoundResult, Equation, HypothesisMode, SParams,
};
use crate::convexity::Sense;
use crate::error::{Error, Result};
use crate::funcmodel::{sup_abs_d2, FunctionSpec, Interval};

/// `A(x, y) = (x + y)/2` for nonnegative arguments.
pub fn arithmetic_mean(x: f64, y: f64) -> Result<f64> {
    if !(x.is_finite() && y.is_finite() && x >= 0.0 && y >= 0.0) {
        return Err(Error::Domain(format!(
            "arithmetic mean needs finite nonnegative arguments, got ({x}, {y})"
        )));
    }
    Ok(0.5 * (x + y))
}

/// Identric mean `I(x, y) = (1/e) (y^y / x^x)^{1/(y-x)}` for positive
/// arguments, `I(x, x) = x`, evaluated in log space.
pub fn identric_mean(x: f64, y: f64) -> Result<f64> {
    if !(x.is_finite() && y.is_finite() && x > 0.0 && y > 0.0) {
        return Err(Error::Domain(format!(
            "identric mean needs finite positive arguments, got ({x}, {y})"
        )));
    }
    if x == y {
        return Ok(x);
    }
    Ok(((y * y.ln() - x * x.ln()) / (y - x) - 1.0).exp())
}

/// Generalized logarithmic mean
/// `L_p(x, y) = ((y^{p+1} - x^{p+1}) / ((p+1)(y-x)))^{1/p}` for positive
/// arguments, `L_p(x, x) = x`. The removable exponents `p = 0` (identric
/// limit) and `p = -1` (logarithmic limit) are rejected.
pub fn gen_log_mean(x: f64, y: f64, p: f64) -> Result<f64> {
    if !(x.is_finite() && y.is_finite() && x > 0.0 && y > 0.0) {
        return Err(Error::Domain(format!(
            "generalized logarithmic mean needs finite positive arguments, got ({x}, {y})"
        )));
    }
    if !p.is_finite() || p.abs() <= 1e-12 || (p + 1.0).abs() <= 1e-12 {
        return Err(Error::Param(format!(
            "exponent p = {p} is excluded (p = 0 and p = -1 are limiting cases)"
        )));
    }
    if x == y {
        return Ok(x);
    }
    let base = (y.powf(p + 1.0) - x.powf(p + 1.0)) / ((p + 1.0) * (y - x));
    Ok(base.powf(p.recip()))
}

/// Validated input of the special-mean propositions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeansInput {
    pub a: f64,
    pub b: f64,
    pub s: f64,
    /// Evaluation point; defaults to the arithmetic mean of `a` and `b`.
    pub x: Option<f64>,
    pub p: Option<f64>,
    pub q: Option<f64>,
}

impl MeansInput {
    pub fn new(
        a: f64,
        b: f64,
        s: f64,
        x: Option<f64>,
        p: Option<f64>,
        q: Option<f64>,
    ) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && 0.0 < a && a < b) {
            return Err(Error::Domain(format!("means need 0 < a < b, got a = {a}, b = {b}")));
        }
        SParams::new(s, p, q)?;
        if let Some(x) = x {
            if !(a <= x && x <= b) {
                return Err(Error::Domain(format!("x = {x} lies outside [{a}, {b}]")));
            }
        }
        Ok(MeansInput { a, b, s, x, p, q })
    }

    fn interval(&self) -> Interval {
        Interval::new(self.a, self.b).expect("validated in new")
    }

    fn point(&self) -> f64 {
        self.x.unwrap_or(0.5 * (self.a + self.b))
    }
}

/// Which closed form bounds the power-mean deviation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerPropVariant {
    /// Tight `M`-form of the s-convex bound (id ee1).
    Moment,
    /// Hölder `M`-form (id ee2, needs `p`).
    Holder,
    /// Power-mean `M`-form (id ee3, needs `q`).
    PowerMean,
}

/// Deviation of `x^s` from the generalized logarithmic mean:
///
/// ```text
/// | L_s(a,b)^s - x^s + s (x - A(a,b)) x^{s-1} |  <=  closed form in M
/// ```
///
/// with `M = sup |f''|` of `f(t) = t^s` over `[a, b]` and `s` in (0, 1).
/// The left side is exactly `|F(x)|` for that `f`, in closed form.
pub fn prop_power_bound(
    input: &MeansInput,
    variant: PowerPropVariant,
    ctx: &BoundContext,
) -> Result<BoundResult> {
    let MeansInput { a, b, s, .. } = *input;
    if s >= 1.0 {
        return Err(Error::Param(format!(
            "power-mean propositions need s in (0, 1), got {s}"
        )));
    }
    let iv = input.interval();
    let x = input.point();
    let f = FunctionSpec::PowerS(s);
    let m = sup_abs_d2(&f, iv)?;

    let big_a = arithmetic_mean(a, b)?;
    let lss = gen_log_mean(a, b, s)?.powf(s);
    let lhs = (lss - x.powf(s) + s * (x - big_a) * x.powf(s - 1.0)).abs();

    let sp = SParams::new(s, input.p, input.q)?;
    let (eq, power, rhs) = match variant {
        PowerPropVariant::Moment => {
            (Equation::MeanPower, 1.0, bounds::bound_sconvex_m(x, iv, s, m, false)?)
        }
        PowerPropVariant::Holder => {
            let (p, q) = sp.holder_pair()?;
            (Equation::MeanPowerHolder, q, bounds::bound_holder_m(x, iv, s, p, m)?)
        }
        PowerPropVariant::PowerMean => {
            let q = sp.power_mean_q()?;
            (Equation::MeanPowerPm, q, bounds::bound_powermean_m(x, iv, s, q, m)?)
        }
    };
    let hyp = match ctx.hypothesis {
        HypothesisMode::Assume => true,
        HypothesisMode::Supplied(v) => v,
        HypothesisMode::Check => {
            check_d2_hypothesis(&f, iv, s, power, Sense::Convex, ctx.convexity_grid)?
        }
    };
    Ok(BoundResult::new(eq, lhs, rhs, hyp, Some(x), ctx.tolerance))
}

/// Outcome of the identric-vs-arithmetic comparison, carrying both the
/// corrected bound and the bound as printed in circulation, whose bracket
/// is non-positive and therefore cannot dominate a nonzero left side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogIdentricReport {
    pub corrected: BoundResult,
    pub printed: BoundResult,
    pub printed_rhs_is_nonpositive: bool,
}

/// Deviation of the identric mean from the arithmetic mean:
///
/// ```text
/// | ln I(a,b) - ln A(a,b) |  <=  2^{(s-1)/q} (b-a)^2 / (2p+1)^{1/p}
///                               * ( 1/(3a+b)^2 + 1/(a+3b)^2 )
/// ```
///
/// (id p6, corrected sign). The widely printed variant negates the bracket,
/// which makes its right side nonpositive; it is reported alongside under
/// id p6_printed so the defect is visible in data.
pub fn prop_log_identric(input: &MeansInput, ctx: &BoundContext) -> Result<LogIdentricReport> {
    let MeansInput { a, b, s, .. } = *input;
    let iv = input.interval();
    let sp = SParams::new(s, input.p, input.q)?;
    let (p, q) = sp.holder_pair()?;

    let lhs = (identric_mean(a, b)?.ln() - arithmetic_mean(a, b)?.ln()).abs();
    let prefactor = 2f64.powf((s - 1.0) / q) * (b - a) * (b - a) / (2.0 * p + 1.0).powf(p.recip());
    let bracket = (3.0 * a + b).powi(-2) + (a + 3.0 * b).powi(-2);
    let corrected_rhs = prefactor * bracket;
    let printed_rhs = prefactor * (-bracket);

    let hyp = match ctx.hypothesis {
        HypothesisMode::Assume => true,
        HypothesisMode::Supplied(v) => v,
        HypothesisMode::Check => check_d2_hypothesis(
            &FunctionSpec::LogNatural,
            iv,
            s,
            q,
            Sense::Concave,
            ctx.convexity_grid,
        )?,
    };
    Ok(LogIdentricReport {
        corrected: BoundResult::new(
            Equation::MeanLogIdentric,
            lhs,
            corrected_rhs,
            hyp,
            None,
            ctx.tolerance,
        ),
        printed: BoundResult::new(
            Equation::MeanLogIdentricPrinted,
            lhs,
            printed_rhs,
            hyp,
            None,
            ctx.tolerance,
        ),
        printed_rhs_is_nonpositive: printed_rhs <= 0.0,
    })
}

#[cfg(test)]
// expected values below are frozen oracle output at full precision
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::kernels;
    use crate::quadrature::QuadratureConfig;

    fn ctx() -> BoundContext {
        BoundContext::default()
    }

    #[test]
    fn arithmetic_mean_basics() {
        assert_eq!(arithmetic_mean(1.0, 2.0).unwrap(), 1.5);
        assert_eq!(arithmetic_mean(0.0, 0.0).unwrap(), 0.0);
        assert!(arithmetic_mean(-1.0, 2.0).is_err());
    }

    #[test]
    fn identric_mean_closed_form() {
        let i = identric_mean(1.0, 2.0).unwrap();
        assert!((i - 4.0 / 1f64.exp()).abs() < 1e-12);
        assert_eq!(identric_mean(3.0, 3.0).unwrap(), 3.0);
        assert!((identric_mean(2.0, 1.0).unwrap() - i).abs() < 1e-15);
        assert!(identric_mean(0.0, 1.0).is_err());
    }

    #[test]
    fn identric_mean_is_the_exponential_of_the_log_average() {
        let iv = Interval::new(1.0, 2.0).unwrap();
        let mean_ln =
            kernels::interval_mean(&FunctionSpec::LogNatural, iv, &QuadratureConfig::default())
                .unwrap();
        assert!((identric_mean(1.0, 2.0).unwrap().ln() - mean_ln).abs() < 1e-11);
    }

    #[test]
    fn gen_log_mean_closed_forms() {
        let l = gen_log_mean(0.25, 1.0, 0.5).unwrap();
        assert!((l - (7.0 / 9.0) * (7.0 / 9.0)).abs() < 1e-12);
        // p = 1 is the arithmetic mean.
        assert!((gen_log_mean(1.0, 2.0, 1.0).unwrap() - 1.5).abs() < 1e-12);
        assert_eq!(gen_log_mean(2.0, 2.0, 0.5).unwrap(), 2.0);
        assert!(
            (gen_log_mean(1.0, 2.0, 0.5).unwrap() - gen_log_mean(2.0, 1.0, 0.5).unwrap()).abs()
                < 1e-14
        );
        assert!(gen_log_mean(1.0, 2.0, 0.0).is_err());
        assert!(gen_log_mean(1.0, 2.0, -1.0).is_err());
        assert!(gen_log_mean(0.0, 2.0, 0.5).is_err());
    }

    #[test]
    fn gen_log_mean_interpolates_and_orders() {
        // Nondecreasing in p, with the identric mean as the p -> 0 limit.
        let grid = [-0.5, -0.1, -1e-4, 1e-4, 0.5, 1.0, 2.0, 5.0];
        let (x, y) = (1.0, 2.0);
        let mut prev = f64::NEG_INFINITY;
        for p in grid {
            let l = gen_log_mean(x, y, p).unwrap();
            assert!(l >= prev - 1e-12, "L_p not monotone at p = {p}");
            prev = l;
        }
        let i = identric_mean(x, y).unwrap();
        assert!((gen_log_mean(x, y, 1e-4).unwrap() - i).abs() < 1e-3);
        assert!((gen_log_mean(x, y, -1e-4).unwrap() - i).abs() < 1e-3);
    }

    #[test]
    fn means_input_validation() {
        assert!(MeansInput::new(0.0, 1.0, 0.5, None, None, None).is_err());
        assert!(MeansInput::new(2.0, 1.0, 0.5, None, None, None).is_err());
        assert!(MeansInput::new(1.0, 2.0, 1.5, None, None, None).is_err());
        assert!(MeansInput::new(1.0, 2.0, 0.5, Some(3.0), None, None).is_err());
        assert!(MeansInput::new(1.0, 2.0, 0.5, Some(1.5), None, None).is_ok());
    }

    #[test]
    fn power_prop_moment_frozen_values() {
        let input = MeansInput::new(0.25, 1.0, 0.5, None, None, None).unwrap();
        let r = prop_power_bound(&input, PowerPropVariant::Moment, &ctx()).unwrap();
        assert_eq!(r.equation_id, "ee1");
        assert_eq!(r.x, Some(0.625));
        assert!((r.lhs - 0.012791637264317055).abs() < 1e-12, "lhs = {}", r.lhs);
        assert!((r.rhs - 0.061607142857142857).abs() < 1e-9, "rhs = {}", r.rhs);
        assert!(r.holds && r.hypothesis_checked);
    }

    #[test]
    fn power_prop_holder_and_powermean_frozen_values() {
        let h = MeansInput::new(0.25, 1.0, 0.5, None, Some(2.0), None).unwrap();
        let r = prop_power_bound(&h, PowerPropVariant::Holder, &ctx()).unwrap();
        assert_eq!(r.equation_id, "ee2");
        assert!((r.rhs - 0.07261843774138907).abs() < 1e-9, "rhs = {}", r.rhs);
        assert!(r.holds && r.hypothesis_checked);

        let pm = MeansInput::new(0.25, 1.0, 0.5, None, None, Some(2.0)).unwrap();
        let r = prop_power_bound(&pm, PowerPropVariant::PowerMean, &ctx()).unwrap();
        assert_eq!(r.equation_id, "ee3");
        assert!((r.rhs - 0.05373857852072914).abs() < 1e-9, "rhs = {}", r.rhs);
        assert!(r.holds && r.hypothesis_checked);
    }

    #[test]
    fn power_prop_lhs_matches_the_functional() {
        let iv = Interval::new(0.25, 1.0).unwrap();
        for (s, x) in [(0.5, 0.3), (0.5, 0.625), (0.25, 0.9), (0.75, 1.0)] {
            let input = MeansInput::new(0.25, 1.0, s, Some(x), None, None).unwrap();
            let r = prop_power_bound(&input, PowerPropVariant::Moment, &ctx()).unwrap();
            let f = FunctionSpec::PowerS(s);
            let functional =
                kernels::ostrowski_functional(&f, x, iv, &QuadratureConfig::default()).unwrap();
            assert!(
                (r.lhs - functional.abs()).abs() < 1e-9,
                "closed form {} vs quadrature {} at s={s}, x={x}",
                r.lhs,
                functional.abs()
            );
        }
    }

    #[test]
    fn power_prop_lhs_vanishes_in_the_affine_limit() {
        let input = MeansInput::new(0.25, 1.0, 1.0 - 1e-7, Some(0.4), None, None).unwrap();
        let r = prop_power_bound(&input, PowerPropVariant::Moment, &ctx()).unwrap();
        assert!(r.lhs < 1e-6, "lhs = {} should shrink as s -> 1", r.lhs);
        let at_one = MeansInput::new(0.25, 1.0, 1.0, None, None, None).unwrap();
        assert!(prop_power_bound(&at_one, PowerPropVariant::Moment, &ctx()).is_err());
    }

    #[test]
    fn log_identric_prop_frozen_values_and_sign_flag() {
        let input = MeansInput::new(1.0, 2.0, 1.0, None, Some(2.0), None).unwrap();
        let rep = prop_log_identric(&input, &ctx()).unwrap();
        assert!(
            (rep.corrected.lhs - 0.019170746988273763).abs() < 1e-12,
            "lhs = {}",
            rep.corrected.lhs
        );
        assert!(
            (rep.corrected.rhs - 0.027015351891426031).abs() < 1e-12,
            "rhs = {}",
            rep.corrected.rhs
        );
        assert!(rep.corrected.holds);
        // The second-derivative profile of ln is convex, so the s-concavity
        // hypothesis is honestly reported as unmet.
        assert!(!rep.corrected.hypothesis_checked);
        assert!(rep.printed_rhs_is_nonpositive);
        assert!((rep.printed.rhs + rep.corrected.rhs).abs() < 1e-15);
        assert!(!rep.printed.holds);
        assert_eq!(rep.printed.equation_id, "p6_printed");
    }
}
