//! The bound catalogue.
//!
//! Every entry bounds either the Ostrowski functional `|F(x)|` (see
//! [`crate::kernels`]), the midpoint deviation `|f((a+b)/2) - mean|`, the
//! perturbed-trapezoid defect, or one side of the Hermite-Hadamard pair.
//! Entries are addressed by short stable ids:
//!
//! | id      | hypothesis on `[a, b]`                | right-hand side driver              |
//! |---------|---------------------------------------|-------------------------------------|
//! | classic | bounded `f'`                          | `sup f'` and the distance of x from the midpoint |
//! | e1.2    | bounded `f''`                         | `sup f''`, tight or relaxed constant |
//! | e1.3    | bounded `f''`                          | `sup f'' (b-a)^2/24` at the midpoint |
//! | e1.1a/b | `f` s-convex and nonnegative          | Hermite-Hadamard pair                |
//! | e2.5    | `abs(f'')` s-convex                       | moment-weighted `f''` samples        |
//! | e2.6a/b | `abs(f'')` s-convex and `<= M`            | closed form in `M`, tight or relaxed |
//! | e2.7    | `abs(f'')^q` s-convex, `1/p + 1/q = 1`    | Hölder split of the kernel integral  |
//! | e2.8    | as e2.7 plus `abs(f'') <= M`              | closed form in `M`                   |
//! | teo3    | `abs(f'')^q` s-convex, `q >= 1`           | power-mean split                     |
//! | cor6    | as teo3 plus `abs(f'') <= M`              | closed form in `M`                   |
//! | e2.9    | `abs(f'')^q` s-concave, `p > 1`           | `f''` at the two half-way points     |
//! | e2.12   | as e2.9, evaluated at the midpoint    | `f''` at the two quarter points      |
//! | cor5    | as e2.7 plus `abs(f'') <= M`              | perturbed trapezoid, Hölder constant |
//! | cor8    | as teo3 plus `abs(f'') <= M`              | perturbed trapezoid, power-mean constant |
//! | ee1-ee3 | special means of powers               | see [`crate::means`]                 |
//! | p6      | identric vs arithmetic mean           | see [`crate::means`]                 |
//!
//! Hypothesis gating is advisory: a result whose hypothesis fails is still
//! evaluated and reported, with `hypothesis_checked = false`, so impostor
//! inputs surface as data instead of being silently suppressed.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::convexity::{self, Sense, Verdict};
use crate::error::{Error, Result};
use crate::funcmodel::{sup_abs_d1, sup_abs_d2, FunctionSpec, Interval};
use crate::kernels;
use crate::quadrature::{moment_beta, moment_s2, QuadratureConfig};

/// Default relative slack for `holds`: `margin >= -tol * (1 + |rhs|)`.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Default lattice resolution for hypothesis checks.
pub const DEFAULT_CONVEXITY_GRID: usize = 21;

pub(crate) fn validate_s(s: f64) -> Result<()> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::Param(format!("s must be in (0, 1], got {s}")));
    }
    Ok(())
}

fn validate_p(p: f64) -> Result<()> {
    if !(p.is_finite() && p > 1.0) {
        return Err(Error::Param(format!("p must be a finite number > 1, got {p}")));
    }
    Ok(())
}

fn validate_q(q: f64) -> Result<()> {
    if !(q.is_finite() && q >= 1.0) {
        return Err(Error::Param(format!("q must be a finite number >= 1, got {q}")));
    }
    Ok(())
}

/// Conjugate Hölder exponent `q = p / (p - 1)`.
pub fn conjugate_exponent(p: f64) -> Result<f64> {
    validate_p(p)?;
    Ok(p / (p - 1.0))
}

/// Validated `(s, p, q)` triple. `q` is derived from `p` when only `p` is
/// given; when both are supplied they must be conjugate to within 1e-12.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SParams {
    pub s: f64,
    pub p: Option<f64>,
    pub q: Option<f64>,
}

impl SParams {
    pub fn new(s: f64, p: Option<f64>, q: Option<f64>) -> Result<Self> {
        validate_s(s)?;
        if let Some(p) = p {
            validate_p(p)?;
        }
        if let (Some(p), Some(q)) = (p, q) {
            validate_q(q)?;
            if (p.recip() + q.recip() - 1.0).abs() > 1e-12 {
                return Err(Error::Param(format!(
                    "p = {p} and q = {q} are not conjugate (1/p + 1/q must be 1)"
                )));
            }
        } else if let Some(q) = q {
            validate_q(q)?;
        }
        Ok(SParams { s, p, q })
    }

    /// `(p, q)` for the Hölder-type bounds: `p` required, `q` derived.
    pub fn holder_pair(&self) -> Result<(f64, f64)> {
        let p = self
            .p
            .ok_or_else(|| Error::Param("this bound needs the Hölder exponent p".into()))?;
        Ok((p, conjugate_exponent(p)?))
    }

    /// `q` for the power-mean bounds, which take no `p`.
    pub fn power_mean_q(&self) -> Result<f64> {
        if self.p.is_some() {
            return Err(Error::Param(
                "power-mean bounds take q directly; drop p".into(),
            ));
        }
        self.q
            .ok_or_else(|| Error::Param("this bound needs the power-mean exponent q".into()))
    }
}

/// Stable identifier of one catalogue entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Equation {
    Classic,
    Cerone,
    Midpoint,
    HadamardLeft,
    HadamardRight,
    SConvex,
    SConvexBoundedTight,
    SConvexBoundedRelaxed,
    Holder,
    HolderBounded,
    PowerMean,
    PowerMeanBounded,
    SConcave,
    SConcaveMidpoint,
    TrapezoidHolder,
    TrapezoidPowerMean,
    MeanPower,
    MeanPowerHolder,
    MeanPowerPm,
    MeanLogIdentric,
    MeanLogIdentricPrinted,
}

/// Which exponent family an equation consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentKind {
    Neither,
    HolderP,
    PowerMeanQ,
}

/// What has to hold for an equation's conclusion to be guaranteed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HypKind {
    /// Nothing beyond what evaluation itself verifies.
    None,
    /// `|f''|^power` is s-convex on the interval.
    D2SConvex(f64),
    /// `|f''|^power` is s-concave on the interval.
    D2SConcave(f64),
    /// `f` itself is s-convex and nonnegative.
    ValueSConvexNonneg,
}

impl Equation {
    pub fn id(self) -> &'static str {
        match self {
            Equation::Classic => "classic",
            Equation::Cerone => "e1.2",
            Equation::Midpoint => "e1.3",
            Equation::HadamardLeft => "e1.1a",
            Equation::HadamardRight => "e1.1b",
            Equation::SConvex => "e2.5",
            Equation::SConvexBoundedTight => "e2.6a",
            Equation::SConvexBoundedRelaxed => "e2.6b",
            Equation::Holder => "e2.7",
            Equation::HolderBounded => "e2.8",
            Equation::PowerMean => "teo3",
            Equation::PowerMeanBounded => "cor6",
            Equation::SConcave => "e2.9",
            Equation::SConcaveMidpoint => "e2.12",
            Equation::TrapezoidHolder => "cor5",
            Equation::TrapezoidPowerMean => "cor8",
            Equation::MeanPower => "ee1",
            Equation::MeanPowerHolder => "ee2",
            Equation::MeanPowerPm => "ee3",
            Equation::MeanLogIdentric => "p6",
            Equation::MeanLogIdentricPrinted => "p6_printed",
        }
    }

    /// Every equation the campaign runner can evaluate directly.
    pub fn campaign_catalogue() -> &'static [Equation] {
        &[
            Equation::Classic,
            Equation::Cerone,
            Equation::Midpoint,
            Equation::HadamardLeft,
            Equation::HadamardRight,
            Equation::SConvex,
            Equation::SConvexBoundedTight,
            Equation::SConvexBoundedRelaxed,
            Equation::Holder,
            Equation::HolderBounded,
            Equation::PowerMean,
            Equation::PowerMeanBounded,
            Equation::SConcave,
            Equation::SConcaveMidpoint,
            Equation::TrapezoidHolder,
            Equation::TrapezoidPowerMean,
        ]
    }

    /// Whether the bound has a free evaluation point `x`.
    pub fn takes_x(self) -> bool {
        matches!(
            self,
            Equation::Classic
                | Equation::Cerone
                | Equation::SConvex
                | Equation::SConvexBoundedTight
                | Equation::SConvexBoundedRelaxed
                | Equation::Holder
                | Equation::HolderBounded
                | Equation::PowerMean
                | Equation::PowerMeanBounded
                | Equation::SConcave
                | Equation::MeanPower
                | Equation::MeanPowerHolder
                | Equation::MeanPowerPm
        )
    }

    pub fn takes_s(self) -> bool {
        !matches!(self, Equation::Classic | Equation::Cerone | Equation::Midpoint)
    }

    pub fn exponent(self) -> ExponentKind {
        match self {
            Equation::Holder
            | Equation::HolderBounded
            | Equation::SConcave
            | Equation::SConcaveMidpoint
            | Equation::TrapezoidHolder
            | Equation::MeanPowerHolder
            | Equation::MeanLogIdentric
            | Equation::MeanLogIdentricPrinted => ExponentKind::HolderP,
            Equation::PowerMean
            | Equation::PowerMeanBounded
            | Equation::TrapezoidPowerMean
            | Equation::MeanPowerPm => ExponentKind::PowerMeanQ,
            _ => ExponentKind::Neither,
        }
    }

    /// The hypothesis the conclusion rests on, given resolved exponents.
    pub fn hypothesis(self, p: Option<f64>, q: Option<f64>) -> Result<HypKind> {
        Ok(match self {
            Equation::Classic | Equation::Cerone | Equation::Midpoint => HypKind::None,
            Equation::HadamardLeft | Equation::HadamardRight => HypKind::ValueSConvexNonneg,
            Equation::SConvex
            | Equation::SConvexBoundedTight
            | Equation::SConvexBoundedRelaxed => HypKind::D2SConvex(1.0),
            Equation::Holder | Equation::HolderBounded | Equation::TrapezoidHolder => {
                let p = p.ok_or_else(|| Error::Param("hypothesis needs p".into()))?;
                HypKind::D2SConvex(conjugate_exponent(p)?)
            }
            Equation::PowerMean | Equation::PowerMeanBounded | Equation::TrapezoidPowerMean => {
                let q = q.ok_or_else(|| Error::Param("hypothesis needs q".into()))?;
                HypKind::D2SConvex(q)
            }
            Equation::SConcave | Equation::SConcaveMidpoint => {
                let p = p.ok_or_else(|| Error::Param("hypothesis needs p".into()))?;
                HypKind::D2SConcave(conjugate_exponent(p)?)
            }
            Equation::MeanPower => HypKind::D2SConvex(1.0),
            Equation::MeanPowerHolder | Equation::MeanLogIdentric
            | Equation::MeanLogIdentricPrinted => {
                let p = p.ok_or_else(|| Error::Param("hypothesis needs p".into()))?;
                match self {
                    Equation::MeanPowerHolder => HypKind::D2SConvex(conjugate_exponent(p)?),
                    _ => HypKind::D2SConcave(conjugate_exponent(p)?),
                }
            }
            Equation::MeanPowerPm => {
                let q = q.ok_or_else(|| Error::Param("hypothesis needs q".into()))?;
                HypKind::D2SConvex(q)
            }
        })
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Equation {
    type Err = Error;

    fn from_str(id: &str) -> Result<Self> {
        Ok(match id {
            "classic" => Equation::Classic,
            "e1.2" => Equation::Cerone,
            "e1.3" => Equation::Midpoint,
            "e1.1a" => Equation::HadamardLeft,
            "e1.1b" => Equation::HadamardRight,
            "e2.5" => Equation::SConvex,
            "e2.6" | "e2.6a" => Equation::SConvexBoundedTight,
            "e2.6b" => Equation::SConvexBoundedRelaxed,
            "e2.7" => Equation::Holder,
            "e2.8" => Equation::HolderBounded,
            "teo3" => Equation::PowerMean,
            "cor6" => Equation::PowerMeanBounded,
            "e2.9" => Equation::SConcave,
            "e2.12" => Equation::SConcaveMidpoint,
            "cor5" => Equation::TrapezoidHolder,
            "cor8" => Equation::TrapezoidPowerMean,
            "ee1" => Equation::MeanPower,
            "ee2" => Equation::MeanPowerHolder,
            "ee3" => Equation::MeanPowerPm,
            "p6" => Equation::MeanLogIdentric,
            "p6_printed" => Equation::MeanLogIdentricPrinted,
            "e1.1" => {
                return Err(Error::Config(
                    "e1.1 is a pair; use e1.1a (lower) or e1.1b (upper)".into(),
                ))
            }
            other => return Err(Error::Config(format!("unknown equation id {other:?}"))),
        })
    }
}

/// One verified (or refuted) inequality instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub equation_id: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`; negative means the inequality failed numerically.
    pub margin: f64,
    /// `margin >= -tolerance * (1 + |rhs|)`.
    pub holds: bool,
    /// True when the hypothesis the bound rests on was verified (or the
    /// equation has none); false when it was checked and found violated or
    /// could not be confirmed.
    pub hypothesis_checked: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
}

impl BoundResult {
    pub fn new(
        eq: Equation,
        lhs: f64,
        rhs: f64,
        hypothesis_checked: bool,
        x: Option<f64>,
        tolerance: f64,
    ) -> Self {
        let margin = rhs - lhs;
        BoundResult {
            equation_id: eq.id().to_string(),
            lhs,
            rhs,
            margin,
            holds: margin >= -tolerance * (1.0 + rhs.abs()),
            hypothesis_checked,
            x,
        }
    }
}

/// How an operation should obtain the hypothesis flag.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum HypothesisMode {
    /// Run the lattice checker.
    #[default]
    Check,
    /// Skip checking and mark the hypothesis as satisfied (negative-control
    /// mode: lets impostor inputs produce countable violations).
    Assume,
    /// The caller already determined the verdict (used by the campaign
    /// runner to share one check across many cells).
    Supplied(bool),
}

/// Shared evaluation settings for the bound operations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundContext {
    pub quad: QuadratureConfig,
    pub tolerance: f64,
    pub convexity_grid: usize,
    pub hypothesis: HypothesisMode,
}

impl Default for BoundContext {
    fn default() -> Self {
        BoundContext {
            quad: QuadratureConfig::default(),
            tolerance: DEFAULT_TOLERANCE,
            convexity_grid: DEFAULT_CONVEXITY_GRID,
            hypothesis: HypothesisMode::Check,
        }
    }
}

/// Checks s-convexity or s-concavity of `|f''|^power` on the interval.
pub fn check_d2_hypothesis(
    f: &FunctionSpec,
    iv: Interval,
    s: f64,
    power: f64,
    sense: Sense,
    grid_n: usize,
) -> Result<bool> {
    let g = |t: f64| {
        let v = f.eval_d2(t).map(f64::abs).unwrap_or(f64::NAN);
        if power == 1.0 {
            v
        } else {
            v.powf(power)
        }
    };
    let report = match sense {
        Sense::Convex => convexity::check_s_convex(g, s, iv, grid_n)?,
        Sense::Concave => convexity::check_s_concave(g, s, iv, grid_n)?,
    };
    Ok(report.verdict == Verdict::Satisfied)
}

fn resolve_hypothesis(
    ctx: &BoundContext,
    f: &FunctionSpec,
    iv: Interval,
    kind: HypKind,
    s: Option<f64>,
) -> Result<bool> {
    match ctx.hypothesis {
        HypothesisMode::Assume => Ok(true),
        HypothesisMode::Supplied(v) => Ok(v),
        HypothesisMode::Check => match kind {
            HypKind::None => Ok(true),
            HypKind::D2SConvex(pow) => {
                let s = s.ok_or_else(|| Error::Param("hypothesis check needs s".into()))?;
                check_d2_hypothesis(f, iv, s, pow, Sense::Convex, ctx.convexity_grid)
            }
            HypKind::D2SConcave(pow) => {
                let s = s.ok_or_else(|| Error::Param("hypothesis check needs s".into()))?;
                check_d2_hypothesis(f, iv, s, pow, Sense::Concave, ctx.convexity_grid)
            }
            HypKind::ValueSConvexNonneg => {
                let s = s.ok_or_else(|| Error::Param("hypothesis check needs s".into()))?;
                convexity::check_value_hypothesis(f, s, iv, ctx.convexity_grid)
            }
        },
    }
}

/// A uniform-norm parameter for the closed-form bounds: computed or given.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum MBound {
    /// Use `sup |f''|` over the interval.
    #[default]
    Auto,
    /// Trust the caller's value; the hypothesis flag then also records
    /// whether it really dominates `sup |f''|`.
    Given(f64),
}

fn resolve_m(f: &FunctionSpec, iv: Interval, m: MBound) -> Result<(f64, bool)> {
    match m {
        MBound::Auto => Ok((sup_abs_d2(f, iv)?, true)),
        MBound::Given(v) => {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::Param(format!("M must be finite and >= 0, got {v}")));
            }
            match sup_abs_d2(f, iv) {
                Ok(sup) => Ok((v, v >= sup - 1e-9 * (1.0 + sup))),
                Err(Error::NonFinite(_)) | Err(Error::Domain(_)) => Ok((v, false)),
                Err(e) => Err(e),
            }
        }
    }
}

fn require_inside(x: f64, iv: Interval) -> Result<()> {
    if !iv.contains(x) {
        return Err(Error::Domain(format!("x = {x} lies outside {iv}")));
    }
    Ok(())
}

fn abs_lhs(f: &FunctionSpec, x: f64, iv: Interval, ctx: &BoundContext) -> Result<f64> {
    Ok(kernels::ostrowski_functional(f, x, iv, &ctx.quad)?.abs())
}

/// Classical first-derivative bound:
/// `|f(x) - mean| <= (1/4 + ((x - mid)/(b-a))^2) (b-a) sup|f'|`.
pub fn bound_classic(
    f: &FunctionSpec,
    x: f64,
    iv: Interval,
    ctx: &BoundContext,
) -> Result<BoundResult> {
    require_inside(x, iv)?;
    let m1 = sup_abs_d1(f, iv)?;
    let u = (x - iv.midpoint()) / iv.width();
    let rhs = (0.25 + u * u) * iv.width() * m1;
    let lhs = kernels::classic_lhs(f, x, iv, &ctx.quad)?;
    Ok(BoundResult::new(Equation::Classic, lhs, rhs, true, Some(x), ctx.tolerance))
}

/// Right-hand side of the second-derivative sup-norm bound.
pub fn cerone_rhs(x: f64, iv: Interval, m: f64, relaxed: bool) -> f64 {
    let w = iv.width();
    if relaxed {
        w * w / 6.0 * m
    } else {
        let d = x - iv.midpoint();
        (w * w / 24.0 + 0.5 * d * d) * m
    }
}

/// Second-derivative sup-norm bound on `|F(x)|`.
pub fn bound_cerone(
    f: &FunctionSpec,
    x: f64,
    iv: Interval,
    relaxed: bool,
    ctx: &BoundContext,
) -> Result<BoundResult> {
    require_inside(x, iv)?;
    let m = sup_abs_d2(f, iv)?;
    let rhs = cerone_rhs(x, iv, m, relaxed);
    let lhs = abs_lhs(f, x, iv, ctx)?;
    Ok(BoundResult::new(Equation::Cerone, lhs, rhs, true, Some(x), ctx.tolerance))
}

/// Midpoint form: `|f(mid) - mean| <= sup|f''| (b-a)^2 / 24`.
pub fn bound_midpoint(f: &FunctionSpec, iv: Interval, ctx: &BoundContext) -> Result<BoundResult> {
    let m = sup_abs_d2(f, iv)?;
    let w = iv.width();
    let rhs = m * w * w / 24.0;
    let mid = iv.midpoint();
    let mean = kernels::interval_mean(f, iv, &ctx.quad)?;
    let lhs = (mean - f.eval(mid)?).abs();
    Ok(BoundResult::new(Equation::Midpoint, lhs, rhs, true, Some(mid), ctx.tolerance))
}

/// Moment-weighted bound for s-convex `|f''|`:
/// `|F(x)| <= (1/(2(b-a))) * sum over both sides of
///  (side)^3 [ |f''(x)|/(s+3) + 2 |f''(endpoint)| / ((s+1)(s+2)(s+3)) ]`.
pub fn bound_sconvex(
    f: &FunctionSpec,
    x: f64,
    iv: Interval,
    s: f64,
    ctx: &BoundContext,
) -> Result<BoundResult> {
    require_inside(x, iv)?;
    validate_s(s)?;
    let ms = moment_s2(s)?;
    let mb = moment_beta(s)?;
    let d2x = f.eval_d2(x)?.abs();
    let d2a = f.eval_d2(iv.a())?.abs();
    let d2b = f.eval_d2(iv.b())?.abs();
    let rhs = ((d2x * ms + d2a * mb) * (x - iv.a()).powi(3)
        + (d2x * ms + d2b * mb) * (iv.b() - x).powi(3))
        / (2.0 * iv.width());
    let lhs = abs_lhs(f, x, iv, ctx)?;
    let hyp = resolve_hypothesis(ctx, f, iv, HypKind::D2SConvex(1.0), Some(s))?;
    Ok(BoundResult::new(Equation::SConvex, lhs, rhs, hyp, Some(x), ctx.tolerance))
}

/// Closed form of the s-convex bound once `|f''| <= M`:
/// tight `3 M r(s) [ (b-a)^2/24 + (x-mid)^2/2 ]`, relaxed `M r(s) (b-a)^2/2`,
/// with `r(s) = (s^2+3s+4)/((s+1)(s+2)(s+3))`.
pub fn bound_sconvex_m(x: f64, iv: Interval, s: f64, m: f64, relaxed: bool) -> Result<f64> {
    validate_s(s)?;
    if !(m.is_finite() && m >= 0.0) {
        return Err(Error::Param(format!("M must be finite and >= 0, got {m}")));
    }
    let ratio = (s * s + 3.0 * s + 4.0) / ((s + 1.0) * (s + 2.0) * (s + 3.0));
    let w = iv.width();
    if relaxed {
        Ok(m * w * w / 2.0 * ratio)
    } else {
        require_inside(x, iv)?;
        let d = x - iv.midpoint();
        Ok(3.0 * m * ratio * (w * w / 24.0 + 0.5 * d * d))
    }
}

/// Full result for the `M`-form s-convex bound (ids e2.6a / e2.6b).
pub fn bound_sconvex_bounded(
    f: &FunctionSpec,
    x: f64,
    iv: Interval,
    s: f64,
    m: MBound,
    relaxed: bool,
    ctx: &BoundContext,
) -> Result<BoundResult> {
    require_inside(x, iv)?;
    let (mv, covers) = resolve_m(f, iv, m)?;
    let rhs = bound_sconvex_m(x, iv, s, mv, relaxed)?;
    let lhs = abs_lhs(f, x, iv, ctx)?;
    let hyp = resolve_hypothesis(ctx, f, iv, HypKind::D2SConvex(1.0), Some(s))?;
    let eq = if relaxed { Equation::SConvexBoundedRelaxed } else { Equation::SConvexBoundedTight };
    Ok(BoundResult::new(eq, lhs, rhs, hyp && covers, Some(x), ctx.tolerance))
}

/// Hölder-split bound for s-convex `|f''|^q`, `1/p + 1/q = 1`:
/// `|F(x)| <= (1/(2(b-a))) (1/(2p+1))^{1/p} * sum over both sides of
///  (side)^3 ((|f''(x)|^q + |f''(endpoint)|^q)/(s+1))^{1/q}`.
pub fn bound_holder(
    f: &FunctionSpec,
    x: f64,
    iv: Interval,
    s: f64,
    p: f64,
    ctx: &BoundContext,
) -> Result<BoundResult> {
    require_inside(x, iv)?;
    validate_s(s)?;
    let q = conjugate_exponent(p)?;
    let d2x = f.eval_d2(x)?.abs();
    let d2a = f.eval_d2(iv.a())?.abs();
    let d2b = f.eval_d2(iv.b())?.abs();
    let c = (2.0 * p + 1.0).recip().powf(p.recip());
    let side_a = (x - iv.a()).powi(3) * ((d2x.powf(q) + d2a.powf(q)) / (s + 1.0)).powf(q.recip());
    let side_b = (iv.b() - x).powi(3) * ((d2x.powf(q) + d2b.powf(q)) / (s + 1.0)).powf(q.recip());
    let rhs = c * (side_a + side_b) / (2.0 * iv.width());
    let lhs = abs_lhs(f, x, iv, ctx)?;
    let hyp = resolve_hypothesis(ctx, f, iv, HypKind::D2SConvex(q), Some(s))?;
    Ok(BoundResult::new(Equation::Holder, lhs, rhs, hyp, Some(x), ctx.tolerance))
}

/// Closed form of the Hölder bound once `|f''| <= M`:
/// `3 M / (2p+1)^{1/p} * (2/(s+1))^{1/q} * [ (b-a)^2/24 + (x-mid)^2/2 ]`.
pub fn bound_holder_m(x: f64, iv: Interval, s: f64, p: f64, m: f64) -> Result<f64> {
    validate_s(s)?;
    require_inside(x, iv)?;
    if !(m.is_finite() && m >= 0.0) {
        return Err(Error::Param(format!("M must be finite and >= 0, got {m}")));
    }
    let q = conjugate_exponent(p)?;
    let w = iv.width();
    let d = x - iv.midpoint();
    Ok(3.0 * m / (2.0 * p + 1.0).powf(p.recip()) * (2.0 / (s + 1.0)).powf(q.recip())
        * (w * w / 24.0 + 0.5 * d * d))
}

/// Full result for the `M`-form Hölder bound (id e2.8).
pub fn bound_holder_bounded(
    f: &FunctionSpec,
    x: f64,
    iv: Interval,
    s: f64,
    p: f64,
    m: MBound,
    ctx: &BoundContext,
) -> Result<BoundResult> {
    require_inside(x, iv)?;
    let q = conjugate_exponent(p)?;
    let (mv, covers) = resolve_m(f, iv, m)?;
    let rhs = bound_holder_m(x, iv, s, p, mv)?;
    let lhs = abs_lhs(f, x, iv, ctx)?;
    let hyp = resolve_hypothesis(ctx, f, iv, HypKind::D2SConvex(q), Some(s))?;
    Ok(BoundResult::new(Equation::HolderBounded, lhs, rhs, hyp && covers, Some(x), ctx.tolerance))
}

/// Power-mean bound for s-convex `|f''|^q`, `q >= 1`:
/// `|F(x)| <= (1/(2(b-a))) (1/3)^{1-1/q} * sum over both sides of
///  (side)^3 ( |f''(x)|^q/(s+3) + 2 |f''(endpoint)|^q/((s+1)(s+2)(s+3)) )^{1/q}`.
///
/// At `q = 1` this is identical to the plain s-convex bound.
pub fn bound_powermean(
    f: &FunctionSpec,
    x: f64,
    iv: Interval,
    s: f64,
    q: f64,
    ctx: &BoundContext,
) -> Result<BoundResult> {
    require_inside(x, iv)?;
    validate_s(s)?;
    validate_q(q)?;
    let ms = moment_s2(s)?;
    let mb = moment_beta(s)?;
    let d2x = f.eval_d2(x)?.abs();
    let d2a = f.eval_d2(iv.a())?.abs();
    let d2b = f.eval_d2(iv.b())?.abs();
    let c = (1.0f64 / 3.0).powf(1.0 - q.recip());
    let side_a = (x - iv.a()).powi(3) * (d2x.powf(q) * ms + d2a.powf(q) * mb).powf(q.recip());
    let side_b = (iv.b() - x).powi(3) * (d2x.powf(q) * ms + d2b.powf(q) * mb).powf(q.recip());
    let rhs = c * (side_a + side_b) / (2.0 * iv.width());
    let lhs = abs_lhs(f, x, iv, ctx)?;
    let hyp = resolve_hypothesis(ctx, f, iv, HypKind::D2SConvex(q), Some(s))?;
    Ok(BoundResult::new(Equation::PowerMean, lhs, rhs, hyp, Some(x), ctx.tolerance))
}

/// Closed form of the power-mean bound once `|f''| <= M`:
/// `M (3 (s^2+3s+4)/((s+1)(s+2)(s+3)))^{1/q} [ (b-a)^2/24 + (x-mid)^2/2 ]`.
pub fn bound_powermean_m(x: f64, iv: Interval, s: f64, q: f64, m: f64) -> Result<f64> {
    validate_s(s)?;
    validate_q(q)?;
    require_inside(x, iv)?;
    if !(m.is_finite() && m >= 0.0) {
        return Err(Error::Param(format!("M must be finite and >= 0, got {m}")));
    }
    let ratio = 3.0 * (s * s + 3.0 * s + 4.0) / ((s + 1.0) * (s + 2.0) * (s + 3.0));
    let w = iv.width();
    let d = x - iv.midpoint();
    Ok(m * ratio.powf(q.recip()) * (w * w / 24.0 + 0.5 * d * d))
}

/// Full result for the `M`-form power-mean bound (id cor6).
pub fn bound_powermean_bounded(
    f: &FunctionSpec,
    x: f64,
    iv: Interval,
    s: f64,
    q: f64,
    m: MBound,
    ctx: &BoundContext,
) -> Result<BoundResult> {
    require_inside(x, iv)?;
    let (mv, covers) = resolve_m(f, iv, m)?;
    let rhs = bound_powermean_m(x, iv, s, q, mv)?;
    let lhs = abs_lhs(f, x, iv, ctx)?;
    let hyp = resolve_hypothesis(ctx, f, iv, HypKind::D2SConvex(q), Some(s))?;
    Ok(BoundResult::new(Equation::PowerMeanBounded, lhs, rhs, hyp && covers, Some(x), ctx.tolerance))
}

/// Bound for s-concave `|f''|^q`, `p > 1`:
/// `|F(x)| <= 2^{(s-1)/q} / ((2p+1)^{1/p} (b-a)) *
///  ( (x-a)^3 |f''((x+a)/2)| + (b-x)^3 |f''((b+x)/2)| ) / 2`.
///
/// A side with zero weight is skipped, so `x = a` or `x = b` works even when
/// `f''` is singular at the corresponding half-way point.
pub fn bound_sconcave(
    f: &FunctionSpec,
    x: f64,
    iv: Interval,
    s: f64,
    p: f64,
    ctx: &BoundContext,
) -> Result<BoundResult> {
    require_inside(x, iv)?;
    validate_s(s)?;
    let q = conjugate_exponent(p)?;
    let mut sum = 0.0;
    if x > iv.a() {
        sum += (x - iv.a()).powi(3) * f.eval_d2(0.5 * (x + iv.a()))?.abs();
    }
    if x < iv.b() {
        sum += (iv.b() - x).powi(3) * f.eval_d2(0.5 * (iv.b() + x))?.abs();
    }
    let rhs = 2.0f64.powf((s - 1.0) / q) / ((2.0 * p + 1.0).powf(p.recip()) * iv.width())
        * 0.5
        * sum;
    let lhs = abs_lhs(f, x, iv, ctx)?;
    let hyp = resolve_hypothesis(ctx, f, iv, HypKind::D2SConcave(q), Some(s))?;
    Ok(BoundResult::new(Equation::SConcave, lhs, rhs, hyp, Some(x), ctx.tolerance))
}

/// Midpoint form of the s-concave bound (id e2.12):
/// `|f(mid) - mean| <= 2^{(s-1)/q} (b-a)^2 / (16 (2p+1)^{1/p}) *
///  ( |f''((3a+b)/4)| + |f''((a+3b)/4)| )`.
pub fn bound_sconcave_midpoint(
    f: &FunctionSpec,
    iv: Interval,
    s: f64,
    p: f64,
    ctx: &BoundContext,
) -> Result<BoundResult> {
    validate_s(s)?;
    let q = conjugate_exponent(p)?;
    let (a, b) = (iv.a(), iv.b());
    let w = iv.width();
    let d2l = f.eval_d2(0.25 * (3.0 * a + b))?.abs();
    let d2r = f.eval_d2(0.25 * (a + 3.0 * b))?.abs();
    let rhs =
        2.0f64.powf((s - 1.0) / q) * w * w / (16.0 * (2.0 * p + 1.0).powf(p.recip())) * (d2l + d2r);
    let mid = iv.midpoint();
    let mean = kernels::interval_mean(f, iv, &ctx.quad)?;
    let lhs = (mean - f.eval(mid)?).abs();
    let hyp = resolve_hypothesis(ctx, f, iv, HypKind::D2SConcave(q), Some(s))?;
    Ok(BoundResult::new(Equation::SConcaveMidpoint, lhs, rhs, hyp, Some(mid), ctx.tolerance))
}

/// Which closed-form constant the perturbed-trapezoid bound uses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrapezoidVariant {
    /// `(b-a)^3 / (2 (2p+1)^{1/p}) * (2/(s+1))^{1/q} * M` (id cor5).
    Holder { p: f64 },
    /// `(b-a)^3 / 6 * (3 (s^2+3s+4)/((s+1)(s+2)(s+3)))^{1/q} * M` (id cor8).
    PowerMean { q: f64 },
}

/// Perturbed-trapezoid bound:
/// `|Integral f - (b-a)/2 (f(a)+f(b)) + (b-a)^2/4 (f'(b)-f'(a))| <= rhs`.
pub fn bound_perturbed_trapezoid(
    f: &FunctionSpec,
    iv: Interval,
    s: f64,
    variant: TrapezoidVariant,
    m: MBound,
    ctx: &BoundContext,
) -> Result<BoundResult> {
    validate_s(s)?;
    let (mv, covers) = resolve_m(f, iv, m)?;
    let w = iv.width();
    let (eq, q, rhs) = match variant {
        TrapezoidVariant::Holder { p } => {
            let q = conjugate_exponent(p)?;
            let rhs = w.powi(3) / (2.0 * (2.0 * p + 1.0).powf(p.recip()))
                * (2.0 / (s + 1.0)).powf(q.recip())
                * mv;
            (Equation::TrapezoidHolder, q, rhs)
        }
        TrapezoidVariant::PowerMean { q } => {
            validate_q(q)?;
            let ratio = 3.0 * (s * s + 3.0 * s + 4.0) / ((s + 1.0) * (s + 2.0) * (s + 3.0));
            let rhs = w.powi(3) / 6.0 * ratio.powf(q.recip()) * mv;
            (Equation::TrapezoidPowerMean, q, rhs)
        }
    };
    let lhs = kernels::perturbed_trapezoid_lhs(f, iv, &ctx.quad)?;
    let hyp = resolve_hypothesis(ctx, f, iv, HypKind::D2SConvex(q), Some(s))?;
    Ok(BoundResult::new(eq, lhs, rhs, hyp && covers, None, ctx.tolerance))
}

/// Free-form parameters accepted by [`evaluate_equation`].
#[derive(Debug, Clone, Copy, Default)]
pub struct EquationParams {
    pub s: Option<f64>,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub m: MBound,
}

/// Evaluates any directly-dispatchable catalogue entry.
///
/// The special-mean entries (ee1, ee2, ee3, p6) are built from
/// [`crate::means`] instead and are rejected here.
pub fn evaluate_equation(
    eq: Equation,
    f: &FunctionSpec,
    x: Option<f64>,
    iv: Interval,
    params: &EquationParams,
    ctx: &BoundContext,
) -> Result<BoundResult> {
    f.validate()?;
    ctx.quad.validate()?;
    let need_x = || {
        x.ok_or_else(|| Error::Param(format!("equation {} needs an evaluation point x", eq.id())))
    };
    let no_x = || {
        if x.is_some() {
            Err(Error::Param(format!("equation {} has no free evaluation point x", eq.id())))
        } else {
            Ok(())
        }
    };
    let need_s =
        || params.s.ok_or_else(|| Error::Param(format!("equation {} needs s", eq.id())));
    let sp = |s: f64| SParams::new(s, params.p, params.q);
    match eq {
        Equation::Classic => bound_classic(f, need_x()?, iv, ctx),
        Equation::Cerone => bound_cerone(f, need_x()?, iv, false, ctx),
        Equation::Midpoint => {
            no_x()?;
            bound_midpoint(f, iv, ctx)
        }
        Equation::HadamardLeft | Equation::HadamardRight => {
            no_x()?;
            let (left, right) = convexity::hadamard_check(f, need_s()?, iv, ctx)?;
            Ok(if eq == Equation::HadamardLeft { left } else { right })
        }
        Equation::SConvex => bound_sconvex(f, need_x()?, iv, need_s()?, ctx),
        Equation::SConvexBoundedTight => {
            bound_sconvex_bounded(f, need_x()?, iv, need_s()?, params.m, false, ctx)
        }
        Equation::SConvexBoundedRelaxed => {
            bound_sconvex_bounded(f, need_x()?, iv, need_s()?, params.m, true, ctx)
        }
        Equation::Holder => {
            let s = need_s()?;
            let (p, _) = sp(s)?.holder_pair()?;
            bound_holder(f, need_x()?, iv, s, p, ctx)
        }
        Equation::HolderBounded => {
            let s = need_s()?;
            let (p, _) = sp(s)?.holder_pair()?;
            bound_holder_bounded(f, need_x()?, iv, s, p, params.m, ctx)
        }
        Equation::PowerMean => {
            let s = need_s()?;
            let q = sp(s)?.power_mean_q()?;
            bound_powermean(f, need_x()?, iv, s, q, ctx)
        }
        Equation::PowerMeanBounded => {
            let s = need_s()?;
            let q = sp(s)?.power_mean_q()?;
            bound_powermean_bounded(f, need_x()?, iv, s, q, params.m, ctx)
        }
        Equation::SConcave => {
            let s = need_s()?;
            let (p, _) = sp(s)?.holder_pair()?;
            bound_sconcave(f, need_x()?, iv, s, p, ctx)
        }
        Equation::SConcaveMidpoint => {
            no_x()?;
            let s = need_s()?;
            let (p, _) = sp(s)?.holder_pair()?;
            bound_sconcave_midpoint(f, iv, s, p, ctx)
        }
        Equation::TrapezoidHolder => {
            no_x()?;
            let s = need_s()?;
            let (p, _) = sp(s)?.holder_pair()?;
            bound_perturbed_trapezoid(f, iv, s, TrapezoidVariant::Holder { p }, params.m, ctx)
        }
        Equation::TrapezoidPowerMean => {
            no_x()?;
            let s = need_s()?;
            let q = sp(s)?.power_mean_q()?;
            bound_perturbed_trapezoid(f, iv, s, TrapezoidVariant::PowerMean { q }, params.m, ctx)
        }
        Equation::MeanPower
        | Equation::MeanPowerHolder
        | Equation::MeanPowerPm
        | Equation::MeanLogIdentric
        | Equation::MeanLogIdentricPrinted => Err(Error::Param(format!(
            "equation {} is a special-means consequence; use the means operations",
            eq.id()
        ))),
    }
}
