//! Adaptive Simpson quadrature with Richardson error control, plus the two
//! closed-form t-moments used by the bound formulas.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcmodel::Interval;

/// Tuning knobs for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Absolute tolerance for the whole interval.
    pub abs_tol: f64,
    /// Maximum bisection depth before a panel is accepted as-is.
    pub max_depth: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { abs_tol: 1e-11, max_depth: 60 }
    }
}

impl QuadratureConfig {
    pub fn new(abs_tol: f64, max_depth: u32) -> Result<Self> {
        let cfg = QuadratureConfig { abs_tol, max_depth };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol.is_finite() && self.abs_tol > 0.0) {
            return Err(Error::Param(format!("abs_tol must be positive, got {}", self.abs_tol)));
        }
        if self.max_depth < 10 {
            return Err(Error::Param(format!("max_depth must be >= 10, got {}", self.max_depth)));
        }
        Ok(())
    }
}

/// Outcome of one integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralEstimate {
    pub value: f64,
    /// Accumulated Richardson error estimate, usually far below `abs_tol`.
    pub error_estimate: f64,
    /// The lower endpoint was nudged inward because the integrand was
    /// non-finite exactly at it.
    pub inset_low: bool,
    /// Same for the upper endpoint.
    pub inset_high: bool,
    /// False when some panel hit `max_depth` before meeting its tolerance.
    pub converged: bool,
}

/// Relative size of the endpoint nudge used for integrable endpoint
/// singularities.
const ENDPOINT_INSET: f64 = 1e-12;

struct Accum {
    value: f64,
    err: f64,
    converged: bool,
}

fn simpson(h: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    h * (fa + 4.0 * fm + fb) / 6.0
}

/// Integrates `f` over the interval.
///
/// Endpoints where `f` is non-finite are inset by `1e-12 * width` and
/// flagged; the neglected sliver is far below the default tolerance for
/// integrable singularities. A non-finite value at any interior sample is an
/// error. A panel that reaches `max_depth` is accepted with its Richardson
/// correction and clears `converged` instead of erroring.
pub fn integrate<F>(f: F, iv: Interval, cfg: &QuadratureConfig) -> Result<IntegralEstimate>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    let inset = ENDPOINT_INSET * iv.width();
    let mut a = iv.a();
    let mut b = iv.b();
    let mut inset_low = false;
    let mut inset_high = false;

    let mut fa = f(a);
    if !fa.is_finite() {
        a += inset;
        fa = f(a);
        inset_low = true;
        if !fa.is_finite() {
            return Err(Error::NonFinite(format!(
                "integrand is non-finite at and near the lower endpoint {}",
                iv.a()
            )));
        }
    }
    let mut fb = f(b);
    if !fb.is_finite() {
        b -= inset;
        fb = f(b);
        inset_high = true;
        if !fb.is_finite() {
            return Err(Error::NonFinite(format!(
                "integrand is non-finite at and near the upper endpoint {}",
                iv.b()
            )));
        }
    }

    let m = 0.5 * (a + b);
    let fm = interior(&f, m)?;
    let whole = simpson(b - a, fa, fm, fb);
    let mut acc = Accum { value: 0.0, err: 0.0, converged: true };
    refine(&f, a, b, fa, fm, fb, whole, cfg.abs_tol, cfg.max_depth, &mut acc)?;
    Ok(IntegralEstimate {
        value: acc.value,
        error_estimate: acc.err,
        inset_low,
        inset_high,
        converged: acc.converged,
    })
}

fn interior<F: Fn(f64) -> f64>(f: &F, t: f64) -> Result<f64> {
    let v = f(t);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(format!("integrand is non-finite at interior point t = {t}")))
    }
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    acc: &mut Accum,
) -> Result<()> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = interior(f, lm)?;
    let frm = interior(f, rm)?;
    let left = simpson(m - a, fa, flm, fm);
    let right = simpson(b - m, fm, frm, fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol || depth == 0 {
        acc.value += left + right + delta / 15.0;
        acc.err += (delta / 15.0).abs();
        if depth == 0 && delta.abs() > 15.0 * tol {
            acc.converged = false;
        }
        return Ok(());
    }
    refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, acc)?;
    refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, acc)
}

/// `Integral of t^(s+2) dt over [0, 1]` in closed form: `1/(s+3)`.
pub fn moment_s2(s: f64) -> Result<f64> {
    check_s(s)?;
    Ok((s + 3.0).recip())
}

/// `Integral of t^2 (1-t)^s dt over [0, 1]` in closed form:
/// `2/((s+1)(s+2)(s+3))`.
pub fn moment_beta(s: f64) -> Result<f64> {
    check_s(s)?;
    Ok(2.0 / ((s + 1.0) * (s + 2.0) * (s + 3.0)))
}

fn check_s(s: f64) -> Result<()> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::Param(format!("s must be in (0, 1], got {s}")));
    }
    Ok(())
}
