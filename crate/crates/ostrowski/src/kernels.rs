//! The integral identity every bound in the catalogue rests on, and the
//! left-hand sides derived from it.
//!
//! For twice-differentiable `f` on `[a, b]` and `x` in `[a, b]`, the signed
//! deviation
//!
//! ```text
//! F(x) = (1/(b-a)) Integral f  -  f(x)  +  (x - (a+b)/2) f'(x)
//! ```
//!
//! equals a pair of weighted second-derivative integrals:
//!
//! ```text
//! F(x) = (x-a)^3/(2(b-a)) * Integral t^2 f''(t x + (1-t) a) dt
//!      + (b-x)^3/(2(b-a)) * Integral t^2 f''(t x + (1-t) b) dt
//! ```
//!
//! with both t-integrals over [0, 1]. Evaluating both sides with independent
//! quadrature subdivisions gives a strong self-check of every downstream
//! formula's plumbing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcmodel::{FunctionSpec, Interval};
use crate::quadrature::{integrate, QuadratureConfig};

/// Both sides of the identity at one evaluation point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelEvaluation {
    pub x: f64,
    /// Signed deviation `F(x)` computed from the mean, `f(x)` and `f'(x)`.
    pub lhs_signed: f64,
    /// The two weighted second-derivative integrals.
    pub rhs_identity: f64,
    /// `|lhs_signed - rhs_identity|`.
    pub residual: f64,
}

fn require_inside(x: f64, iv: Interval) -> Result<()> {
    if !iv.contains(x) {
        return Err(Error::Domain(format!("x = {x} lies outside {iv}")));
    }
    Ok(())
}

/// Mean value of `f` over the interval.
pub fn interval_mean(f: &FunctionSpec, iv: Interval, quad: &QuadratureConfig) -> Result<f64> {
    let est = integrate(|t| f.eval(t).unwrap_or(f64::NAN), iv, quad)?;
    Ok(est.value / iv.width())
}

/// The signed deviation `F(x)` defined in the module docs.
pub fn ostrowski_functional(
    f: &FunctionSpec,
    x: f64,
    iv: Interval,
    quad: &QuadratureConfig,
) -> Result<f64> {
    require_inside(x, iv)?;
    let mean = interval_mean(f, iv, quad)?;
    Ok(mean - f.eval(x)? + (x - iv.midpoint()) * f.eval_d1(x)?)
}

/// The weighted second-derivative side of the identity.
///
/// A side whose cubic prefactor vanishes (`x = a` or `x = b`) is skipped
/// outright, so an endpoint singularity of `f''` under a zero weight does not
/// poison the result.
pub fn lemma_rhs(f: &FunctionSpec, x: f64, iv: Interval, quad: &QuadratureConfig) -> Result<f64> {
    require_inside(x, iv)?;
    let (a, b) = (iv.a(), iv.b());
    let unit = Interval::new(0.0, 1.0).expect("static interval");
    let mut total = 0.0;
    if x > a {
        let est = integrate(
            |t| t * t * f.eval_d2(t * x + (1.0 - t) * a).unwrap_or(f64::NAN),
            unit,
            quad,
        )?;
        total += (x - a).powi(3) / (2.0 * iv.width()) * est.value;
    }
    if x < b {
        let est = integrate(
            |t| t * t * f.eval_d2(t * x + (1.0 - t) * b).unwrap_or(f64::NAN),
            unit,
            quad,
        )?;
        total += (b - x).powi(3) / (2.0 * iv.width()) * est.value;
    }
    Ok(total)
}

/// Evaluates both sides of the identity independently.
pub fn identity_residual(
    f: &FunctionSpec,
    x: f64,
    iv: Interval,
    quad: &QuadratureConfig,
) -> Result<KernelEvaluation> {
    let lhs = ostrowski_functional(f, x, iv, quad)?;
    let rhs = lemma_rhs(f, x, iv, quad)?;
    Ok(KernelEvaluation { x, lhs_signed: lhs, rhs_identity: rhs, residual: (lhs - rhs).abs() })
}

/// `|f(x) - mean|`, the left side of the classical first-derivative bound.
pub fn classic_lhs(f: &FunctionSpec, x: f64, iv: Interval, quad: &QuadratureConfig) -> Result<f64> {
    require_inside(x, iv)?;
    let mean = interval_mean(f, iv, quad)?;
    Ok((f.eval(x)? - mean).abs())
}

/// Left side of the perturbed-trapezoid bounds:
/// `|Integral f - (b-a)/2 (f(a)+f(b)) + (b-a)^2/4 (f'(b)-f'(a))|`.
pub fn perturbed_trapezoid_lhs(
    f: &FunctionSpec,
    iv: Interval,
    quad: &QuadratureConfig,
) -> Result<f64> {
    let est = integrate(|t| f.eval(t).unwrap_or(f64::NAN), iv, quad)?;
    let w = iv.width();
    let trap = 0.5 * w * (f.eval(iv.a())? + f.eval(iv.b())?);
    let tilt = 0.25 * w * w * (f.eval_d1(iv.b())? - f.eval_d1(iv.a())?);
    Ok((est.value - trap + tilt).abs())
}
