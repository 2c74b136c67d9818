//! Numerical screening of s-convexity in the second sense.
//!
//! `g` is s-convex on `[a, b]` when
//! `g(t x + (1-t) y) <= t^s g(x) + (1-t)^s g(y)` for all `x, y` in the
//! interval and `t` in `[0, 1]`; s-concave reverses the inequality. The
//! checker samples a uniform `(x, y, t)` lattice, so a Satisfied verdict is
//! evidence, not proof, while a Violated verdict comes with a concrete
//! witness.

use serde::{Deserialize, Serialize};

use crate::bounds::{validate_s, BoundContext, BoundResult, Equation, HypothesisMode};
use crate::error::{Error, Result};
use crate::funcmodel::{FunctionSpec, Interval};
use crate::kernels;

/// Direction of the inequality being screened.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Convex,
    Concave,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Satisfied,
    Violated,
}

/// Lattice point at which the worst violation occurred.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub verdict: Verdict,
    /// Largest positive defect found, 0 when the verdict is Satisfied.
    pub worst_violation: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Number of lattice combinations examined.
    pub samples: usize,
}

/// Relative inset applied when `g` is non-finite exactly at an endpoint.
const ENDPOINT_INSET: f64 = 1e-9;

/// Screens `g` for s-convexity on a `grid_n^3` lattice.
pub fn check_s_convex<G: Fn(f64) -> f64>(
    g: G,
    s: f64,
    iv: Interval,
    grid_n: usize,
) -> Result<ConvexityReport> {
    lattice(&g, s, iv, grid_n, Sense::Convex)
}

/// Screens `g` for s-concavity on a `grid_n^3` lattice.
pub fn check_s_concave<G: Fn(f64) -> f64>(
    g: G,
    s: f64,
    iv: Interval,
    grid_n: usize,
) -> Result<ConvexityReport> {
    lattice(&g, s, iv, grid_n, Sense::Concave)
}

fn sample_range(g: &dyn Fn(f64) -> f64, iv: Interval) -> (f64, f64) {
    let inset = ENDPOINT_INSET * iv.width();
    let lo = if g(iv.a()).is_finite() { iv.a() } else { iv.a() + inset };
    let hi = if g(iv.b()).is_finite() { iv.b() } else { iv.b() - inset };
    (lo, hi)
}

fn lattice(
    g: &dyn Fn(f64) -> f64,
    s: f64,
    iv: Interval,
    grid_n: usize,
    sense: Sense,
) -> Result<ConvexityReport> {
    validate_s(s)?;
    if grid_n < 3 {
        return Err(Error::Param(format!("grid_n must be >= 3, got {grid_n}")));
    }
    let (lo, hi) = sample_range(g, iv);
    let n = grid_n;
    let step = (hi - lo) / (n - 1) as f64;
    let xs: Vec<f64> = (0..n).map(|i| if i == n - 1 { hi } else { lo + step * i as f64 }).collect();
    let gx: Vec<f64> = xs.iter().map(|&x| g(x)).collect();
    if let Some(i) = gx.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(format!("g is not finite at sample point t = {}", xs[i])));
    }
    let gmax = gx.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let slack = 1e-10 * (1.0 + gmax);

    let ts: Vec<(f64, f64, f64)> = (0..n)
        .map(|k| {
            let t = k as f64 / (n - 1) as f64;
            (t, t.powf(s), (1.0 - t).powf(s))
        })
        .collect();

    let mut worst = f64::NEG_INFINITY;
    let mut witness = None;
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in xs.iter().enumerate() {
            for &(t, tp, up) in &ts {
                let c = t * x + (1.0 - t) * y;
                let gc = g(c);
                if !gc.is_finite() {
                    return Err(Error::NonFinite(format!(
                        "g is not finite at combination point t = {c}"
                    )));
                }
                let defect = gc - tp * gx[i] - up * gx[j];
                let v = match sense {
                    Sense::Convex => defect,
                    Sense::Concave => -defect,
                };
                if v > worst {
                    worst = v;
                    witness = Some(Witness { x, y, t });
                }
            }
        }
    }
    let violated = worst > slack;
    Ok(ConvexityReport {
        verdict: if violated { Verdict::Violated } else { Verdict::Satisfied },
        worst_violation: worst.max(0.0),
        witness: if violated { witness } else { None },
        samples: n * n * n,
    })
}

/// Hypothesis of the Hermite-Hadamard pair: `f` s-convex and nonnegative on
/// the interval (both screened on the same grid resolution).
pub fn check_value_hypothesis(
    f: &FunctionSpec,
    s: f64,
    iv: Interval,
    grid_n: usize,
) -> Result<bool> {
    let g = |t: f64| f.eval(t).unwrap_or(f64::NAN);
    let report = check_s_convex(g, s, iv, grid_n)?;
    if report.verdict == Verdict::Violated {
        return Ok(false);
    }
    let (lo, hi) = sample_range(&g, iv);
    let mut min = f64::INFINITY;
    let mut maxabs = 0.0f64;
    for i in 0..grid_n {
        let t = lo + (hi - lo) * i as f64 / (grid_n - 1) as f64;
        let v = g(t);
        if !v.is_finite() {
            return Err(Error::NonFinite(format!("f is not finite at sample point t = {t}")));
        }
        min = min.min(v);
        maxabs = maxabs.max(v.abs());
    }
    Ok(min >= -1e-12 * (1.0 + maxabs))
}

/// Evaluates both sides of the Hermite-Hadamard pair for s-convex `f`:
///
/// ```text
/// 2^{s-1} f((a+b)/2)  <=  mean of f  <=  (f(a) + f(b)) / (s + 1)
/// ```
///
/// Returned as (lower, upper) [`BoundResult`]s with ids e1.1a and e1.1b.
/// Unlike the rest of the catalogue both comparisons are between signed
/// quantities; they are only meaningful under the nonnegativity hypothesis,
/// whose verdict is recorded in `hypothesis_checked`.
pub fn hadamard_check(
    f: &FunctionSpec,
    s: f64,
    iv: Interval,
    ctx: &BoundContext,
) -> Result<(BoundResult, BoundResult)> {
    validate_s(s)?;
    f.validate()?;
    let mean = kernels::interval_mean(f, iv, &ctx.quad)?;
    let fmid = f.eval(iv.midpoint())?;
    let fa = f.eval(iv.a())?;
    let fb = f.eval(iv.b())?;
    let hyp = match ctx.hypothesis {
        HypothesisMode::Assume => true,
        HypothesisMode::Supplied(v) => v,
        HypothesisMode::Check => check_value_hypothesis(f, s, iv, ctx.convexity_grid)?,
    };
    let left = BoundResult::new(
        Equation::HadamardLeft,
        2f64.powf(s - 1.0) * fmid,
        mean,
        hyp,
        None,
        ctx.tolerance,
    );
    let right = BoundResult::new(
        Equation::HadamardRight,
        mean,
        (fa + fb) / (s + 1.0),
        hyp,
        None,
        ctx.tolerance,
    );
    Ok((left, right))
}
