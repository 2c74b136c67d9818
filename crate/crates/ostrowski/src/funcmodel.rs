//! Test functions with closed-form derivatives, and the intervals they
//! are studied on.
//!
//! Derivatives are symbolic per family rather than numeric: the bounds
//! downstream are sensitive to the accuracy of `f''`, and every family here
//! has elementary derivatives. Finite differences appear only in tests as a
//! cross-check.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A twice-differentiable function on (a subset of) the real line.
///
/// Each variant parses from and prints to a compact id, e.g. `poly:1,0,-2,3`,
/// `pow_s:0.5`, `breckner:0,1,0,0.5`, `ln`, `exp`, `cpow:2,0.5`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FunctionSpec {
    /// Coefficients in ascending order: `c[0] + c[1] t + c[2] t^2 + ...`.
    Polynomial(Vec<f64>),
    /// `t^s` for fixed `s` in (0, 1]. Defined on `t >= 0`; first and second
    /// derivatives are singular at 0 when `s < 1`.
    PowerS(f64),
    /// `u` at `t = 0` and `v t^s + w` for `t > 0`, with `0 < s < 1`,
    /// `v >= 0` and `0 <= w <= u`. Those constraints make the function
    /// s-convex in the second sense.
    Breckner { u: f64, v: f64, w: f64, s: f64 },
    /// `ln t` on `t > 0`.
    LogNatural,
    /// `e^t` on the whole line.
    Exponential,
    /// `c t^(s+2)` with `s` in (0, 1]. Its second derivative
    /// `c (s+2)(s+1) t^s` is a scaled s-power, finite at 0.
    ScaledPowerS { c: f64, s: f64 },
}

fn poly_value(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, k| acc.mul_add(t, *k))
}

fn poly_deriv1(c: &[f64], t: f64) -> f64 {
    c.iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(0.0, |acc, (i, k)| acc.mul_add(t, i as f64 * k))
}

fn poly_deriv2(c: &[f64], t: f64) -> f64 {
    c.iter()
        .enumerate()
        .skip(2)
        .rev()
        .fold(0.0, |acc, (i, k)| acc.mul_add(t, (i * (i - 1)) as f64 * k))
}

impl FunctionSpec {
    /// Checks the parameter constraints of the family.
    pub fn validate(&self) -> Result<()> {
        match self {
            FunctionSpec::Polynomial(c) => {
                if c.is_empty() {
                    return Err(Error::Param("polynomial needs at least one coefficient".into()));
                }
                if c.iter().any(|k| !k.is_finite()) {
                    return Err(Error::Param("polynomial coefficients must be finite".into()));
                }
            }
            FunctionSpec::PowerS(s) => {
                if !(*s > 0.0 && *s <= 1.0) {
                    return Err(Error::Param(format!("pow_s exponent must be in (0, 1], got {s}")));
                }
            }
            FunctionSpec::Breckner { u, v, w, s } => {
                if ![u, v, w, s].iter().all(|x| x.is_finite()) {
                    return Err(Error::Param("breckner parameters must be finite".into()));
                }
                if !(*s > 0.0 && *s < 1.0) {
                    return Err(Error::Param(format!("breckner exponent must be in (0, 1), got {s}")));
                }
                if *v < 0.0 {
                    return Err(Error::Param(format!("breckner scale v must be >= 0, got {v}")));
                }
                if !(0.0 <= *w && w <= u) {
                    return Err(Error::Param(format!(
                        "breckner offsets must satisfy 0 <= w <= u, got w={w}, u={u}"
                    )));
                }
            }
            FunctionSpec::LogNatural | FunctionSpec::Exponential => {}
            FunctionSpec::ScaledPowerS { c, s } => {
                if !c.is_finite() {
                    return Err(Error::Param("cpow scale must be finite".into()));
                }
                if !(*s > 0.0 && *s <= 1.0) {
                    return Err(Error::Param(format!("cpow exponent must be in (0, 1], got {s}")));
                }
            }
        }
        Ok(())
    }

    /// Infimum of the natural domain. `eval` accepts `t >= domain_min`
    /// (strictly greater for `ln`); derivative singularities can shrink that
    /// further, see `eval_d1` / `eval_d2`.
    pub fn domain_min(&self) -> f64 {
        match self {
            FunctionSpec::Polynomial(_) | FunctionSpec::Exponential => f64::NEG_INFINITY,
            FunctionSpec::PowerS(_)
            | FunctionSpec::Breckner { .. }
            | FunctionSpec::LogNatural
            | FunctionSpec::ScaledPowerS { .. } => 0.0,
        }
    }

    fn check_finite(&self, v: f64, what: &str, t: f64) -> Result<f64> {
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite(format!("{what} of {self} is not finite at t = {t}")))
        }
    }

    /// Function value.
    pub fn eval(&self, t: f64) -> Result<f64> {
        let v = match self {
            FunctionSpec::Polynomial(c) => poly_value(c, t),
            FunctionSpec::PowerS(s) => {
                if t < 0.0 {
                    return Err(Error::Domain(format!("t^s needs t >= 0, got t = {t}")));
                }
                t.powf(*s)
            }
            FunctionSpec::Breckner { u, v, w, s } => {
                if t < 0.0 {
                    return Err(Error::Domain(format!("breckner needs t >= 0, got t = {t}")));
                }
                if t == 0.0 {
                    *u
                } else {
                    v.mul_add(t.powf(*s), *w)
                }
            }
            FunctionSpec::LogNatural => {
                if t <= 0.0 {
                    return Err(Error::Domain(format!("ln needs t > 0, got t = {t}")));
                }
                t.ln()
            }
            FunctionSpec::Exponential => t.exp(),
            FunctionSpec::ScaledPowerS { c, s } => {
                if t < 0.0 {
                    return Err(Error::Domain(format!("cpow needs t >= 0, got t = {t}")));
                }
                c * t.powf(s + 2.0)
            }
        };
        self.check_finite(v, "value", t)
    }

    /// First derivative.
    pub fn eval_d1(&self, t: f64) -> Result<f64> {
        let v = match self {
            FunctionSpec::Polynomial(c) => poly_deriv1(c, t),
            FunctionSpec::PowerS(s) => {
                if t < 0.0 {
                    return Err(Error::Domain(format!("t^s needs t >= 0, got t = {t}")));
                }
                if t == 0.0 {
                    if *s == 1.0 {
                        1.0
                    } else {
                        return Err(Error::Domain(
                            "derivative of t^s is singular at t = 0 for s < 1".into(),
                        ));
                    }
                } else {
                    s * t.powf(s - 1.0)
                }
            }
            FunctionSpec::Breckner { v, s, .. } => {
                if t <= 0.0 {
                    return Err(Error::Domain(format!(
                        "breckner derivative needs t > 0, got t = {t}"
                    )));
                }
                v * s * t.powf(s - 1.0)
            }
            FunctionSpec::LogNatural => {
                if t <= 0.0 {
                    return Err(Error::Domain(format!("ln needs t > 0, got t = {t}")));
                }
                t.recip()
            }
            FunctionSpec::Exponential => t.exp(),
            FunctionSpec::ScaledPowerS { c, s } => {
                if t < 0.0 {
                    return Err(Error::Domain(format!("cpow needs t >= 0, got t = {t}")));
                }
                if t == 0.0 {
                    0.0
                } else {
                    c * (s + 2.0) * t.powf(s + 1.0)
                }
            }
        };
        self.check_finite(v, "first derivative", t)
    }

    /// Second derivative.
    pub fn eval_d2(&self, t: f64) -> Result<f64> {
        let v = match self {
            FunctionSpec::Polynomial(c) => poly_deriv2(c, t),
            FunctionSpec::PowerS(s) => {
                if t < 0.0 {
                    return Err(Error::Domain(format!("t^s needs t >= 0, got t = {t}")));
                }
                if t == 0.0 {
                    if *s == 1.0 {
                        0.0
                    } else {
                        return Err(Error::Domain(
                            "second derivative of t^s is singular at t = 0 for s < 1".into(),
                        ));
                    }
                } else {
                    s * (s - 1.0) * t.powf(s - 2.0)
                }
            }
            FunctionSpec::Breckner { v, s, .. } => {
                if t <= 0.0 {
                    return Err(Error::Domain(format!(
                        "breckner derivative needs t > 0, got t = {t}"
                    )));
                }
                v * s * (s - 1.0) * t.powf(s - 2.0)
            }
            FunctionSpec::LogNatural => {
                if t <= 0.0 {
                    return Err(Error::Domain(format!("ln needs t > 0, got t = {t}")));
                }
                -(t * t).recip()
            }
            FunctionSpec::Exponential => t.exp(),
            FunctionSpec::ScaledPowerS { c, s } => {
                if t < 0.0 {
                    return Err(Error::Domain(format!("cpow needs t >= 0, got t = {t}")));
                }
                c * (s + 2.0) * (s + 1.0) * t.powf(*s)
            }
        };
        self.check_finite(v, "second derivative", t)
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Polynomial(c) => {
                let parts: Vec<String> = c.iter().map(|k| k.to_string()).collect();
                write!(f, "poly:{}", parts.join(","))
            }
            FunctionSpec::PowerS(s) => write!(f, "pow_s:{s}"),
            FunctionSpec::Breckner { u, v, w, s } => write!(f, "breckner:{u},{v},{w},{s}"),
            FunctionSpec::LogNatural => write!(f, "ln"),
            FunctionSpec::Exponential => write!(f, "exp"),
            FunctionSpec::ScaledPowerS { c, s } => write!(f, "cpow:{c},{s}"),
        }
    }
}

fn parse_args(id: &str, args: &str, expect: usize) -> Result<Vec<f64>> {
    let vals: Vec<f64> = args
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("bad number {p:?} in function id {id:?}")))
        })
        .collect::<Result<_>>()?;
    if expect > 0 && vals.len() != expect {
        return Err(Error::Config(format!(
            "function id {id:?} needs {expect} parameters, got {}",
            vals.len()
        )));
    }
    Ok(vals)
}

impl FromStr for FunctionSpec {
    type Err = Error;

    fn from_str(id: &str) -> Result<Self> {
        let (head, args) = match id.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (id, None),
        };
        let spec = match (head, args) {
            ("ln", None) => FunctionSpec::LogNatural,
            ("exp", None) => FunctionSpec::Exponential,
            ("poly", Some(a)) => FunctionSpec::Polynomial(parse_args(id, a, 0)?),
            ("pow_s", Some(a)) => {
                let v = parse_args(id, a, 1)?;
                FunctionSpec::PowerS(v[0])
            }
            ("breckner", Some(a)) => {
                let v = parse_args(id, a, 4)?;
                FunctionSpec::Breckner { u: v[0], v: v[1], w: v[2], s: v[3] }
            }
            ("cpow", Some(a)) => {
                let v = parse_args(id, a, 2)?;
                FunctionSpec::ScaledPowerS { c: v[0], s: v[1] }
            }
            _ => {
                return Err(Error::Config(format!(
                    "unknown function id {id:?} (expected poly:..., pow_s:..., breckner:..., cpow:..., ln, exp)"
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// A closed interval `[a, b]` with `a < b`, both finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "(f64, f64)", into = "(f64, f64)")]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::Domain(format!("interval endpoints must be finite, got [{a}, {b}]")));
        }
        if a >= b {
            return Err(Error::Domain(format!("interval needs a < b, got [{a}, {b}]")));
        }
        Ok(Interval { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }
}

impl TryFrom<(f64, f64)> for Interval {
    type Error = Error;

    fn try_from(p: (f64, f64)) -> Result<Self> {
        Interval::new(p.0, p.1)
    }
}

impl From<Interval> for (f64, f64) {
    fn from(iv: Interval) -> (f64, f64) {
        (iv.a, iv.b)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

const SUP_SCAN_POINTS: usize = 10_001;
const SUP_REFINE_TOL: f64 = 1e-10;

/// Supremum of `|f''|` over the interval via a dense scan plus
/// golden-section refinement around the scan maximum.
///
/// Errors if `f''` is singular or non-finite anywhere on the closed
/// interval: an unbounded second derivative has no useful supremum.
pub fn sup_abs_d2(f: &FunctionSpec, iv: Interval) -> Result<f64> {
    sup_abs(&|t| f.eval_d2(t), iv)
}

/// Supremum of `|f'|` over the interval, same method as [`sup_abs_d2`].
pub fn sup_abs_d1(f: &FunctionSpec, iv: Interval) -> Result<f64> {
    sup_abs(&|t| f.eval_d1(t), iv)
}

fn sup_abs(g: &dyn Fn(f64) -> Result<f64>, iv: Interval) -> Result<f64> {
    let n = SUP_SCAN_POINTS;
    let h = iv.width() / (n - 1) as f64;
    let mut best = f64::NEG_INFINITY;
    let mut best_i = 0usize;
    for i in 0..n {
        let t = if i == n - 1 { iv.b() } else { h.mul_add(i as f64, iv.a()) };
        let v = g(t)?.abs();
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let lo = h.mul_add(best_i.saturating_sub(1) as f64, iv.a());
    let hi = (h.mul_add((best_i + 1) as f64, iv.a())).min(iv.b());
    let refined = golden_max(g, lo, hi)?;
    Ok(best.max(refined))
}

fn golden_max(g: &dyn Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64) -> Result<f64> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut gc = g(c)?.abs();
    let mut gd = g(d)?.abs();
    while hi - lo > SUP_REFINE_TOL {
        if gc > gd {
            hi = d;
            d = c;
            gd = gc;
            c = hi - INV_PHI * (hi - lo);
            gc = g(c)?.abs();
        } else {
            lo = c;
            c = d;
            gc = gd;
            d = lo + INV_PHI * (hi - lo);
            gd = g(d)?.abs();
        }
    }
    Ok(gc.max(gd))
}
