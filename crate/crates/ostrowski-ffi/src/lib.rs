//! C ABI over the ostrowski library.
//!
//! Conventions, mirrored in the generated `include/ostrowski.h`:
//!
//! - Every fallible entry point returns an [`OstroStatus`]; zero is success.
//! - Optional `double` arguments use NaN to mean "not supplied".
//! - Function handles come from [`ostro_function_parse`] and must be released
//!   with [`ostro_function_free`].
//! - On failure a per-thread message is retained; fetch it with
//!   [`ostro_last_error`]. Success clears it.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

use ostrowski::bounds::{
    evaluate_equation, EquationParams, HypothesisMode, MBound, DEFAULT_TOLERANCE,
};
use ostrowski::convexity::{check_s_concave, check_s_convex, ConvexityReport, Verdict};
use ostrowski::funcmodel::sup_abs_d2;
use ostrowski::kernels::{identity_residual, interval_mean, ostrowski_functional};
use ostrowski::means::{arithmetic_mean, gen_log_mean, identric_mean};
use ostrowski::quadrature::{moment_beta, moment_s2};
use ostrowski::{BoundContext, Equation, Error, FunctionSpec, Interval, QuadratureConfig};

/// Status code returned by every fallible entry point.
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OstroStatus {
    /// The call succeeded.
    Ok = 0,
    /// An argument lies outside the mathematical domain of the operation.
    Domain = 1,
    /// A computation met a non-finite value where a finite one is required.
    NonFinite = 2,
    /// A tuning parameter violates its documented range.
    Param = 3,
    /// An id or configuration string could not be interpreted.
    Config = 4,
    /// A required pointer argument was null.
    NullPointer = 5,
    /// A string argument was not valid UTF-8.
    Utf8 = 6,
    /// The library panicked internally; report this as a bug.
    Panic = 7,
}

/// Opaque handle to a parsed, validated function.
pub struct OstroFunction {
    inner: FunctionSpec,
}

/// Flattened outcome of one bound evaluation.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct OstroBound {
    /// Left side of the inequality.
    pub lhs: f64,
    /// Right side of the inequality.
    pub rhs: f64,
    /// `rhs - lhs`; negative means the inequality failed numerically.
    pub margin: f64,
    /// 1 when `margin >= -tolerance * (1 + |rhs|)`.
    pub holds: i32,
    /// 1 when the hypothesis behind the bound was verified (or none exists).
    pub hypothesis_checked: i32,
    /// Evaluation point; NaN when the equation has no free point.
    pub x: f64,
}

/// Outcome of a lattice convexity screen.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct OstroConvexity {
    /// 1 when no lattice combination violated the inequality.
    pub satisfied: i32,
    /// Largest positive defect found; 0 when satisfied.
    pub worst_violation: f64,
    /// Witness lattice point of the worst defect; NaN when satisfied.
    pub witness_x: f64,
    /// See `witness_x`.
    pub witness_y: f64,
    /// Interpolation weight of the witness; NaN when satisfied.
    pub witness_t: f64,
    /// Number of lattice combinations examined.
    pub samples: usize,
}

/// Screen the function's own values.
pub const OSTRO_SENSE_CONVEX: i32 = 0;
/// Screen for the reversed inequality.
pub const OSTRO_SENSE_CONCAVE: i32 = 1;

thread_local! {
    static LAST_ERROR: RefCell<Vec<u8>> = const { RefCell::new(Vec::new()) };
}

fn set_error(msg: &str) {
    LAST_ERROR.with(|e| {
        let mut e = e.borrow_mut();
        e.clear();
        e.extend_from_slice(msg.as_bytes());
    });
}

fn ok() -> OstroStatus {
    LAST_ERROR.with(|e| e.borrow_mut().clear());
    OstroStatus::Ok
}

fn fail(e: &Error) -> OstroStatus {
    set_error(&e.to_string());
    match e {
        Error::Domain(_) => OstroStatus::Domain,
        Error::NonFinite(_) => OstroStatus::NonFinite,
        Error::Param(_) => OstroStatus::Param,
        Error::Config(_) => OstroStatus::Config,
    }
}

fn null_arg(name: &str) -> OstroStatus {
    set_error(&format!("argument {name} must not be null"));
    OstroStatus::NullPointer
}

fn guard(body: impl FnOnce() -> OstroStatus) -> OstroStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            OstroStatus::Panic
        }
    }
}

fn opt(v: f64) -> Option<f64> {
    if v.is_nan() {
        None
    } else {
        Some(v)
    }
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, OstroStatus> {
    if p.is_null() {
        return Err(null_arg(name));
    }
    let raw = unsafe { CStr::from_ptr(p) };
    raw.to_str().map_err(|_| {
        set_error(&format!("argument {name} is not valid UTF-8"));
        OstroStatus::Utf8
    })
}

fn store(out: *mut f64, value: f64) -> OstroStatus {
    if out.is_null() {
        return null_arg("out");
    }
    unsafe { *out = value };
    ok()
}

/// Copies the most recent error message into `buf` (NUL-terminated,
/// truncated to `cap - 1` bytes) and returns the full message length in
/// bytes. Returns 0 when the last call succeeded. `buf` may be null to
/// query the length alone.
///
/// # Safety
///
/// `buf`, when non-null, must point to at least `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn ostro_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && cap > 0 {
            let n = msg.len().min(cap - 1);
            unsafe {
                std::ptr::copy_nonoverlapping(msg.as_ptr(), buf as *mut u8, n);
                *buf.add(n) = 0;
            }
        }
        msg.len()
    })
}

/// Parses a function id into a handle. Supported ids: `poly:c0,c1,...`,
/// `pow_s:s`, `cpow:c,s`, `breckner:u,v,w,s`, `ln`, `exp`. The handle must
/// be released with [`ostro_function_free`].
///
/// # Safety
///
/// `id` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ostro_function_parse(
    id: *const c_char,
    out: *mut *mut OstroFunction,
) -> OstroStatus {
    guard(|| {
        if out.is_null() {
            return null_arg("out");
        }
        let text = match unsafe { read_str(id, "id") } {
            Ok(t) => t,
            Err(status) => return status,
        };
        match FunctionSpec::from_str(text) {
            Ok(inner) => {
                let handle = Box::new(OstroFunction { inner });
                unsafe { *out = Box::into_raw(handle) };
                ok()
            }
            Err(e) => fail(&e),
        }
    })
}

/// Releases a handle from [`ostro_function_parse`]. Null is ignored.
///
/// # Safety
///
/// `f` must be null or a handle not already freed.
#[no_mangle]
pub unsafe extern "C" fn ostro_function_free(f: *mut OstroFunction) {
    if !f.is_null() {
        drop(unsafe { Box::from_raw(f) });
    }
}

unsafe fn eval_with(
    f: *const OstroFunction,
    out: *mut f64,
    op: impl FnOnce(&FunctionSpec) -> ostrowski::Result<f64>,
) -> OstroStatus {
    let Some(handle) = (unsafe { f.as_ref() }) else {
        return null_arg("f");
    };
    match op(&handle.inner) {
        Ok(v) => store(out, v),
        Err(e) => fail(&e),
    }
}

/// Evaluates `f(t)`.
///
/// # Safety
///
/// `f` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ostro_eval(
    f: *const OstroFunction,
    t: f64,
    out: *mut f64,
) -> OstroStatus {
    guard(|| unsafe { eval_with(f, out, |spec| spec.eval(t)) })
}

/// Evaluates the first derivative `f'(t)`.
///
/// # Safety
///
/// `f` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ostro_eval_d1(
    f: *const OstroFunction,
    t: f64,
    out: *mut f64,
) -> OstroStatus {
    guard(|| unsafe { eval_with(f, out, |spec| spec.eval_d1(t)) })
}

/// Evaluates the second derivative `f''(t)`.
///
/// # Safety
///
/// `f` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ostro_eval_d2(
    f: *const OstroFunction,
    t: f64,
    out: *mut f64,
) -> OstroStatus {
    guard(|| unsafe { eval_with(f, out, |spec| spec.eval_d2(t)) })
}

/// Computes `sup |f''|` over `[a, b]`.
///
/// # Safety
///
/// `f` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ostro_sup_abs_d2(
    f: *const OstroFunction,
    a: f64,
    b: f64,
    out: *mut f64,
) -> OstroStatus {
    guard(|| unsafe {
        eval_with(f, out, |spec| {
            let iv = Interval::new(a, b)?;
            sup_abs_d2(spec, iv)
        })
    })
}

/// Computes the integral mean of `f` over `[a, b]` with the default
/// adaptive quadrature settings.
///
/// # Safety
///
/// `f` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ostro_interval_mean(
    f: *const OstroFunction,
    a: f64,
    b: f64,
    out: *mut f64,
) -> OstroStatus {
    guard(|| unsafe {
        eval_with(f, out, |spec| {
            let iv = Interval::new(a, b)?;
            interval_mean(spec, iv, &QuadratureConfig::default())
        })
    })
}

/// Computes the signed deviation functional
/// `mean(f) - f(x) + (x - (a+b)/2) f'(x)` on `[a, b]`.
///
/// # Safety
///
/// `f` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ostro_functional(
    f: *const OstroFunction,
    x: f64,
    a: f64,
    b: f64,
    out: *mut f64,
) -> OstroStatus {
    guard(|| unsafe {
        eval_with(f, out, |spec| {
            let iv = Interval::new(a, b)?;
            ostrowski_functional(spec, x, iv, &QuadratureConfig::default())
        })
    })
}

/// Evaluates both sides of the kernel identity independently and their
/// absolute difference. Any out pointer may be null to skip that value.
///
/// # Safety
///
/// `f` must be a live handle; non-null out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ostro_identity_residual(
    f: *const OstroFunction,
    x: f64,
    a: f64,
    b: f64,
    out_lhs: *mut f64,
    out_rhs: *mut f64,
    out_residual: *mut f64,
) -> OstroStatus {
    guard(|| {
        let Some(handle) = (unsafe { f.as_ref() }) else {
            return null_arg("f");
        };
        let run = || {
            let iv = Interval::new(a, b)?;
            identity_residual(&handle.inner, x, iv, &QuadratureConfig::default())
        };
        match run() {
            Ok(ev) => {
                unsafe {
                    if !out_lhs.is_null() {
                        *out_lhs = ev.lhs_signed;
                    }
                    if !out_rhs.is_null() {
                        *out_rhs = ev.rhs_identity;
                    }
                    if !out_residual.is_null() {
                        *out_residual = ev.residual;
                    }
                }
                ok()
            }
            Err(e) => fail(&e),
        }
    })
}

/// Evaluates one catalogue inequality for `f` on `[a, b]`.
///
/// `equation_id` accepts the directly evaluable ids (`classic`, `e1.2`,
/// `e1.3`, `e1.1a`, `e1.1b`, `e2.5`, `e2.6a`, `e2.6b`, `e2.7`, `e2.8`,
/// `teo3`, `cor6`, `e2.9`, `e2.12`, `cor5`, `cor8`); the special-mean ids
/// are rejected. Pass NaN for `x`, `s`, `p`, `q` when the equation does not
/// use them, and NaN for `m` to derive `sup |f''|` automatically. A nonzero
/// `assume_hypothesis` skips hypothesis verification and marks it satisfied
/// (negative-control mode).
///
/// # Safety
///
/// `f` must be a live handle; `equation_id` must be NUL-terminated; `out`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ostro_bound(
    f: *const OstroFunction,
    equation_id: *const c_char,
    a: f64,
    b: f64,
    x: f64,
    s: f64,
    p: f64,
    q: f64,
    m: f64,
    assume_hypothesis: i32,
    out: *mut OstroBound,
) -> OstroStatus {
    guard(|| {
        let Some(handle) = (unsafe { f.as_ref() }) else {
            return null_arg("f");
        };
        if out.is_null() {
            return null_arg("out");
        }
        let id = match unsafe { read_str(equation_id, "equation_id") } {
            Ok(t) => t,
            Err(status) => return status,
        };
        let run = || {
            let eq = Equation::from_str(id)?;
            let iv = Interval::new(a, b)?;
            let params = EquationParams {
                s: opt(s),
                p: opt(p),
                q: opt(q),
                m: match opt(m) {
                    Some(v) => MBound::Given(v),
                    None => MBound::Auto,
                },
            };
            let ctx = BoundContext {
                hypothesis: if assume_hypothesis != 0 {
                    HypothesisMode::Assume
                } else {
                    HypothesisMode::Check
                },
                ..BoundContext::default()
            };
            evaluate_equation(eq, &handle.inner, opt(x), iv, &params, &ctx)
        };
        match run() {
            Ok(r) => {
                unsafe {
                    *out = OstroBound {
                        lhs: r.lhs,
                        rhs: r.rhs,
                        margin: r.margin,
                        holds: r.holds as i32,
                        hypothesis_checked: r.hypothesis_checked as i32,
                        x: r.x.unwrap_or(f64::NAN),
                    };
                }
                ok()
            }
            Err(e) => fail(&e),
        }
    })
}

fn convexity_out(report: &ConvexityReport) -> OstroConvexity {
    let (wx, wy, wt) = match report.witness {
        Some(w) => (w.x, w.y, w.t),
        None => (f64::NAN, f64::NAN, f64::NAN),
    };
    OstroConvexity {
        satisfied: (report.verdict == Verdict::Satisfied) as i32,
        worst_violation: report.worst_violation,
        witness_x: wx,
        witness_y: wy,
        witness_t: wt,
        samples: report.samples,
    }
}

/// Screens a function for s-convexity (`sense` = [`OSTRO_SENSE_CONVEX`]) or
/// s-concavity ([`OSTRO_SENSE_CONCAVE`]) on a `grid^3` lattice over
/// `[a, b]`. With `d2_power` NaN the function's own values are screened;
/// otherwise `|f''|^d2_power` is. `grid` must be at least 3.
///
/// # Safety
///
/// `f` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ostro_convexity(
    f: *const OstroFunction,
    s: f64,
    a: f64,
    b: f64,
    sense: i32,
    d2_power: f64,
    grid: usize,
    out: *mut OstroConvexity,
) -> OstroStatus {
    guard(|| {
        let Some(handle) = (unsafe { f.as_ref() }) else {
            return null_arg("f");
        };
        if out.is_null() {
            return null_arg("out");
        }
        if sense != OSTRO_SENSE_CONVEX && sense != OSTRO_SENSE_CONCAVE {
            return fail(&Error::Param(format!(
                "sense must be {OSTRO_SENSE_CONVEX} (convex) or {OSTRO_SENSE_CONCAVE} (concave), got {sense}"
            )));
        }
        let spec = &handle.inner;
        let run = || {
            let iv = Interval::new(a, b)?;
            let g = |t: f64| match opt(d2_power) {
                None => spec.eval(t).unwrap_or(f64::NAN),
                Some(pow) => spec
                    .eval_d2(t)
                    .map(|v| v.abs().powf(pow))
                    .unwrap_or(f64::NAN),
            };
            if sense == OSTRO_SENSE_CONVEX {
                check_s_convex(g, s, iv, grid)
            } else {
                check_s_concave(g, s, iv, grid)
            }
        };
        match run() {
            Ok(report) => {
                unsafe { *out = convexity_out(&report) };
                ok()
            }
            Err(e) => fail(&e),
        }
    })
}

/// `1 / (s + 3)`, the weighted kernel moment of `t^s`.
///
/// # Safety
///
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ostro_moment_s2(s: f64, out: *mut f64) -> OstroStatus {
    guard(|| match moment_s2(s) {
        Ok(v) => store(out, v),
        Err(e) => fail(&e),
    })
}

/// `2 / ((s+1)(s+2)(s+3))`, the weighted kernel moment of `(1-t)^s`.
///
/// # Safety
///
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ostro_moment_beta(s: f64, out: *mut f64) -> OstroStatus {
    guard(|| match moment_beta(s) {
        Ok(v) => store(out, v),
        Err(e) => fail(&e),
    })
}

/// Arithmetic mean of two nonnegative numbers.
///
/// # Safety
///
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ostro_arithmetic_mean(x: f64, y: f64, out: *mut f64) -> OstroStatus {
    guard(|| match arithmetic_mean(x, y) {
        Ok(v) => store(out, v),
        Err(e) => fail(&e),
    })
}

/// Identric mean of two positive numbers.
///
/// # Safety
///
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ostro_identric_mean(x: f64, y: f64, out: *mut f64) -> OstroStatus {
    guard(|| match identric_mean(x, y) {
        Ok(v) => store(out, v),
        Err(e) => fail(&e),
    })
}

/// Generalized logarithmic mean of order `p` of two positive numbers;
/// `p` must stay away from 0 and -1.
///
/// # Safety
///
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ostro_gen_log_mean(
    x: f64,
    y: f64,
    p: f64,
    out: *mut f64,
) -> OstroStatus {
    guard(|| match gen_log_mean(x, y, p) {
        Ok(v) => store(out, v),
        Err(e) => fail(&e),
    })
}

/// Default relative tolerance used by [`ostro_bound`] when deciding
/// whether an inequality held.
#[no_mangle]
pub extern "C" fn ostro_default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}
