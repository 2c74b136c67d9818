//! Numerical toolkit for Ostrowski-type quadrature error bounds driven by
//! s-convexity of the second derivative.
//!
//! The crate models a small family of twice-differentiable test functions,
//! evaluates the deviation of a point value from the interval mean (the
//! Ostrowski functional), verifies the kernel identity that every bound rests
//! on, and then checks a catalogue of bounds: the classical first-derivative
//! bound, second-derivative bounds under s-convexity, their Hölder and
//! power-mean variants, an s-concave variant, perturbed-trapezoid forms, the
//! Hermite-Hadamard pair, and special-mean consequences. A campaign runner
//! sweeps the whole catalogue over function/interval/parameter grids and
//! reports margins, hypothesis status, and violations.

pub mod bounds;
pub mod cli;
pub mod convexity;
pub mod error;
pub mod funcmodel;
pub mod kernels;
pub mod means;
pub mod quadrature;
pub mod report;

pub use bounds::{BoundContext, BoundResult, Equation};
pub use error::{Error, Result};
pub use funcmodel::{FunctionSpec, Interval};
pub use quadrature::{IntegralEstimate, QuadratureConfig};
