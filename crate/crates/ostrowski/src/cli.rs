//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage or evaluation errors, 2 when a
//! hypothesis-satisfying inequality instance is violated (or a convexity
//! check comes back refuted), so scripts can tell "broken input" from
//! "broken bound".

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{
    self, BoundContext, BoundResult, Equation, EquationParams, HypothesisMode, MBound,
    DEFAULT_CONVEXITY_GRID, DEFAULT_TOLERANCE,
};
use crate::convexity::{self, Verdict};
use crate::error::{Error, Result};
use crate::funcmodel::{FunctionSpec, Interval};
use crate::kernels;
use crate::means::{self, MeansInput, PowerPropVariant};
use crate::quadrature::QuadratureConfig;
use crate::report::{self, CampaignConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SenseArg {
    Convex,
    Concave,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    /// The function values themselves.
    #[value(name = "values")]
    Values,
    /// `|f''|` raised to `--power`.
    #[value(name = "d2abs")]
    D2Abs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PropArg {
    Ee1,
    Ee2,
    Ee3,
    P6,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShowArg {
    #[value(alias = "A")]
    A,
    #[value(alias = "I")]
    I,
    #[value(alias = "L")]
    L,
}

#[derive(Debug, Parser)]
#[command(
    name = "ostrowski",
    version,
    about = "Evaluate, check, and batch-verify Ostrowski-type bounds \
             for functions with s-convex second derivatives"
)]
pub struct Cli {
    /// Output encoding for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Absolute tolerance of the adaptive quadrature.
    #[arg(long, global = true, default_value_t = 1e-11)]
    pub quad_tol: f64,
    /// Maximum bisection depth of the adaptive quadrature.
    #[arg(long, global = true, default_value_t = 60)]
    pub quad_depth: u32,
    /// Relative slack when deciding whether an inequality held.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate both sides of the second-derivative kernel identity at x.
    Identity {
        #[arg(long)]
        function: String,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        x: f64,
    },
    /// Evaluate one inequality instance by its id (classic, e1.2, e2.5, ...).
    Bound {
        #[arg(long)]
        equation: String,
        #[arg(long)]
        function: String,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        x: Option<f64>,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
        /// Uniform bound on |f''| to use instead of the computed sup.
        #[arg(long)]
        m: Option<f64>,
        /// Treat the hypothesis as satisfied without checking it.
        #[arg(long)]
        assume_hypothesis: bool,
        /// Lattice resolution of the hypothesis check.
        #[arg(long, default_value_t = DEFAULT_CONVEXITY_GRID)]
        grid: usize,
    },
    /// Check s-convexity or s-concavity on a lattice of triples.
    Convexity {
        #[arg(long)]
        function: String,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        s: f64,
        #[arg(long, value_enum, default_value_t = SenseArg::Convex)]
        sense: SenseArg,
        #[arg(long, value_enum, default_value_t = TargetArg::Values)]
        target: TargetArg,
        /// Exponent applied to |f''| when the target is d2abs.
        #[arg(long, default_value_t = 1.0)]
        power: f64,
        #[arg(long, default_value_t = DEFAULT_CONVEXITY_GRID)]
        grid: usize,
    },
    /// Special means: evaluate one (A, I, L) or verify a means proposition.
    #[command(group = ArgGroup::new("means_mode").required(true).args(["prop", "show"]))]
    Means {
        /// Proposition to verify: ee1, ee2, ee3, or p6.
        #[arg(long, value_enum)]
        prop: Option<PropArg>,
        /// Mean to evaluate: a (arithmetic), i (identric), l (generalized log).
        #[arg(long, value_enum)]
        show: Option<ShowArg>,
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        b: Option<f64>,
        /// Evaluation point of ee1/ee2/ee3, or first argument of --show.
        #[arg(long)]
        x: Option<f64>,
        /// Second argument of --show.
        #[arg(long)]
        y: Option<f64>,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long)]
        assume_hypothesis: bool,
        #[arg(long, default_value_t = DEFAULT_CONVEXITY_GRID)]
        grid: usize,
    },
    /// Evaluate one bound along evenly spaced evaluation points.
    Sweep {
        #[arg(long)]
        equation: String,
        #[arg(long)]
        function: String,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long, default_value_t = 21)]
        points: usize,
        #[arg(long)]
        assume_hypothesis: bool,
        #[arg(long, default_value_t = DEFAULT_CONVEXITY_GRID)]
        grid: usize,
    },
    /// Run a verification campaign over a whole grid of inputs.
    Campaign {
        /// TOML configuration; omitted fields fall back to the defaults.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Negative-control switch: mark hypotheses satisfied unchecked.
        #[arg(long)]
        assume_hypotheses: bool,
    },
}

struct Outcome {
    text: String,
    violation: bool,
}

/// Parses and executes an invocation, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli.out, &out.text) {
                eprintln!("error: {e}");
                return 1;
            }
            if out.violation {
                2
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    let mut body = text.to_string();
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Error::Config(format!("write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn hyp_mode(assume: bool) -> HypothesisMode {
    if assume {
        HypothesisMode::Assume
    } else {
        HypothesisMode::Check
    }
}

fn parse_function(id: &str) -> Result<FunctionSpec> {
    let f: FunctionSpec = id.parse()?;
    f.validate()?;
    Ok(f)
}

fn render_bounds(format: Format, results: &[BoundResult]) -> String {
    match format {
        Format::Json => {
            if results.len() == 1 {
                serde_json::to_string(&results[0]).expect("bound serializes")
            } else {
                serde_json::to_string(results).expect("bounds serialize")
            }
        }
        Format::Csv => report::bound_csv(results),
    }
}

fn value_profile(f: &FunctionSpec) -> impl Fn(f64) -> f64 + '_ {
    move |t| f.eval(t).unwrap_or(f64::NAN)
}

fn d2_profile(f: &FunctionSpec, power: f64) -> impl Fn(f64) -> f64 + '_ {
    move |t| {
        let v = f.eval_d2(t).map(f64::abs).unwrap_or(f64::NAN);
        if power == 1.0 {
            v
        } else {
            v.powf(power)
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let quad = QuadratureConfig::new(cli.quad_tol, cli.quad_depth)?;
    match &cli.cmd {
        Command::Identity { function, a, b, x } => {
            let f = parse_function(function)?;
            let iv = Interval::new(*a, *b)?;
            let ev = kernels::identity_residual(&f, *x, iv, &quad)?;
            let text = match cli.format {
                Format::Json => serde_json::to_string(&ev).expect("evaluation serializes"),
                Format::Csv => format!(
                    "x,lhs_signed,rhs_identity,residual\n{},{},{},{}\n",
                    ev.x, ev.lhs_signed, ev.rhs_identity, ev.residual
                ),
            };
            Ok(Outcome { text, violation: false })
        }
        Command::Bound {
            equation,
            function,
            a,
            b,
            x,
            s,
            p,
            q,
            m,
            assume_hypothesis,
            grid,
        } => {
            let eq: Equation = equation.parse()?;
            let f = parse_function(function)?;
            let iv = Interval::new(*a, *b)?;
            let ctx = BoundContext {
                quad,
                tolerance: cli.tolerance,
                convexity_grid: *grid,
                hypothesis: hyp_mode(*assume_hypothesis),
            };
            let params = EquationParams {
                s: *s,
                p: *p,
                q: *q,
                m: m.map(MBound::Given).unwrap_or(MBound::Auto),
            };
            let r = bounds::evaluate_equation(eq, &f, *x, iv, &params, &ctx)?;
            Ok(Outcome {
                violation: r.hypothesis_checked && !r.holds,
                text: render_bounds(cli.format, std::slice::from_ref(&r)),
            })
        }
        Command::Convexity { function, a, b, s, sense, target, power, grid } => {
            let f = parse_function(function)?;
            let iv = Interval::new(*a, *b)?;
            if !(power.is_finite() && *power > 0.0) {
                return Err(Error::Param(format!("power must be finite and > 0, got {power}")));
            }
            let rep = match (*target, *sense) {
                (TargetArg::Values, SenseArg::Convex) => {
                    convexity::check_s_convex(value_profile(&f), *s, iv, *grid)?
                }
                (TargetArg::Values, SenseArg::Concave) => {
                    convexity::check_s_concave(value_profile(&f), *s, iv, *grid)?
                }
                (TargetArg::D2Abs, SenseArg::Convex) => {
                    convexity::check_s_convex(d2_profile(&f, *power), *s, iv, *grid)?
                }
                (TargetArg::D2Abs, SenseArg::Concave) => {
                    convexity::check_s_concave(d2_profile(&f, *power), *s, iv, *grid)?
                }
            };
            let text = match cli.format {
                Format::Json => serde_json::to_string(&rep).expect("report serializes"),
                Format::Csv => {
                    let verdict = match rep.verdict {
                        Verdict::Satisfied => "satisfied",
                        Verdict::Violated => "violated",
                    };
                    let (wx, wy, wt) = rep
                        .witness
                        .map(|w| (w.x.to_string(), w.y.to_string(), w.t.to_string()))
                        .unwrap_or_default();
                    format!(
                        "verdict,worst_violation,samples,witness_x,witness_y,witness_t\n{},{},{},{},{},{}\n",
                        verdict, rep.worst_violation, rep.samples, wx, wy, wt
                    )
                }
            };
            Ok(Outcome { text, violation: rep.verdict == Verdict::Violated })
        }
        Command::Means {
            prop,
            show,
            a,
            b,
            x,
            y,
            s,
            p,
            q,
            assume_hypothesis,
            grid,
        } => {
            let ctx = BoundContext {
                quad,
                tolerance: cli.tolerance,
                convexity_grid: *grid,
                hypothesis: hyp_mode(*assume_hypothesis),
            };
            if let Some(show) = show {
                let x = x.ok_or_else(|| Error::Param("--x is required with --show".into()))?;
                let y = y.ok_or_else(|| Error::Param("--y is required with --show".into()))?;
                let (name, used_p, value) = match show {
                    ShowArg::A => ("A", None, means::arithmetic_mean(x, y)?),
                    ShowArg::I => ("I", None, means::identric_mean(x, y)?),
                    ShowArg::L => {
                        let p = p.ok_or_else(|| {
                            Error::Param("--p (the exponent) is required with --show l".into())
                        })?;
                        ("L", Some(p), means::gen_log_mean(x, y, p)?)
                    }
                };
                #[derive(Serialize)]
                struct MeanValue {
                    mean: &'static str,
                    x: f64,
                    y: f64,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    p: Option<f64>,
                    value: f64,
                }
                let mv = MeanValue { mean: name, x, y, p: used_p, value };
                let text = match cli.format {
                    Format::Json => serde_json::to_string(&mv).expect("mean serializes"),
                    Format::Csv => format!(
                        "mean,x,y,p,value\n{},{},{},{},{}\n",
                        name,
                        x,
                        y,
                        used_p.map(|p| p.to_string()).unwrap_or_default(),
                        value
                    ),
                };
                return Ok(Outcome { text, violation: false });
            }
            let prop = prop.expect("argument group guarantees one mode");
            let a = a.ok_or_else(|| Error::Param("--a is required with --prop".into()))?;
            let b = b.ok_or_else(|| Error::Param("--b is required with --prop".into()))?;
            if y.is_some() {
                return Err(Error::Param("--y only applies to --show".into()));
            }
            match prop {
                PropArg::Ee1 | PropArg::Ee2 | PropArg::Ee3 => {
                    let s = s.ok_or_else(|| {
                        Error::Param("--s is required for ee1, ee2 and ee3".into())
                    })?;
                    let input = MeansInput::new(a, b, s, *x, *p, *q)?;
                    let variant = match prop {
                        PropArg::Ee1 => PowerPropVariant::Moment,
                        PropArg::Ee2 => PowerPropVariant::Holder,
                        PropArg::Ee3 => PowerPropVariant::PowerMean,
                        PropArg::P6 => unreachable!(),
                    };
                    let r = means::prop_power_bound(&input, variant, &ctx)?;
                    Ok(Outcome {
                        violation: r.hypothesis_checked && !r.holds,
                        text: render_bounds(cli.format, std::slice::from_ref(&r)),
                    })
                }
                PropArg::P6 => {
                    if x.is_some() {
                        return Err(Error::Param("p6 has no free evaluation point x".into()));
                    }
                    let input = MeansInput::new(a, b, s.unwrap_or(1.0), None, *p, *q)?;
                    let rep = means::prop_log_identric(&input, &ctx)?;
                    let text = match cli.format {
                        Format::Json => serde_json::to_string(&rep).expect("report serializes"),
                        Format::Csv => {
                            report::bound_csv(&[rep.corrected.clone(), rep.printed.clone()])
                        }
                    };
                    Ok(Outcome {
                        violation: rep.corrected.hypothesis_checked && !rep.corrected.holds,
                        text,
                    })
                }
            }
        }
        Command::Sweep {
            equation,
            function,
            a,
            b,
            s,
            p,
            q,
            points,
            assume_hypothesis,
            grid,
        } => {
            let eq: Equation = equation.parse()?;
            let f = parse_function(function)?;
            let iv = Interval::new(*a, *b)?;
            let ctx = BoundContext {
                quad,
                tolerance: cli.tolerance,
                convexity_grid: *grid,
                hypothesis: hyp_mode(*assume_hypothesis),
            };
            let params = EquationParams { s: *s, p: *p, q: *q, m: MBound::Auto };
            let rep = report::sweep(&f, eq, iv, &params, *points, &ctx)?;
            let violation = rep
                .points
                .iter()
                .filter_map(|pt| pt.result.as_ref())
                .any(|r| r.hypothesis_checked && !r.holds);
            let text = match cli.format {
                Format::Json => rep.to_json(),
                Format::Csv => rep.to_csv(),
            };
            Ok(Outcome { text, violation })
        }
        Command::Campaign { config, assume_hypotheses } => {
            let mut cfg = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Error::Config(format!("read {}: {e}", path.display())))?;
                    CampaignConfig::from_toml_str(&text)?
                }
                None => CampaignConfig::default(),
            };
            if *assume_hypotheses {
                cfg.assume_hypotheses = true;
            }
            let rep = report::run_campaign(&cfg)?;
            let text = match cli.format {
                Format::Json => rep.to_json(),
                Format::Csv => rep.to_csv(),
            };
            Ok(Outcome { text, violation: rep.summary.violations > 0 })
        }
    }
}
