//! Batch verification: point sweeps of a single bound and full campaigns
//! over a grid of functions, intervals, equations, and exponents.
//!
//! Cells that cannot be evaluated (domain restrictions, singular endpoint
//! derivatives, unbounded sup norms) are recorded as skipped with the reason,
//! never dropped, so two runs of the same configuration produce byte-equal
//! reports.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::bounds::{
    check_d2_hypothesis, evaluate_equation, validate_s, BoundContext, BoundResult, Equation,
    EquationParams, ExponentKind, HypKind, HypothesisMode, MBound, SParams,
    DEFAULT_CONVEXITY_GRID, DEFAULT_TOLERANCE,
};
use crate::convexity::{self, Sense};
use crate::error::{Error, Result};
use crate::funcmodel::{FunctionSpec, Interval};
use crate::quadrature::QuadratureConfig;

fn default_functions() -> Vec<String> {
    ["poly:0,0,1", "poly:0,0,0,1", "poly:0,0,0,0,1", "exp", "ln", "breckner:0,1,0,0.5"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

fn default_intervals() -> Vec<Interval> {
    vec![
        Interval::new(0.0, 1.0).unwrap(),
        Interval::new(1.0, 2.0).unwrap(),
        Interval::new(0.25, 1.0).unwrap(),
    ]
}

fn default_equations() -> Vec<String> {
    ["classic", "e1.2", "e1.1a", "e1.1b", "e2.5", "e2.7", "teo3", "e2.9", "cor5", "cor8"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

fn default_s_values() -> Vec<f64> {
    vec![0.25, 0.5, 0.75, 1.0]
}

fn default_p_values() -> Vec<f64> {
    vec![1.5, 2.0, 4.0]
}

fn default_q_values() -> Vec<f64> {
    vec![1.0, 2.0, 3.0]
}

fn default_x_points() -> usize {
    5
}

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

fn default_quad_abs_tol() -> f64 {
    1e-11
}

fn default_quad_max_depth() -> u32 {
    60
}

fn default_convexity_grid() -> usize {
    DEFAULT_CONVEXITY_GRID
}

/// Grid of inputs for [`run_campaign`]; loadable from TOML, every field
/// optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    /// Function ids such as `poly:0,0,1`, `exp`, `pow_s:0.5`.
    #[serde(default = "default_functions")]
    pub functions: Vec<String>,
    #[serde(default = "default_intervals")]
    pub intervals: Vec<Interval>,
    /// Equation ids; only directly evaluable entries are allowed.
    #[serde(default = "default_equations")]
    pub equations: Vec<String>,
    #[serde(default = "default_s_values")]
    pub s_values: Vec<f64>,
    #[serde(default = "default_p_values")]
    pub p_values: Vec<f64>,
    #[serde(default = "default_q_values")]
    pub q_values: Vec<f64>,
    /// Evaluation points per interval for bounds with a free `x`.
    #[serde(default = "default_x_points")]
    pub x_points: usize,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default = "default_quad_abs_tol")]
    pub quad_abs_tol: f64,
    #[serde(default = "default_quad_max_depth")]
    pub quad_max_depth: u32,
    #[serde(default = "default_convexity_grid")]
    pub convexity_grid: usize,
    /// Negative-control switch: mark every hypothesis as satisfied without
    /// checking, so genuine numeric violations surface in `violations`.
    #[serde(default)]
    pub assume_hypotheses: bool,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            functions: default_functions(),
            intervals: default_intervals(),
            equations: default_equations(),
            s_values: default_s_values(),
            p_values: default_p_values(),
            q_values: default_q_values(),
            x_points: default_x_points(),
            tolerance: default_tolerance(),
            quad_abs_tol: default_quad_abs_tol(),
            quad_max_depth: default_quad_max_depth(),
            convexity_grid: default_convexity_grid(),
            assume_hypotheses: false,
        }
    }
}

struct Plan {
    functions: Vec<FunctionSpec>,
    equations: Vec<Equation>,
}

impl CampaignConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(format!("campaign config: {e}")))
    }

    fn plan(&self) -> Result<Plan> {
        if self.functions.is_empty() {
            return Err(Error::Config("campaign needs at least one function".into()));
        }
        if self.intervals.is_empty() {
            return Err(Error::Config("campaign needs at least one interval".into()));
        }
        if self.equations.is_empty() {
            return Err(Error::Config("campaign needs at least one equation".into()));
        }
        let functions = self
            .functions
            .iter()
            .map(|id| {
                let f: FunctionSpec = id.parse()?;
                f.validate()?;
                Ok(f)
            })
            .collect::<Result<Vec<_>>>()?;
        let equations = self
            .equations
            .iter()
            .map(|id| {
                let eq: Equation = id.parse()?;
                if !Equation::campaign_catalogue().contains(&eq) {
                    return Err(Error::Config(format!(
                        "equation {id} is not directly campaign-evaluable"
                    )));
                }
                Ok(eq)
            })
            .collect::<Result<Vec<_>>>()?;
        if equations.iter().any(|e| e.takes_s()) && self.s_values.is_empty() {
            return Err(Error::Config("s_values must not be empty".into()));
        }
        for &s in &self.s_values {
            validate_s(s)?;
        }
        if equations.iter().any(|e| e.exponent() == ExponentKind::HolderP)
            && self.p_values.is_empty()
        {
            return Err(Error::Config("p_values must not be empty".into()));
        }
        for &p in &self.p_values {
            if !(p.is_finite() && p > 1.0) {
                return Err(Error::Param(format!("p must be finite and > 1, got {p}")));
            }
        }
        if equations.iter().any(|e| e.exponent() == ExponentKind::PowerMeanQ)
            && self.q_values.is_empty()
        {
            return Err(Error::Config("q_values must not be empty".into()));
        }
        for &q in &self.q_values {
            if !(q.is_finite() && q >= 1.0) {
                return Err(Error::Param(format!("q must be finite and >= 1, got {q}")));
            }
        }
        if self.x_points < 2 {
            return Err(Error::Config(format!(
                "x_points must be at least 2, got {}",
                self.x_points
            )));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::Config(format!(
                "tolerance must be finite and positive, got {}",
                self.tolerance
            )));
        }
        QuadratureConfig::new(self.quad_abs_tol, self.quad_max_depth)?;
        if self.convexity_grid < 3 {
            return Err(Error::Config(format!(
                "convexity_grid needs at least 3 points, got {}",
                self.convexity_grid
            )));
        }
        Ok(Plan { functions, equations })
    }
}

/// One grid point of a campaign: either a result or a skip reason.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignCell {
    pub function: String,
    pub a: f64,
    pub b: f64,
    pub equation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<BoundResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub total: usize,
    pub evaluated: usize,
    pub skipped: usize,
    pub held: usize,
    /// Cells whose hypothesis was satisfied yet the inequality failed.
    pub violations: usize,
    /// Cells evaluated with an unmet (or assumed-away and refuted) hypothesis.
    pub hypothesis_failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub summary: CampaignSummary,
    /// Largest `lhs/rhs` per equation over hypothesis-verified cells with a
    /// positive right side; ratios at or below 1 mean the bound never tore.
    pub tightness: BTreeMap<String, f64>,
    pub violations: Vec<CampaignCell>,
    pub config: CampaignConfig,
    pub results: Vec<CampaignCell>,
}

pub(crate) fn linspace(iv: Interval, n: usize) -> Vec<f64> {
    let (a, b) = (iv.a(), iv.b());
    (0..n)
        .map(|i| {
            if i + 1 == n {
                b
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).clamp(a, b)
            }
        })
        .collect()
}

fn verify_hypothesis(
    f: &FunctionSpec,
    iv: Interval,
    kind: HypKind,
    s: Option<f64>,
    grid: usize,
) -> Result<bool> {
    let need_s = || s.ok_or_else(|| Error::Param("hypothesis check needs s".into()));
    match kind {
        HypKind::None => Ok(true),
        HypKind::D2SConvex(pow) => {
            check_d2_hypothesis(f, iv, need_s()?, pow, Sense::Convex, grid)
        }
        HypKind::D2SConcave(pow) => {
            check_d2_hypothesis(f, iv, need_s()?, pow, Sense::Concave, grid)
        }
        HypKind::ValueSConvexNonneg => convexity::check_value_hypothesis(f, need_s()?, iv, grid),
    }
}

fn resolve_exponents(
    eq: Equation,
    s: Option<f64>,
    p: Option<f64>,
    q: Option<f64>,
) -> Result<(Option<f64>, Option<f64>)> {
    let need_s = || s.ok_or_else(|| Error::Param(format!("equation {} needs s", eq.id())));
    match eq.exponent() {
        ExponentKind::Neither => Ok((None, None)),
        ExponentKind::HolderP => {
            let (p, q) = SParams::new(need_s()?, p, q)?.holder_pair()?;
            Ok((Some(p), Some(q)))
        }
        ExponentKind::PowerMeanQ => {
            let q = SParams::new(need_s()?, p, q)?.power_mean_q()?;
            Ok((None, Some(q)))
        }
    }
}

type HypKey = (usize, usize, u8, u64, u64);

fn hyp_key(fi: usize, ii: usize, kind: HypKind, s: Option<f64>) -> HypKey {
    let (tag, pow) = match kind {
        HypKind::None => (0u8, 0.0),
        HypKind::D2SConvex(pow) => (1, pow),
        HypKind::D2SConcave(pow) => (2, pow),
        HypKind::ValueSConvexNonneg => (3, 0.0),
    };
    (fi, ii, tag, pow.to_bits(), s.unwrap_or(f64::NAN).to_bits())
}

/// Evaluates every grid cell of the configuration, sharing hypothesis checks
/// across cells that differ only in `x`.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignReport> {
    let plan = cfg.plan()?;
    let quad = QuadratureConfig::new(cfg.quad_abs_tol, cfg.quad_max_depth)?;
    let mut memo: HashMap<HypKey, std::result::Result<bool, String>> = HashMap::new();
    let mut results = Vec::new();

    for (fi, f) in plan.functions.iter().enumerate() {
        for (ii, &iv) in cfg.intervals.iter().enumerate() {
            for &eq in &plan.equations {
                let s_opts: Vec<Option<f64>> = if eq.takes_s() {
                    cfg.s_values.iter().copied().map(Some).collect()
                } else {
                    vec![None]
                };
                for &s in &s_opts {
                    let pq: Vec<(Option<f64>, Option<f64>)> = match eq.exponent() {
                        ExponentKind::Neither => vec![(None, None)],
                        ExponentKind::HolderP => {
                            cfg.p_values.iter().map(|&p| (Some(p), None)).collect()
                        }
                        ExponentKind::PowerMeanQ => {
                            cfg.q_values.iter().map(|&q| (None, Some(q))).collect()
                        }
                    };
                    for &(p, q) in &pq {
                        let verdict: std::result::Result<bool, String> =
                            if cfg.assume_hypotheses {
                                Ok(true)
                            } else {
                                match resolve_exponents(eq, s, p, q)
                                    .and_then(|(pr, qr)| eq.hypothesis(pr, qr))
                                {
                                    Ok(kind) => memo
                                        .entry(hyp_key(fi, ii, kind, s))
                                        .or_insert_with(|| {
                                            verify_hypothesis(f, iv, kind, s, cfg.convexity_grid)
                                                .map_err(|e| e.to_string())
                                        })
                                        .clone(),
                                    Err(e) => Err(e.to_string()),
                                }
                            };
                        let xs: Vec<Option<f64>> = if eq.takes_x() {
                            linspace(iv, cfg.x_points).into_iter().map(Some).collect()
                        } else {
                            vec![None]
                        };
                        for &x in &xs {
                            let mut cell = CampaignCell {
                                function: f.to_string(),
                                a: iv.a(),
                                b: iv.b(),
                                equation: eq.id().to_string(),
                                s,
                                p,
                                q,
                                x,
                                result: None,
                                skipped: None,
                            };
                            match &verdict {
                                Err(reason) => {
                                    cell.skipped =
                                        Some(format!("hypothesis check failed: {reason}"));
                                }
                                Ok(v) => {
                                    let ctx = BoundContext {
                                        quad,
                                        tolerance: cfg.tolerance,
                                        convexity_grid: cfg.convexity_grid,
                                        hypothesis: if cfg.assume_hypotheses {
                                            HypothesisMode::Assume
                                        } else {
                                            HypothesisMode::Supplied(*v)
                                        },
                                    };
                                    let params = EquationParams { s, p, q, m: MBound::Auto };
                                    match evaluate_equation(eq, f, x, iv, &params, &ctx) {
                                        Ok(r) => cell.result = Some(r),
                                        Err(e) => cell.skipped = Some(e.to_string()),
                                    }
                                }
                            }
                            results.push(cell);
                        }
                    }
                }
            }
        }
    }

    let mut summary = CampaignSummary {
        total: results.len(),
        evaluated: 0,
        skipped: 0,
        held: 0,
        violations: 0,
        hypothesis_failed: 0,
    };
    let mut tightness: BTreeMap<String, f64> = BTreeMap::new();
    let mut violations = Vec::new();
    for cell in &results {
        match &cell.result {
            None => summary.skipped += 1,
            Some(r) => {
                summary.evaluated += 1;
                if r.holds {
                    summary.held += 1;
                } else if r.hypothesis_checked {
                    summary.violations += 1;
                    violations.push(cell.clone());
                }
                if !r.hypothesis_checked {
                    summary.hypothesis_failed += 1;
                }
                if r.hypothesis_checked && r.rhs > 0.0 {
                    let ratio = r.lhs / r.rhs;
                    let entry = tightness.entry(cell.equation.clone()).or_insert(f64::MIN);
                    if ratio > *entry {
                        *entry = ratio;
                    }
                }
            }
        }
    }

    Ok(CampaignReport { summary, tightness, violations, config: cfg.clone(), results })
}

fn opt_num(v: Option<f64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

impl CampaignReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("campaign report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "function,a,b,equation,s,p,q,x,lhs,rhs,margin,holds,hypothesis_checked,skipped\n",
        );
        for c in &self.results {
            let (lhs, rhs, margin, holds, hyp) = match &c.result {
                Some(r) => (
                    r.lhs.to_string(),
                    r.rhs.to_string(),
                    r.margin.to_string(),
                    r.holds.to_string(),
                    r.hypothesis_checked.to_string(),
                ),
                None => Default::default(),
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                csv_field(&c.function),
                c.a,
                c.b,
                c.equation,
                opt_num(c.s),
                opt_num(c.p),
                opt_num(c.q),
                opt_num(c.x),
                lhs,
                rhs,
                margin,
                holds,
                hyp,
                csv_field(c.skipped.as_deref().unwrap_or("")),
            ));
        }
        out
    }
}

/// One evaluation point of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub x: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<BoundResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub function: String,
    pub equation: String,
    pub a: f64,
    pub b: f64,
    pub points: Vec<SweepPoint>,
}

impl SweepReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("sweep report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,lhs,rhs,margin,holds,hypothesis_checked\n");
        for pt in &self.points {
            match &pt.result {
                Some(r) => out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    pt.x, r.lhs, r.rhs, r.margin, r.holds, r.hypothesis_checked
                )),
                None => out.push_str(&format!("{},,,,,\n", pt.x)),
            }
        }
        out
    }
}

/// Renders standalone bound results as CSV rows.
pub fn bound_csv(results: &[BoundResult]) -> String {
    let mut out = String::from("equation,x,lhs,rhs,margin,holds,hypothesis_checked\n");
    for r in results {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.equation_id,
            opt_num(r.x),
            r.lhs,
            r.rhs,
            r.margin,
            r.holds,
            r.hypothesis_checked
        ));
    }
    out
}

/// Evaluates one x-parameterized bound at `n_points` evenly spaced points.
/// The hypothesis is resolved once and shared by every point.
pub fn sweep(
    f: &FunctionSpec,
    eq: Equation,
    iv: Interval,
    params: &EquationParams,
    n_points: usize,
    ctx: &BoundContext,
) -> Result<SweepReport> {
    f.validate()?;
    if !Equation::campaign_catalogue().contains(&eq) {
        return Err(Error::Param(format!("equation {} cannot be swept directly", eq.id())));
    }
    if !eq.takes_x() {
        return Err(Error::Param(format!(
            "equation {} has no free evaluation point to sweep",
            eq.id()
        )));
    }
    if n_points < 2 {
        return Err(Error::Param(format!("a sweep needs at least 2 points, got {n_points}")));
    }
    let verdict = match ctx.hypothesis {
        HypothesisMode::Assume => true,
        HypothesisMode::Supplied(v) => v,
        HypothesisMode::Check => {
            let (pr, qr) = resolve_exponents(eq, params.s, params.p, params.q)?;
            let kind = eq.hypothesis(pr, qr)?;
            verify_hypothesis(f, iv, kind, params.s, ctx.convexity_grid)?
        }
    };
    let cell_ctx = BoundContext { hypothesis: HypothesisMode::Supplied(verdict), ..*ctx };
    let mut points = Vec::with_capacity(n_points);
    for x in linspace(iv, n_points) {
        match evaluate_equation(eq, f, Some(x), iv, params, &cell_ctx) {
            Ok(r) => points.push(SweepPoint { x, result: Some(r), skipped: None }),
            Err(e) => points.push(SweepPoint { x, result: None, skipped: Some(e.to_string()) }),
        }
    }
    Ok(SweepReport {
        function: f.to_string(),
        equation: eq.id().to_string(),
        a: iv.a(),
        b: iv.b(),
        points,
    })
}
