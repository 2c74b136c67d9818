//! Acceptance gate: one test per criterion, each printing a single
//! PASS line (with timing where a budget applies). Tolerances are pinned
//! in the assertions.

// expected values are frozen oracle output at full precision
#![allow(clippy::excessive_precision)]

use std::time::{Duration, Instant};

use ostrowski::bounds::{
    self, cerone_rhs, BoundContext, Equation, EquationParams, HypothesisMode, MBound,
};
use ostrowski::funcmodel::{FunctionSpec, Interval};
use ostrowski::kernels;
use ostrowski::means::{self, MeansInput, PowerPropVariant};
use ostrowski::quadrature::{integrate, moment_beta, moment_s2, QuadratureConfig};
use ostrowski::report::{run_campaign, CampaignConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn families() -> Vec<(FunctionSpec, Interval)> {
    let unit = Interval::new(0.0, 1.0).unwrap();
    vec![
        (FunctionSpec::Polynomial(vec![0.0, 0.0, 1.0]), unit),
        (FunctionSpec::Polynomial(vec![0.0, 0.0, 0.0, 1.0]), unit),
        (FunctionSpec::Polynomial(vec![0.0, 0.0, 0.0, 0.0, 1.0]), unit),
        (FunctionSpec::Exponential, unit),
        (FunctionSpec::LogNatural, Interval::new(1.0, 2.0).unwrap()),
        (
            FunctionSpec::Breckner { u: 0.0, v: 1.0, w: 0.0, s: 0.5 },
            Interval::new(0.25, 1.0).unwrap(),
        ),
    ]
}

fn points(iv: Interval, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            if i + 1 == n {
                iv.b()
            } else {
                iv.a() + iv.width() * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

fn assume_ctx() -> BoundContext {
    BoundContext { hypothesis: HypothesisMode::Assume, ..BoundContext::default() }
}

#[test]
fn criterion_01_identity_suite() {
    let start = Instant::now();
    let quad = QuadratureConfig::default();
    let mut checked = 0usize;
    for (f, iv) in families() {
        for x in points(iv, 11) {
            let e = kernels::identity_residual(&f, x, iv, &quad).unwrap();
            assert!(e.residual < 1e-9, "{f} on {iv} at x = {x}: residual {}", e.residual);
            checked += 1;
        }
    }
    assert_eq!(checked, 66);
    let dt = start.elapsed();
    assert!(dt < Duration::from_secs(5), "identity suite took {dt:?}");
    println!("criterion 01 identity suite: PASS ({checked} points, {dt:?})");
}

#[test]
fn criterion_02_dominance_suite() {
    let start = Instant::now();
    let equations: Vec<String> =
        ["e2.5", "e2.7", "teo3", "e2.9", "cor5", "cor8", "e1.2", "classic"]
            .iter()
            .map(|s| s.to_string())
            .collect();
    let groups = [
        (
            vec![
                "poly:0,0,1".to_string(),
                "poly:0,0,0,1".to_string(),
                "poly:0,0,0,0,1".to_string(),
                "exp".to_string(),
            ],
            Interval::new(0.0, 1.0).unwrap(),
        ),
        (vec!["ln".to_string()], Interval::new(1.0, 2.0).unwrap()),
        (vec!["breckner:0,1,0,0.5".to_string()], Interval::new(0.25, 1.0).unwrap()),
    ];
    let mut evaluated = 0usize;
    let mut hypothesis_ok = 0usize;
    for (functions, iv) in groups {
        let cfg = CampaignConfig {
            functions,
            intervals: vec![iv],
            equations: equations.clone(),
            s_values: vec![0.25, 0.5, 0.75, 1.0],
            p_values: vec![1.5, 2.0, 4.0],
            q_values: vec![1.0, 2.0, 3.0],
            x_points: 21,
            ..CampaignConfig::default()
        };
        let report = run_campaign(&cfg).unwrap();
        assert_eq!(
            report.summary.violations, 0,
            "violations on {iv}: {:?}",
            report.violations
        );
        assert_eq!(report.summary.skipped, 0, "unexpected skips on {iv}");
        evaluated += report.summary.evaluated;
        hypothesis_ok += report.summary.evaluated - report.summary.hypothesis_failed;
    }
    assert!(evaluated >= 5000, "only {evaluated} cells evaluated");
    assert!(hypothesis_ok >= 2000, "only {hypothesis_ok} hypothesis-verified cells");
    let dt = start.elapsed();
    assert!(dt < Duration::from_secs(60), "dominance suite took {dt:?}");
    println!(
        "criterion 02 dominance suite: PASS ({evaluated} cells, {hypothesis_ok} hypothesis-verified, 0 violations, {dt:?})"
    );
}

#[test]
fn criterion_03_reduction_equalities() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let ctx = assume_ctx();
    for _ in 0..1000 {
        let a = rng.gen_range(-2.0..2.0);
        let w = rng.gen_range(0.1..3.0);
        let iv = Interval::new(a, a + w).unwrap();
        let x = a + w * rng.gen_range(0.0..=1.0);
        let m = rng.gen_range(0.0..5.0);
        let s = rng.gen_range(0.05..=1.0);
        let p = rng.gen_range(1.1..5.0);
        let n_coeffs = rng.gen_range(1..=5);
        let coeffs: Vec<f64> = (0..n_coeffs).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let f = FunctionSpec::Polynomial(coeffs);

        // s = 1 collapses the moment form onto the sup-norm form.
        let tight = bounds::bound_sconvex_m(x, iv, 1.0, m, false).unwrap();
        assert!(rel_close(tight, cerone_rhs(x, iv, m, false), 1e-12));
        let relaxed = bounds::bound_sconvex_m(x, iv, 1.0, m, true).unwrap();
        assert!(rel_close(relaxed, cerone_rhs(x, iv, m, true), 1e-12));

        // q = 1 collapses the power-mean form onto the moment form.
        let pm = bounds::evaluate_equation(
            Equation::PowerMean,
            &f,
            Some(x),
            iv,
            &EquationParams { s: Some(s), q: Some(1.0), ..EquationParams::default() },
            &ctx,
        )
        .unwrap();
        let sc = bounds::evaluate_equation(
            Equation::SConvex,
            &f,
            Some(x),
            iv,
            &EquationParams { s: Some(s), ..EquationParams::default() },
            &ctx,
        )
        .unwrap();
        assert!(rel_close(pm.rhs, sc.rhs, 1e-12), "{} vs {}", pm.rhs, sc.rhs);

        // Same collapse for the uniform-norm power-mean form.
        let pmb = bounds::evaluate_equation(
            Equation::PowerMeanBounded,
            &f,
            Some(x),
            iv,
            &EquationParams {
                s: Some(s),
                q: Some(1.0),
                m: MBound::Given(m),
                ..EquationParams::default()
            },
            &ctx,
        )
        .unwrap();
        let scb = bounds::evaluate_equation(
            Equation::SConvexBoundedTight,
            &f,
            Some(x),
            iv,
            &EquationParams { s: Some(s), m: MBound::Given(m), ..EquationParams::default() },
            &ctx,
        )
        .unwrap();
        assert!(rel_close(pmb.rhs, scb.rhs, 1e-12), "{} vs {}", pmb.rhs, scb.rhs);

        // Midpoint corollaries agree with their parents at x = (a+b)/2.
        let mid = iv.midpoint();
        let parent = bounds::evaluate_equation(
            Equation::Cerone,
            &f,
            Some(mid),
            iv,
            &EquationParams::default(),
            &ctx,
        )
        .unwrap();
        let specialized = bounds::evaluate_equation(
            Equation::Midpoint,
            &f,
            None,
            iv,
            &EquationParams::default(),
            &ctx,
        )
        .unwrap();
        assert!(rel_close(specialized.rhs, parent.rhs, 1e-12));
        assert!(rel_close(specialized.lhs, parent.lhs, 1e-12));

        let parent = bounds::evaluate_equation(
            Equation::SConcave,
            &f,
            Some(mid),
            iv,
            &EquationParams { s: Some(s), p: Some(p), ..EquationParams::default() },
            &ctx,
        )
        .unwrap();
        let specialized = bounds::evaluate_equation(
            Equation::SConcaveMidpoint,
            &f,
            None,
            iv,
            &EquationParams { s: Some(s), p: Some(p), ..EquationParams::default() },
            &ctx,
        )
        .unwrap();
        assert!(rel_close(specialized.rhs, parent.rhs, 1e-12));
        assert!(rel_close(specialized.lhs, parent.lhs, 1e-12));
    }
    println!("criterion 03 reduction equalities: PASS (1000 random tuples)");
}

#[test]
fn criterion_04_exact_witnesses() {
    // Cubic moment-form equality at s = 1, x = 1/2.
    let f = FunctionSpec::Polynomial(vec![0.0, 0.0, 0.0, 1.0]);
    let iv = Interval::new(0.0, 1.0).unwrap();
    let r = bounds::evaluate_equation(
        Equation::SConvex,
        &f,
        Some(0.5),
        iv,
        &EquationParams { s: Some(1.0), ..EquationParams::default() },
        &BoundContext::default(),
    )
    .unwrap();
    assert!((r.lhs - 0.125).abs() < 1e-9, "lhs = {}", r.lhs);
    assert!((r.rhs - 0.125).abs() < 1e-9, "rhs = {}", r.rhs);
    assert!(r.holds && r.hypothesis_checked);

    // First-derivative sharpness: f = t at x = a gives lhs = rhs = (b-a)/2.
    for (a, b) in [(0.0, 1.0), (1.0, 3.0)] {
        let iv = Interval::new(a, b).unwrap();
        let r = bounds::evaluate_equation(
            Equation::Classic,
            &FunctionSpec::Polynomial(vec![0.0, 1.0]),
            Some(a),
            iv,
            &EquationParams::default(),
            &BoundContext::default(),
        )
        .unwrap();
        let half = 0.5 * iv.width();
        assert!((r.lhs - half).abs() < 1e-12, "lhs = {}", r.lhs);
        assert!((r.rhs - half).abs() < 1e-12, "rhs = {}", r.rhs);
    }
    println!("criterion 04 exact witnesses: PASS (cubic moment equality, first-derivative sharpness)");
}

#[test]
fn criterion_05_hadamard_best_constant() {
    let r = bounds::evaluate_equation(
        Equation::HadamardRight,
        &FunctionSpec::PowerS(0.5),
        None,
        Interval::new(0.0, 1.0).unwrap(),
        &EquationParams { s: Some(0.5), ..EquationParams::default() },
        &BoundContext::default(),
    )
    .unwrap();
    // mean of sqrt(t) = 2/3 equals (f(0)+f(1))/(s+1) exactly.
    assert!((r.lhs - r.rhs).abs() < 1e-9, "lhs = {}, rhs = {}", r.lhs, r.rhs);
    assert!((r.rhs - 2.0 / 3.0).abs() < 1e-9);
    assert!(r.holds && r.hypothesis_checked);
    println!("criterion 05 endpoint-average best constant: PASS (equality at the sqrt witness)");
}

#[test]
fn criterion_06_moment_identities() {
    let quad = QuadratureConfig::default();
    let unit = Interval::new(0.0, 1.0).unwrap();
    for s in [0.1, 0.25, 0.5, 0.75, 1.0] {
        let m2 = moment_s2(s).unwrap();
        let byq = integrate(|t| t * t * t.powf(s), unit, &quad).unwrap().value;
        assert!((m2 - byq).abs() < 1e-10, "s = {s}: {m2} vs {byq}");
        let mb = moment_beta(s).unwrap();
        let byq = integrate(|t| t * t * (1.0 - t).powf(s), unit, &quad).unwrap().value;
        assert!((mb - byq).abs() < 1e-10, "s = {s}: {mb} vs {byq}");
    }
    println!("criterion 06 moment identities: PASS (5 exponents, both moments)");
}

#[test]
fn criterion_07_means_suite() {
    let i12 = means::identric_mean(1.0, 2.0).unwrap();
    assert!((i12 - 4.0 / 1f64.exp()).abs() < 1e-12, "I(1,2) = {i12}");

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let x = rng.gen_range(0.01..50.0);
        let y = rng.gen_range(0.01..50.0);
        let i = means::identric_mean(x, y).unwrap();
        let a = means::arithmetic_mean(x, y).unwrap();
        assert!(i <= a + 1e-12 * (1.0 + a), "I({x},{y}) = {i} > A = {a}");
    }

    let grid = [-0.5, -0.1, -1e-4, 1e-4, 0.5, 1.0, 2.0, 5.0];
    for _ in 0..50 {
        let x = rng.gen_range(0.05..10.0);
        let y = x + rng.gen_range(0.01..10.0);
        let mut prev = f64::NEG_INFINITY;
        for p in grid {
            let l = means::gen_log_mean(x, y, p).unwrap();
            assert!(l >= prev - 1e-9 * (1.0 + l.abs()), "L_{p}({x},{y}) broke monotonicity");
            prev = l;
        }
        let i = means::identric_mean(x, y).unwrap();
        assert!((means::gen_log_mean(x, y, 1e-4).unwrap() - i).abs() < 1e-3);
        assert!((means::gen_log_mean(x, y, -1e-4).unwrap() - i).abs() < 1e-3);
    }

    // Closed-form deviation at (s = 0.5, a = 0.25, b = 1, x = A); the
    // expected values are re-derived, not transcribed.
    let input = MeansInput::new(0.25, 1.0, 0.5, None, None, None).unwrap();
    let r = means::prop_power_bound(&input, PowerPropVariant::Moment, &BoundContext::default())
        .unwrap();
    assert!((r.lhs - 0.012791637264317055).abs() < 1e-5, "lhs = {}", r.lhs);
    assert!((r.rhs - 0.061607142857142857).abs() < 1e-5, "rhs = {}", r.rhs);
    assert!(r.holds && r.hypothesis_checked);
    println!(
        "criterion 07 means suite: PASS (I(1,2), 1000 orderings, L_p monotone, power-mean deviation lhs {:.6} rhs {:.6})",
        r.lhs, r.rhs
    );
}

#[test]
fn criterion_08_log_identric_proposition() {
    let input = MeansInput::new(1.0, 2.0, 1.0, None, Some(2.0), None).unwrap();
    let rep = means::prop_log_identric(&input, &BoundContext::default()).unwrap();
    assert!((rep.corrected.lhs - 0.019170746988273763).abs() < 1e-9);
    assert!((rep.corrected.rhs - 0.027015351891426031).abs() < 1e-9);
    // Within the printed approximations at their stated tolerance.
    assert!((rep.corrected.rhs - 0.027015).abs() < 1e-5);
    assert!((rep.corrected.lhs - 0.019165).abs() < 1e-5);
    assert!(rep.corrected.rhs >= rep.corrected.lhs);
    assert!(rep.corrected.holds);
    assert!(rep.printed_rhs_is_nonpositive, "printed bracket must evaluate non-positive");
    assert!(rep.printed.rhs < 0.0);
    assert!(!rep.printed.holds);
    println!(
        "criterion 08 log-identric proposition: PASS (corrected rhs {:.6} >= lhs {:.6}; printed rhs {:.6} flagged)",
        rep.corrected.rhs, rep.corrected.lhs, rep.printed.rhs
    );
}

#[test]
fn criterion_09_negative_control() {
    // f'' = t - t^2 is concave, not s-convex; with gating disabled the
    // moment bound degenerates to 0 at x = 0 while the deviation is 0.025.
    let impostor =
        FunctionSpec::Polynomial(vec![0.0, 0.0, 0.0, 1.0 / 6.0, -1.0 / 12.0]);
    let iv = Interval::new(0.0, 1.0).unwrap();
    let r = bounds::evaluate_equation(
        Equation::SConvex,
        &impostor,
        Some(0.0),
        iv,
        &EquationParams { s: Some(0.5), ..EquationParams::default() },
        &assume_ctx(),
    )
    .unwrap();
    assert!(r.hypothesis_checked, "gating disabled must claim the hypothesis");
    assert!(!r.holds, "impostor must violate: lhs = {}, rhs = {}", r.lhs, r.rhs);

    // Same through the campaign runner.
    let cfg = CampaignConfig {
        functions: vec![impostor.to_string()],
        intervals: vec![iv],
        equations: vec!["e2.5".into()],
        s_values: vec![0.5],
        x_points: 5,
        assume_hypotheses: true,
        ..CampaignConfig::default()
    };
    let report = run_campaign(&cfg).unwrap();
    assert!(report.summary.violations >= 1, "campaign caught no violation");

    // With gating on, the same input is reported as hypothesis-unmet instead.
    let checked = bounds::evaluate_equation(
        Equation::SConvex,
        &impostor,
        Some(0.0),
        iv,
        &EquationParams { s: Some(0.5), ..EquationParams::default() },
        &BoundContext::default(),
    )
    .unwrap();
    assert!(!checked.hypothesis_checked);
    println!(
        "criterion 09 negative control: PASS ({} campaign violations with gating disabled)",
        report.summary.violations
    );
}

#[test]
fn criterion_10_determinism() {
    let cfg = CampaignConfig::default();
    let first = run_campaign(&cfg).unwrap().to_json();
    let second = run_campaign(&cfg).unwrap().to_json();
    assert_eq!(first, second, "in-process campaign runs differ");

    let exe = env!("CARGO_BIN_EXE_ostrowski");
    let dir = std::env::temp_dir();
    let out1 = dir.join(format!("ostro_acc_{}_c10_a.json", std::process::id()));
    let out2 = dir.join(format!("ostro_acc_{}_c10_b.json", std::process::id()));
    for out in [&out1, &out2] {
        let status = std::process::Command::new(exe)
            .args(["campaign", "--out", out.to_str().unwrap()])
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0), "campaign exited nonzero");
    }
    let bytes1 = std::fs::read(&out1).unwrap();
    let bytes2 = std::fs::read(&out2).unwrap();
    assert_eq!(bytes1, bytes2, "CLI campaign runs differ");
    assert_eq!(bytes1.strip_suffix(b"\n").unwrap(), first.as_bytes());
    std::fs::remove_file(out1).ok();
    std::fs::remove_file(out2).ok();
    println!(
        "criterion 10 determinism: PASS (byte-identical reports, {} bytes)",
        bytes1.len()
    );
}
