//! Acceptance gate: one test per release criterion, each printing a single
//! PASS/FAIL verdict line (run with `--nocapture` to see all of them).
//!
//! Two criteria are recorded failures — the stated bound or tolerance is not
//! attainable by the model as specified — and their tests pin the measured
//! behavior instead, so a silent regression *or* an unexplained pass both
//! fail the suite. The verdict line carries the evidence either way.

use std::time::Instant;

use magnon_steering::dynamics::{
    diffusion_matrix, drift_matrix, integrate_to_steady_state, lyapunov_residual, stability,
    steady_state_cm, CovarianceMatrix,
};
use magnon_steering::experiments::{
    evaluate_point, fig2_sweep, fig3_fig4_ratio_sweep, fig6_temperature_threshold,
    max_stable_gain, AxisSpec, PointOutcome, ThresholdMetric,
};
use magnon_steering::measures::{
    gaussian_steering, log_negativity, metrics_from_cm, two_mode_squeezed_vacuum, Direction,
    MetricsRecord,
};
use magnon_steering::model::{bath_moments, default_spec, SystemSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

enum Expectation {
    Pass,
    /// The criterion as stated is not attainable; the recorded analysis says
    /// why, and the test asserts the measured behavior hasn't drifted.
    DocumentedFail(&'static str),
}

fn report(number: u8, name: &str, criterion_met: bool, detail: &str, expectation: Expectation) {
    let verdict = if criterion_met { "PASS" } else { "FAIL" };
    println!("acceptance {number:02} {name}: {verdict} — {detail}");
    match expectation {
        Expectation::Pass => {
            assert!(criterion_met, "criterion {number:02} ({name}): {detail}");
        }
        Expectation::DocumentedFail(reason) => {
            assert!(
                !criterion_met,
                "criterion {number:02} ({name}) now passes — update the recorded analysis: {reason}"
            );
        }
    }
}

/// Random stable spec over the documented sampling ranges. `vary_kappas`
/// additionally randomizes the magnon linewidths (used by the swap test).
fn sample_stable_specs(seed: u64, count: usize, vary_kappas: bool) -> Vec<SystemSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut specs = Vec::with_capacity(count);
    while specs.len() < count {
        let mut spec = default_spec()
            .with_squeezing(rng.gen_range(0.0..=2.0), rng.gen_range(0.0..std::f64::consts::TAU))
            .with_opa(rng.gen_range(0.0..=0.49), rng.gen_range(0.0..std::f64::consts::TAU))
            .with_couplings(rng.gen_range(0.0..=8.0), rng.gen_range(0.0..=8.0))
            .with_temperature(rng.gen_range(0.0..=1.0));
        if vary_kappas {
            spec = spec.with_kappas(rng.gen_range(0.1..=1.0), rng.gen_range(0.1..=1.0));
        }
        // Keep a safety margin from the stability boundary so the covariance
        // stays well-conditioned for both solvers.
        if stability(&drift_matrix(&spec)).margin <= -0.02 {
            specs.push(spec);
        }
    }
    specs
}

fn solve(spec: &SystemSpec) -> CovarianceMatrix {
    let a = drift_matrix(spec);
    let f = diffusion_matrix(spec, &bath_moments(spec));
    steady_state_cm(&a, &f).expect("spec filtered for stability")
}

fn metrics(spec: &SystemSpec) -> MetricsRecord {
    match evaluate_point(spec) {
        PointOutcome::Metrics(m) => m,
        other => panic!("expected a stable point, got {other:?}"),
    }
}

#[test]
fn acceptance_01_vacuum_fixed_point() {
    let start = Instant::now();
    let spec = default_spec().with_temperature(0.0);
    let sigma = solve(&spec);
    let max_err = (0..6)
        .flat_map(|i| (0..6).map(move |j| (i, j)))
        .map(|(i, j)| (sigma.0[(i, j)] - if i == j { 0.5 } else { 0.0 }).abs())
        .fold(0.0_f64, f64::max);
    let m = metrics(&spec);
    let all_zero = [
        m.s_x1, m.s_y1, m.s_x2, m.s_y2, m.e12, m.g12, m.g21, m.gs, m.pop_a, m.pop_1, m.pop_2,
    ]
    .iter()
    .all(|&v| v == 0.0);
    let elapsed = start.elapsed().as_secs_f64();
    report(
        1,
        "vacuum fixed point",
        max_err < 1e-12 && all_zero && elapsed < 1.0,
        &format!("max |Σ − ½I| = {max_err:.2e}, all metrics exactly zero: {all_zero}, {elapsed:.2} s"),
        Expectation::Pass,
    );
}

#[test]
fn acceptance_02_oracle_equivalence() {
    let start = Instant::now();
    let specs = sample_stable_specs(0xA11CE, 100, false);
    let mut worst_diff = 0.0_f64;
    let mut worst_residual = 0.0_f64;
    for spec in &specs {
        let a = drift_matrix(spec);
        let f = diffusion_matrix(spec, &bath_moments(spec));
        let direct = steady_state_cm(&a, &f).unwrap();
        let integrated = integrate_to_steady_state(&a, &f, 1e-10).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                // Elementwise agreement, scaled against the entry magnitude
                // so boundary-adjacent points with large variances are
                // compared fairly.
                let scaled = (direct.0[(i, j)] - integrated.0[(i, j)]).abs()
                    / (1.0 + direct.0[(i, j)].abs());
                worst_diff = worst_diff.max(scaled);
            }
        }
        worst_residual = worst_residual.max(lyapunov_residual(&a, &f, &direct));
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        2,
        "oracle equivalence",
        worst_diff <= 1e-6 && worst_residual <= 1e-10 && elapsed < 30.0,
        &format!(
            "100 stable specs, worst scaled |Δσ| = {worst_diff:.2e}, worst residual = {worst_residual:.2e}, {elapsed:.1} s"
        ),
        Expectation::Pass,
    );
}

#[test]
fn acceptance_03_stability_bound() {
    let start = Instant::now();
    let measured = max_stable_gain(&default_spec());
    let elapsed = start.elapsed().as_secs_f64();
    let criterion_met = (0.48..=0.50).contains(&measured) && elapsed < 5.0;
    report(
        3,
        "stability bound",
        criterion_met,
        &format!(
            "measured Λ_max = {measured:.4} κ_a, stated range [0.48, 0.50]; \
             the drift spectrum stays in the left half-plane up to 0.60 exactly, {elapsed:.2} s"
        ),
        Expectation::DocumentedFail(
            "the reference operating ranges give Λ_max = 0.60 κ_a; 0.49 is quoted as the \
             working gain, not the spectral boundary",
        ),
    );
    // Pin the measured boundary so a real stability regression still trips.
    assert!(
        (measured - 0.6).abs() < 2e-4,
        "stability boundary moved: {measured}"
    );
}

#[test]
fn acceptance_04_no_steering_without_squeezed_drive() {
    let start = Instant::now();
    let lambda_max = max_stable_gain(&default_spec());
    let mut all_nonpositive = true;
    let mut e12_near_bound = 0.0;
    for i in 0..20 {
        let lambda = lambda_max * i as f64 / 20.0;
        let m = metrics(&default_spec().with_opa(lambda, 0.0));
        all_nonpositive &= m.g12_raw <= 0.0 && m.g21_raw <= 0.0;
        e12_near_bound = m.e12;
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        4,
        "no steering without squeezed drive",
        all_nonpositive && e12_near_bound > 0.0 && elapsed < 5.0,
        &format!(
            "unclamped steering ≤ 0 at all 20 gains: {all_nonpositive}; E12 = {e12_near_bound:.3} at Λ = {:.3}, {elapsed:.2} s",
            lambda_max * 19.0 / 20.0
        ),
        Expectation::Pass,
    );
}

#[test]
fn acceptance_05_symmetric_degeneracy() {
    let start = Instant::now();
    let mut worst_g = 0.0_f64;
    let mut worst_s = 0.0_f64;
    for i in 0..7 {
        for lambda in [0.0, 0.25, 0.49] {
            let spec = default_spec()
                .with_squeezing(2.0 * i as f64 / 6.0, 0.0)
                .with_opa(lambda, 0.0);
            let m = metrics(&spec);
            worst_g = worst_g.max((m.g12 - m.g21).abs());
            worst_s = worst_s.max((m.s_x1 - m.s_x2).abs());
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        5,
        "symmetric degeneracy",
        worst_g < 1e-10 && worst_s < 1e-10,
        &format!(
            "21 points at Γ₁ = Γ₂: max |G12 − G21| = {worst_g:.2e}, max |S_X1 − S_X2| = {worst_s:.2e} dB, {elapsed:.2} s"
        ),
        Expectation::Pass,
    );
}

#[test]
fn acceptance_06_peak_ratios() {
    let start = Instant::now();
    let base = default_spec().with_squeezing(1.0, 0.0).with_opa(0.49, 0.0);
    let sweep = fig3_fig4_ratio_sweep(&base, AxisSpec::new("ratio", 0.5, 2.0, 101), true);
    let loc_12 = sweep.peak_g12.as_ref().expect("peak exists").location;
    let loc_21 = sweep.peak_g21.as_ref().expect("peak exists").location;
    let in_range = (0.80..=0.95).contains(&loc_12) && (1.15..=1.40).contains(&loc_21);
    let reciprocity_err = (loc_21 - 1.0 / loc_12).abs() / (1.0 / loc_12);
    let elapsed = start.elapsed().as_secs_f64();
    report(
        6,
        "peak ratios",
        in_range && reciprocity_err <= 0.05 && elapsed < 30.0,
        &format!(
            "peaks at {loc_12:.4} and {loc_21:.4} (both in range: {in_range}); \
             locations reciprocal to {:.1}% vs the stated 5%, {elapsed:.2} s",
            reciprocity_err * 100.0
        ),
        Expectation::DocumentedFail(
            "the two peak locations are genuinely non-reciprocal (≈7.6% apart); the \
             mode-swap symmetry exchanges the curves only at equal linewidths AND equal \
             couplings, which a Γ₂ sweep leaves behind",
        ),
    );
    // Pin the passing half and the measured asymmetry.
    assert!(in_range, "peak locations drifted: {loc_12:.4}, {loc_21:.4}");
    assert!(
        (0.05..0.12).contains(&reciprocity_err),
        "recorded reciprocity gap changed: {reciprocity_err:.4}"
    );
}

#[test]
fn acceptance_07_amplifier_doubling() {
    let start = Instant::now();
    let base = default_spec().with_squeezing(1.0, 0.0).with_opa(0.49, 0.0);
    let axis = AxisSpec::new("ratio", 0.5, 2.0, 101);
    let peak_of = |sweep: &magnon_steering::experiments::RatioSweep| -> f64 {
        let g12 = sweep.peak_g12.as_ref().map_or(0.0, |p| p.value);
        let g21 = sweep.peak_g21.as_ref().map_or(0.0, |p| p.value);
        g12.max(g21)
    };
    let with = peak_of(&fig3_fig4_ratio_sweep(&base, axis.clone(), true));
    let without = peak_of(&fig3_fig4_ratio_sweep(&base, axis, false));
    let ratio = with / without;
    let elapsed = start.elapsed().as_secs_f64();
    report(
        7,
        "amplifier doubling",
        (1.4..=2.6).contains(&ratio) && elapsed < 30.0,
        &format!("peak steering {with:.4} with gain vs {without:.4} without, ratio {ratio:.2}, {elapsed:.2} s"),
        Expectation::Pass,
    );
}

#[test]
fn acceptance_08_thermal_robustness() {
    let start = Instant::now();
    let base = default_spec();
    let steering_mk = fig6_temperature_threshold(&base, ThresholdMetric::Steering, 2.0, 0.49)
        .expect("threshold exists")
        * 1000.0;
    let entanglement_mk =
        fig6_temperature_threshold(&base, ThresholdMetric::Entanglement, 2.0, 0.49)
            .expect("threshold exists")
            * 1000.0;
    let elapsed = start.elapsed().as_secs_f64();
    report(
        8,
        "thermal robustness",
        (270.0..=370.0).contains(&steering_mk)
            && (600.0..=800.0).contains(&entanglement_mk)
            && elapsed < 60.0,
        &format!(
            "steering dies at {steering_mk:.1} mK (range [270, 370]), entanglement at {entanglement_mk:.1} mK (range [600, 800]), {elapsed:.2} s"
        ),
        Expectation::Pass,
    );
}

#[test]
fn acceptance_09_physicality_suite() {
    let start = Instant::now();
    // Battery: the 2D map grid, the ratio sweep, and the random stable set.
    let mut sigmas: Vec<(CovarianceMatrix, MetricsRecord)> = Vec::new();
    let base = default_spec();
    let grid = fig2_sweep(
        &base,
        AxisSpec::new("squeeze_r", 0.0, 2.0, 21),
        AxisSpec::new("lambda_opa_rel", 0.0, 0.49, 21),
    );
    let grid_records: Vec<MetricsRecord> = grid.records().map(|(_, m)| m.clone()).collect();
    for spec in sample_stable_specs(0xBEEF, 100, true) {
        let sigma = solve(&spec);
        let margin = stability(&drift_matrix(&spec)).margin;
        let m = metrics_from_cm(&sigma, margin).unwrap();
        sigmas.push((sigma, m));
    }
    let ratio_base = base.clone().with_squeezing(1.0, 0.0).with_opa(0.49, 0.0);
    let sweep = fig3_fig4_ratio_sweep(&ratio_base, AxisSpec::new("ratio", 0.5, 2.0, 101), true);
    let sweep_records: Vec<MetricsRecord> =
        sweep.grid.records().map(|(_, m)| m.clone()).collect();

    let mut floor_violations = 0_usize;
    let mut implication_violations = 0_usize;
    let mut worst_floor = f64::INFINITY;
    for (sigma, m) in &sigmas {
        let floor = sigma.symplectic_floor();
        worst_floor = worst_floor.min(floor);
        if floor < -1e-9 {
            floor_violations += 1;
        }
        if (m.g12 > 0.0 || m.g21 > 0.0) && m.e12 <= 0.0 {
            implication_violations += 1;
        }
    }
    for m in grid_records.iter().chain(sweep_records.iter()) {
        if (m.g12 > 0.0 || m.g21 > 0.0) && m.e12 <= 0.0 {
            implication_violations += 1;
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let total = sigmas.len() + grid_records.len() + sweep_records.len();
    report(
        9,
        "physicality suite",
        floor_violations == 0 && implication_violations == 0,
        &format!(
            "{total} states: symplectic floor ≥ −1e-9 everywhere (worst {worst_floor:+.1e}), \
             steering-implies-entanglement exceptions: {implication_violations}, {elapsed:.1} s"
        ),
        Expectation::Pass,
    );
}

#[test]
fn acceptance_10_mode_swap_metamorphic() {
    let start = Instant::now();
    let mut worst_swap = 0.0_f64;
    let mut worst_e12 = 0.0_f64;
    for spec in sample_stable_specs(0xCAFE, 50, true) {
        let m = metrics(&spec);
        let swapped_spec = spec
            .clone()
            .with_couplings(spec.gamma_2, spec.gamma_1)
            .with_kappas(spec.kappa_2, spec.kappa_1);
        let swapped = metrics(&swapped_spec);
        worst_swap = worst_swap
            .max((swapped.g12 - m.g21).abs())
            .max((swapped.g21 - m.g12).abs());
        worst_e12 = worst_e12.max((swapped.e12 - m.e12).abs());
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        10,
        "mode-swap metamorphic",
        worst_swap < 1e-10 && worst_e12 < 1e-10,
        &format!(
            "50 random specs: max |G swap mismatch| = {worst_swap:.2e}, max |ΔE12| = {worst_e12:.2e}, {elapsed:.1} s"
        ),
        Expectation::Pass,
    );
}

#[test]
fn acceptance_11_analytic_oracles() {
    let start = Instant::now();
    let mut worst = 0.0_f64;
    for s in [0.1, 0.5, 1.0] {
        let sr = two_mode_squeezed_vacuum(s);
        let e = log_negativity(&sr).unwrap();
        let g12 = gaussian_steering(&sr, Direction::OneToTwo).unwrap();
        let g21 = gaussian_steering(&sr, Direction::TwoToOne).unwrap();
        let expected_g = (2.0 * s).cosh().ln();
        worst = worst
            .max((e - 2.0 * s).abs())
            .max((g12 - expected_g).abs())
            .max((g21 - expected_g).abs());
    }
    let bare = max_stable_gain(&default_spec().with_couplings(0.0, 0.0));
    let bare_err = (bare - 0.5).abs();
    let elapsed = start.elapsed().as_secs_f64();
    report(
        11,
        "analytic oracles",
        worst < 1e-9 && bare_err < 1e-4,
        &format!(
            "two-mode squeezed vacuum: max metric error {worst:.2e}; bare-cavity boundary off by {bare_err:.2e}, {elapsed:.2} s"
        ),
        Expectation::Pass,
    );
}
