//! Scenario engine: parameter sweeps with stability masking, steering-peak
//! location, temperature-threshold bisection, and the maximum-stable-gain
//! search.
//!
//! Grid points are independent and evaluated in deterministic axis order
//! (outer axis first, inner axis fastest), so identical inputs always produce
//! identical grids. All searches (peaks, thresholds) run on the *signed*
//! metric values: the `max[0, ·]` clamp applied for reporting would erase the
//! sign changes bisection needs.

use serde::Serialize;
use thiserror::Error;

use crate::dynamics::{diffusion_matrix, drift_matrix, stability, steady_state_cm};
use crate::measures::{metrics_from_cm, reduce_cm, MetricsRecord, DETERMINANT_GUARD};
use crate::model::{bath_moments, SystemSpec};

/// Temperature search window for threshold bisection, kelvin.
pub const TEMPERATURE_FLOOR: f64 = 0.02;
pub const TEMPERATURE_CEILING: f64 = 2.0;

/// Bisection stops once the bracket is narrower than this (1 mK).
pub const TEMPERATURE_RESOLUTION: f64 = 1e-3;

/// Λ_max bisection resolution, κ_a units.
pub const GAIN_RESOLUTION: f64 = 1e-4;

#[derive(Debug, Error, PartialEq)]
pub enum ExperimentError {
    #[error("operating point is not stable (stability margin {margin:+.6e} κ_a)")]
    Unstable { margin: f64 },
    #[error("steady state is numerically degenerate at this operating point (margin {margin:+.6e} κ_a)")]
    Unsolvable { margin: f64 },
    #[error(
        "no threshold in [{lo} K, {hi} K]: metric is {at_lo:+.6e} at the bottom \
         and {at_hi:+.6e} at the top of the range"
    )]
    NoThresholdInRange {
        lo: f64,
        hi: f64,
        at_lo: f64,
        at_hi: f64,
    },
}

/// Result of evaluating one parameter point. Unstable and numerically
/// marginal points carry their stability margin instead of metrics, so sweeps
/// can mask them without aborting.
#[derive(Debug, Clone, PartialEq)]
pub enum PointOutcome {
    Metrics(MetricsRecord),
    Unstable { margin: f64 },
    Marginal { margin: f64 },
}

impl PointOutcome {
    pub fn metrics(&self) -> Option<&MetricsRecord> {
        match self {
            PointOutcome::Metrics(record) => Some(record),
            _ => None,
        }
    }

    pub fn margin(&self) -> f64 {
        match self {
            PointOutcome::Metrics(record) => record.margin,
            PointOutcome::Unstable { margin } | PointOutcome::Marginal { margin } => *margin,
        }
    }

    /// True for points that carry no metrics (masked in sweep outputs).
    pub fn is_masked(&self) -> bool {
        self.metrics().is_none()
    }
}

/// Solves one operating point end to end: stability check, steady-state
/// covariance matrix, full metrics bundle.
///
/// The spec must already pass [`SystemSpec::validate`]; sweep engines and the
/// command-line layer ensure that before calling.
pub fn evaluate_point(spec: &SystemSpec) -> PointOutcome {
    let a = drift_matrix(spec);
    let report = stability(&a);
    if !report.is_stable {
        return PointOutcome::Unstable {
            margin: report.margin,
        };
    }
    let f = diffusion_matrix(spec, &bath_moments(spec));
    let sigma = match steady_state_cm(&a, &f) {
        Ok(sigma) => sigma,
        Err(_) => {
            return PointOutcome::Marginal {
                margin: report.margin,
            }
        }
    };
    let reduced = reduce_cm(&sigma, (1, 2)).expect("(1, 2) is a valid mode pair");
    if reduced.det_full() < DETERMINANT_GUARD {
        return PointOutcome::Marginal {
            margin: report.margin,
        };
    }
    match metrics_from_cm(&sigma, report.margin) {
        Ok(record) => PointOutcome::Metrics(record),
        Err(_) => PointOutcome::Marginal {
            margin: report.margin,
        },
    }
}

/// One linearly spaced sweep axis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxisSpec {
    pub name: String,
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl AxisSpec {
    pub fn new(name: impl Into<String>, min: f64, max: f64, points: usize) -> Self {
        Self {
            name: name.into(),
            min,
            max,
            points: points.max(1),
        }
    }

    /// The axis sample values; endpoints are hit exactly.
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.max
                } else {
                    self.min + step * i as f64
                }
            })
            .collect()
    }
}

/// One evaluated grid point: coordinates along each axis plus the outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPoint {
    pub coords: Vec<f64>,
    pub outcome: PointOutcome,
}

/// Dense sweep results. Points are stored row-major over the axis product
/// with the last axis fastest; unstable or degenerate points are masked
/// (present, but without metrics).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub axes: Vec<AxisSpec>,
    pub points: Vec<GridPoint>,
}

impl SweepGrid {
    pub fn masked_count(&self) -> usize {
        self.points.iter().filter(|p| p.outcome.is_masked()).count()
    }

    /// Iterates the non-masked points as (coordinates, metrics) pairs.
    pub fn records(&self) -> impl Iterator<Item = (&[f64], &MetricsRecord)> {
        self.points
            .iter()
            .filter_map(|p| p.outcome.metrics().map(|m| (p.coords.as_slice(), m)))
    }
}

/// Evaluates a one-parameter family of specs along an axis.
pub fn sweep_1d(axis: AxisSpec, spec_at: impl Fn(f64) -> SystemSpec) -> SweepGrid {
    let points = axis
        .values()
        .into_iter()
        .map(|x| GridPoint {
            coords: vec![x],
            outcome: evaluate_point(&spec_at(x)),
        })
        .collect();
    SweepGrid {
        axes: vec![axis],
        points,
    }
}

/// Evaluates a two-parameter family, outer axis first.
pub fn sweep_2d(
    outer: AxisSpec,
    inner: AxisSpec,
    spec_at: impl Fn(f64, f64) -> SystemSpec,
) -> SweepGrid {
    let mut points = Vec::with_capacity(outer.points * inner.points);
    for x in outer.values() {
        for y in inner.values() {
            points.push(GridPoint {
                coords: vec![x, y],
                outcome: evaluate_point(&spec_at(x, y)),
            });
        }
    }
    SweepGrid {
        axes: vec![outer, inner],
        points,
    }
}

/// Squeezing–gain map: metrics over (r, Λ) with everything else taken from
/// `base`. Unstable cells are masked.
pub fn fig2_sweep(base: &SystemSpec, r_axis: AxisSpec, lambda_axis: AxisSpec) -> SweepGrid {
    let base = base.clone();
    sweep_2d(r_axis, lambda_axis, move |r, lambda| {
        base.clone()
            .with_squeezing(r, base.squeeze_theta)
            .with_opa(lambda, base.phi_opa)
    })
}

/// A located extremum of a swept quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeakEstimate {
    pub location: f64,
    pub value: f64,
}

/// Ratio sweep plus the refined peak of each steering direction.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioSweep {
    pub grid: SweepGrid,
    pub peak_g12: Option<PeakEstimate>,
    pub peak_g21: Option<PeakEstimate>,
}

/// Coupling-asymmetry sweep: Γ₁ stays at its base value while
/// Γ₂ = ratio · Γ₁ runs along the axis. With `with_opa` false the parametric
/// amplifier is switched off (Λ = 0) for the same comparison the two-panel
/// amplification figure makes; the squeezed drive `r` is taken from `base`
/// either way. Peak locations of both steering directions are refined by
/// golden-section search on the signed metric after the grid scan.
pub fn fig3_fig4_ratio_sweep(
    base: &SystemSpec,
    ratio_axis: AxisSpec,
    with_opa: bool,
) -> RatioSweep {
    let lambda = if with_opa { base.lambda_opa } else { 0.0 };
    let base = base.clone();
    let spec_at = move |ratio: f64| {
        base.clone()
            .with_opa(lambda, base.phi_opa)
            .with_couplings(base.gamma_1, ratio * base.gamma_1)
    };
    let grid = sweep_1d(ratio_axis, &spec_at);

    let signed_g = |record: &MetricsRecord, swap: bool| {
        if swap {
            record.g21_raw
        } else {
            record.g12_raw
        }
    };
    let refine = |swap: bool| {
        let objective = |ratio: f64| match evaluate_point(&spec_at(ratio)) {
            PointOutcome::Metrics(record) => signed_g(&record, swap),
            _ => f64::NEG_INFINITY,
        };
        refine_peak(&grid, |record| signed_g(record, swap), objective)
    };
    let peak_g12 = refine(false);
    let peak_g21 = refine(true);
    RatioSweep {
        grid,
        peak_g12,
        peak_g21,
    }
}

/// Grid scan followed by golden-section refinement inside the bracketing
/// grid interval. Falls back to the grid value when the maximum sits on the
/// sweep boundary or next to a masked point.
fn refine_peak(
    grid: &SweepGrid,
    metric: impl Fn(&MetricsRecord) -> f64,
    objective: impl Fn(f64) -> f64,
) -> Option<PeakEstimate> {
    let samples: Vec<(f64, Option<f64>)> = grid
        .points
        .iter()
        .map(|p| (p.coords[0], p.outcome.metrics().map(&metric)))
        .collect();
    let (best, best_value) = samples
        .iter()
        .enumerate()
        .filter_map(|(i, (_, v))| v.map(|v| (i, v)))
        .max_by(|a, b| a.1.total_cmp(&b.1))?;
    let interior = best > 0 && best + 1 < samples.len();
    if !interior || samples[best - 1].1.is_none() || samples[best + 1].1.is_none() {
        return Some(PeakEstimate {
            location: samples[best].0,
            value: best_value,
        });
    }
    Some(golden_section_max(
        &objective,
        samples[best - 1].0,
        samples[best + 1].0,
        1e-6,
    ))
}

/// Golden-section search for the maximum of a unimodal function on [lo, hi].
fn golden_section_max(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> PeakEstimate {
    let inv_phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    while hi - lo > tol {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    let location = 0.5 * (lo + hi);
    PeakEstimate {
        location,
        value: f(location),
    }
}

/// Which magnon's dissipation rate a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MagnonMode {
    One,
    Two,
}

/// Dissipation sweep: κ of the chosen magnon runs along the axis while the
/// other keeps its base value; Γ₂ is pinned to `gamma_2_value` (κ_a units)
/// to select the coupling-asymmetry panel.
pub fn fig5_dissipation_sweep(
    base: &SystemSpec,
    kappa_axis: AxisSpec,
    which_magnon: MagnonMode,
    gamma_2_value: f64,
) -> SweepGrid {
    let base = base.clone();
    sweep_1d(kappa_axis, move |kappa| {
        let (kappa_1, kappa_2) = match which_magnon {
            MagnonMode::One => (kappa, base.kappa_2),
            MagnonMode::Two => (base.kappa_1, kappa),
        };
        base.clone()
            .with_kappas(kappa_1, kappa_2)
            .with_couplings(base.gamma_1, gamma_2_value)
    })
}

/// Which signed metric a temperature-threshold search tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdMetric {
    /// Larger of the two signed steering values: the temperature at which the
    /// last surviving direction dies.
    Steering,
    Entanglement,
}

/// Critical temperature at which the chosen metric crosses zero, found by
/// bisecting its signed value over [[`TEMPERATURE_FLOOR`], [`TEMPERATURE_CEILING`]]
/// kelvin to better than 1 mK. The squeezing `r` and gain `lambda` of the
/// operating point are explicit arguments; everything else comes from `base`.
///
/// The drift matrix is temperature-independent, so stability is checked once.
pub fn fig6_temperature_threshold(
    base: &SystemSpec,
    metric: ThresholdMetric,
    r: f64,
    lambda: f64,
) -> Result<f64, ExperimentError> {
    let spec = base
        .clone()
        .with_squeezing(r, base.squeeze_theta)
        .with_opa(lambda, base.phi_opa);
    let signed_at = |temperature: f64| -> Result<f64, ExperimentError> {
        match evaluate_point(&spec.clone().with_temperature(temperature)) {
            PointOutcome::Metrics(record) => Ok(match metric {
                ThresholdMetric::Steering => record.g12_raw.max(record.g21_raw),
                ThresholdMetric::Entanglement => record.e12_raw,
            }),
            PointOutcome::Unstable { margin } => Err(ExperimentError::Unstable { margin }),
            PointOutcome::Marginal { margin } => Err(ExperimentError::Unsolvable { margin }),
        }
    };

    let at_lo = signed_at(TEMPERATURE_FLOOR)?;
    let at_hi = signed_at(TEMPERATURE_CEILING)?;
    if !(at_lo > 0.0) || at_hi > 0.0 {
        return Err(ExperimentError::NoThresholdInRange {
            lo: TEMPERATURE_FLOOR,
            hi: TEMPERATURE_CEILING,
            at_lo,
            at_hi,
        });
    }
    let mut lo = TEMPERATURE_FLOOR;
    let mut hi = TEMPERATURE_CEILING;
    while hi - lo > TEMPERATURE_RESOLUTION {
        let mid = 0.5 * (lo + hi);
        if signed_at(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Largest amplifier gain (κ_a units) for which the system stays stable,
/// found by bracketing and bisecting the stability margin's sign to
/// [`GAIN_RESOLUTION`]. Expects `base` to be stable at Λ = 0; the search is
/// capped at 1024 κ_a (returned as-is if even that is stable, which no
/// physical parameter set reaches).
pub fn max_stable_gain(base: &SystemSpec) -> f64 {
    let stable_at = |lambda: f64| {
        let spec = base.clone().with_opa(lambda, base.phi_opa);
        stability(&drift_matrix(&spec)).is_stable
    };
    let mut lo = 0.0;
    let mut hi = 0.5;
    while stable_at(hi) {
        lo = hi;
        hi *= 2.0;
        if hi > 1024.0 {
            return hi;
        }
    }
    while hi - lo > GAIN_RESOLUTION {
        let mid = 0.5 * (lo + hi);
        if stable_at(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::default_spec;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn baseline(r: f64, lambda: f64) -> SystemSpec {
        default_spec().with_squeezing(r, 0.0).with_opa(lambda, 0.0)
    }

    #[test]
    fn axis_values_hit_endpoints_exactly() {
        let axis = AxisSpec::new("x", 0.5, 2.0, 7);
        let values = axis.values();
        assert_eq!(values.len(), 7);
        assert_eq!(values[0], 0.5);
        assert_eq!(values[6], 2.0);
        assert_relative_eq!(values[1], 0.75, max_relative = 1e-15);
        assert_eq!(AxisSpec::new("x", 1.0, 2.0, 1).values(), vec![1.0]);
    }

    #[test]
    fn vacuum_point_is_exactly_zero() {
        let outcome = evaluate_point(&baseline(0.0, 0.0).with_temperature(0.0));
        let record = outcome.metrics().expect("vacuum point is stable");
        assert_eq!(record.e12, 0.0);
        assert_eq!(record.g12, 0.0);
        assert_eq!(record.g21, 0.0);
        assert_eq!(record.gs, 0.0);
        assert_eq!(record.s_x1, 0.0);
        assert_eq!(record.s_y2, 0.0);
        assert_eq!((record.pop_a, record.pop_1, record.pop_2), (0.0, 0.0, 0.0));
        assert!(record.stable);
        assert_relative_eq!(record.margin, -0.2, max_relative = 1e-9);
    }

    #[test]
    fn unstable_point_reports_margin() {
        match evaluate_point(&baseline(0.0, 0.7)) {
            PointOutcome::Unstable { margin } => {
                assert_relative_eq!(margin, 0.1, max_relative = 1e-6)
            }
            other => panic!("expected Unstable, got {other:?}"),
        }
    }

    #[test]
    fn fig2_masks_unstable_cells_and_keeps_the_rest() {
        let grid = fig2_sweep(
            &default_spec(),
            AxisSpec::new("r", 0.0, 1.0, 3),
            AxisSpec::new("lambda", 0.0, 0.7, 8),
        );
        assert_eq!(grid.points.len(), 24);
        let masked = grid.masked_count();
        assert!(masked > 0, "axis reaches past the stability bound");
        assert_eq!(grid.records().count(), 24 - masked);
        // Λ ≥ 0.6 is not strictly stable regardless of r: the top two columns
        // (0.6 sits exactly on the boundary) are fully masked.
        for point in &grid.points {
            if point.coords[1] > 0.59 {
                assert!(point.outcome.is_masked());
            } else {
                assert!(!point.outcome.is_masked());
            }
        }
    }

    #[test]
    fn squeezed_drive_is_required_for_steering() {
        // Without the squeezed drive the OPA alone entangles the magnons but
        // never makes the state steerable.
        let grid = fig2_sweep(
            &default_spec(),
            AxisSpec::new("r", 0.0, 0.0, 1),
            AxisSpec::new("lambda", 0.0, 0.49, 20),
        );
        for (coords, record) in grid.records() {
            assert_eq!(record.g12, 0.0, "no steering expected at λ={}", coords[1]);
            assert_eq!(record.g21, 0.0);
            if coords[1] > 0.0 {
                assert!(record.g12_raw < 0.0);
                assert!(record.e12 > 0.0, "OPA alone should entangle at λ={}", coords[1]);
            }
        }
        let at_045 = grid
            .points
            .iter()
            .find(|p| (p.coords[1] - 0.45).abs() < 2e-2)
            .unwrap();
        let record = at_045.outcome.metrics().unwrap();
        assert_relative_eq!(record.e12, 0.2754, max_relative = 2e-2);
    }

    #[test]
    fn opa_gain_improves_entanglement() {
        let low = evaluate_point(&baseline(1.5, 0.0));
        let high = evaluate_point(&baseline(1.5, 0.45));
        assert!(high.metrics().unwrap().e12 > low.metrics().unwrap().e12);
    }

    #[test]
    fn symmetric_couplings_give_symmetric_steering() {
        let sweep = fig3_fig4_ratio_sweep(
            &baseline(1.0, 0.49),
            AxisSpec::new("ratio", 0.5, 2.0, 7),
            true,
        );
        let symmetric = sweep
            .grid
            .points
            .iter()
            .find(|p| p.coords[0] == 1.0)
            .and_then(|p| p.outcome.metrics())
            .expect("ratio 1 should be on a 7-point [0.5, 2] axis and stable");
        assert_abs_diff_eq!(symmetric.g12, symmetric.g21, epsilon = 1e-10);
        assert_abs_diff_eq!(symmetric.pop_1, symmetric.pop_2, epsilon = 1e-10);
        assert_abs_diff_eq!(symmetric.s_x1, symmetric.s_x2, epsilon = 1e-10);
    }

    #[test]
    fn steering_peaks_sit_on_opposite_sides_of_symmetry() {
        let sweep = fig3_fig4_ratio_sweep(
            &baseline(1.0, 0.49),
            AxisSpec::new("ratio", 0.5, 2.0, 101),
            true,
        );
        let p12 = sweep.peak_g12.expect("1→2 peak exists");
        let p21 = sweep.peak_g21.expect("2→1 peak exists");
        assert_relative_eq!(p12.location, 0.8772, max_relative = 2e-2);
        assert_relative_eq!(p21.location, 1.2269, max_relative = 2e-2);
        assert_relative_eq!(p12.value, 0.30613, max_relative = 1e-2);
        assert_relative_eq!(p21.value, 0.31456, max_relative = 1e-2);
    }

    #[test]
    fn peak_location_is_insensitive_to_grid_density() {
        let base = baseline(1.0, 0.49);
        let coarse =
            fig3_fig4_ratio_sweep(&base, AxisSpec::new("ratio", 0.5, 2.0, 101), true);
        let fine = fig3_fig4_ratio_sweep(&base, AxisSpec::new("ratio", 0.5, 2.0, 201), true);
        for (a, b) in [
            (coarse.peak_g12, fine.peak_g12),
            (coarse.peak_g21, fine.peak_g21),
        ] {
            let (a, b) = (a.unwrap(), b.unwrap());
            assert!(
                (a.location - b.location).abs() < 1e-3,
                "peak moved from {} to {}",
                a.location,
                b.location
            );
        }
    }

    #[test]
    fn amplifier_roughly_doubles_peak_steering() {
        let base = baseline(1.0, 0.49);
        let axis = AxisSpec::new("ratio", 0.5, 2.0, 101);
        let with = fig3_fig4_ratio_sweep(&base, axis.clone(), true);
        let without = fig3_fig4_ratio_sweep(&base, axis, false);
        let best = |s: &RatioSweep| {
            let a = s.peak_g12.map_or(f64::NEG_INFINITY, |p| p.value);
            let b = s.peak_g21.map_or(f64::NEG_INFINITY, |p| p.value);
            a.max(b)
        };
        let ratio = best(&with) / best(&without);
        assert!(
            (2.0..2.35).contains(&ratio),
            "amplification ratio {ratio} drifted from the expected ≈2.17"
        );
    }

    #[test]
    fn dissipation_degrades_correlations_without_flipping_direction() {
        let base = baseline(1.0, 0.49);
        for (gamma_2, one_steers_harder) in [(3.0, true), (6.0, false)] {
            let grid = fig5_dissipation_sweep(
                &base,
                AxisSpec::new("kappa_1", 0.1, 1.0, 10),
                MagnonMode::One,
                gamma_2,
            );
            let records: Vec<_> = grid.records().map(|(_, r)| r.clone()).collect();
            assert_eq!(records.len(), 10);
            for pair in records.windows(2) {
                assert!(pair[1].e12 <= pair[0].e12 + 1e-12);
                assert!(pair[1].g12 <= pair[0].g12 + 1e-12);
                assert!(pair[1].g21 <= pair[0].g21 + 1e-12);
            }
            for record in &records {
                if one_steers_harder {
                    assert!(record.g12 > record.g21);
                } else {
                    assert!(record.g21 > record.g12);
                }
            }
        }
    }

    #[test]
    fn dissipation_sweep_agrees_with_ratio_sweep_where_they_meet() {
        // κ₁ = κ₂ = κ_a/5 at Γ₂ = 3κ_a is the same operating point as
        // ratio = 0.75 on the coupling sweep.
        let base = baseline(1.0, 0.49);
        let kappa_grid = fig5_dissipation_sweep(
            &base,
            AxisSpec::new("kappa_1", 0.1, 1.0, 10),
            MagnonMode::One,
            3.0,
        );
        let from_kappa = kappa_grid
            .points
            .iter()
            .find(|p| (p.coords[0] - 0.2).abs() < 1e-12)
            .and_then(|p| p.outcome.metrics())
            .expect("κ₁ = 0.2 is the second point of a 10-point [0.1, 1] axis");
        let ratio_sweep =
            fig3_fig4_ratio_sweep(&base, AxisSpec::new("ratio", 0.5, 2.0, 7), true);
        let from_ratio = ratio_sweep
            .grid
            .points
            .iter()
            .find(|p| (p.coords[0] - 0.75).abs() < 1e-12)
            .and_then(|p| p.outcome.metrics())
            .expect("ratio 0.75 on-grid");
        assert_abs_diff_eq!(from_kappa.e12, from_ratio.e12, epsilon = 1e-12);
        assert_abs_diff_eq!(from_kappa.g12, from_ratio.g12, epsilon = 1e-12);
        assert_abs_diff_eq!(from_kappa.g21, from_ratio.g21, epsilon = 1e-12);
        assert_relative_eq!(from_kappa.e12, 0.8618948516308518, max_relative = 1e-9);
        assert_relative_eq!(from_kappa.g12, 0.2989428889620508, max_relative = 1e-9);
        assert_relative_eq!(from_kappa.g21, 0.23088407081028878, max_relative = 1e-9);
    }

    #[test]
    fn temperature_thresholds_match_known_values() {
        let base = default_spec();
        let steering =
            fig6_temperature_threshold(&base, ThresholdMetric::Steering, 2.0, 0.49).unwrap();
        assert!(
            (0.315..0.328).contains(&steering),
            "steering threshold {steering} K off the expected 322.7 mK"
        );
        let entanglement =
            fig6_temperature_threshold(&base, ThresholdMetric::Entanglement, 2.0, 0.49).unwrap();
        assert!(
            (0.688..0.697).contains(&entanglement),
            "entanglement threshold {entanglement} K off the expected 692.3 mK"
        );
        assert!(entanglement > steering);
    }

    #[test]
    fn threshold_absent_without_squeezed_drive() {
        let err = fig6_temperature_threshold(&default_spec(), ThresholdMetric::Steering, 0.0, 0.3)
            .unwrap_err();
        match err {
            ExperimentError::NoThresholdInRange { at_lo, .. } => assert!(at_lo <= 0.0),
            other => panic!("expected NoThresholdInRange, got {other:?}"),
        }
    }

    #[test]
    fn threshold_on_unstable_point_errors() {
        let err = fig6_temperature_threshold(&default_spec(), ThresholdMetric::Steering, 1.0, 0.7)
            .unwrap_err();
        assert!(matches!(err, ExperimentError::Unstable { margin } if margin > 0.0));
    }

    #[test]
    fn max_gain_at_the_reference_point() {
        let found = max_stable_gain(&default_spec());
        assert_abs_diff_eq!(found, 0.6, epsilon = 2e-4);
    }

    #[test]
    fn max_gain_of_bare_cavity_is_half_kappa() {
        let bare = default_spec().with_couplings(0.0, 0.0);
        assert_abs_diff_eq!(max_stable_gain(&bare), 0.5, epsilon = 2e-4);
    }

    #[test]
    fn max_gain_is_invariant_under_rate_rescaling() {
        // All rates are carried in κ_a units, so scaling the absolute κ_a
        // (with all modes kept resonant) must not move the bound at all.
        let base = default_spec();
        let mut scaled = base.clone();
        scaled.kappa_a *= 2.0;
        assert_eq!(max_stable_gain(&base), max_stable_gain(&scaled));
    }

    #[test]
    fn sweeps_are_deterministic() {
        let base = baseline(1.0, 0.49);
        let axis = AxisSpec::new("ratio", 0.5, 2.0, 11);
        let first = fig3_fig4_ratio_sweep(&base, axis.clone(), true);
        let second = fig3_fig4_ratio_sweep(&base, axis, true);
        assert_eq!(first, second);
    }
}
