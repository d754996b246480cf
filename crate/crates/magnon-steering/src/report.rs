//! Output formatting: CSV documents for sweeps and single points, and the
//! machine-readable run summary (peaks, thresholds, maximum stable gain).
//!
//! Every CSV starts with one comment line carrying the schema version and the
//! full resolved configuration, so any output file is self-describing and
//! reruns are byte-for-byte comparable. Values are written with 17
//! significant digits — enough to round-trip an f64 exactly.

use serde::Serialize;

use crate::experiments::{PeakEstimate, RatioSweep, SweepGrid};
use crate::measures::MetricsRecord;

/// Bumped whenever a column is added, removed, or reordered.
pub const CSV_SCHEMA_VERSION: &str = "v1";

/// MetricsRecord columns of the generic sweep schema, in order.
const METRIC_HEADER: &str =
    "SX1,SY1,SX2,SY2,E12,G12,G21,GS,E12_raw,G12_raw,G21_raw,n_a,n1,n2,stable,margin";

/// One f64 with 17 significant digits ('.' decimal separator always —
/// formatting is locale-independent).
pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

/// The self-description comment: schema version plus resolved config JSON.
pub fn schema_comment(config_json: &str) -> String {
    format!("# schema={CSV_SCHEMA_VERSION} config={config_json}")
}

fn metric_cells(record: &MetricsRecord) -> String {
    let values = [
        record.s_x1,
        record.s_y1,
        record.s_x2,
        record.s_y2,
        record.e12,
        record.g12,
        record.g21,
        record.gs,
        record.e12_raw,
        record.g12_raw,
        record.g21_raw,
        record.pop_a,
        record.pop_1,
        record.pop_2,
    ];
    let mut cells: Vec<String> = values.iter().copied().map(format_value).collect();
    cells.push(if record.stable { "1" } else { "0" }.to_string());
    cells.push(format_value(record.margin));
    cells.join(",")
}

/// Empty metric cells for masked (unstable/degenerate) grid points; the
/// stability flag and margin stay filled so the mask is explicit.
fn masked_cells(margin: f64) -> String {
    let empties = vec![""; 14].join(",");
    format!("{empties},0,{}", format_value(margin))
}

/// Generic sweep CSV: axis columns, then the full metrics schema. Masked
/// points keep their row (axes + stability columns) with empty metric cells.
pub fn sweep_csv(grid: &SweepGrid, config_json: &str) -> String {
    let axis_names: Vec<&str> = grid.axes.iter().map(|a| a.name.as_str()).collect();
    let mut out = String::new();
    out.push_str(&schema_comment(config_json));
    out.push('\n');
    out.push_str(&axis_names.join(","));
    out.push(',');
    out.push_str(METRIC_HEADER);
    out.push('\n');
    for point in &grid.points {
        let coords: Vec<String> = point.coords.iter().copied().map(format_value).collect();
        out.push_str(&coords.join(","));
        out.push(',');
        match point.outcome.metrics() {
            Some(record) => out.push_str(&metric_cells(record)),
            None => out.push_str(&masked_cells(point.outcome.margin())),
        }
        out.push('\n');
    }
    out
}

/// Coupling-ratio sweep projection: the named-column schema for the steering
/// asymmetry figure. Masked points (none in practice on this sweep) are
/// skipped, since the projection has no stability columns.
pub fn ratio_csv(sweep: &RatioSweep, config_json: &str) -> String {
    let mut out = String::new();
    out.push_str(&schema_comment(config_json));
    out.push('\n');
    out.push_str("ratio,E12,G12,G21,GS,n1,n2,SX1,SX2\n");
    for (coords, record) in sweep.grid.records() {
        let cells = [
            coords[0],
            record.e12,
            record.g12,
            record.g21,
            record.gs,
            record.pop_1,
            record.pop_2,
            record.s_x1,
            record.s_x2,
        ];
        let cells: Vec<String> = cells.iter().copied().map(format_value).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Single-point CSV: the full metrics schema, one data row.
pub fn point_csv(record: &MetricsRecord, config_json: &str) -> String {
    format!(
        "{}\n{METRIC_HEADER}\n{}\n",
        schema_comment(config_json),
        metric_cells(record)
    )
}

/// Refined peak pair of a ratio sweep, in summary-friendly form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeakSummary {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g12: Option<PeakEstimate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g21: Option<PeakEstimate>,
}

impl PeakSummary {
    pub fn from_sweep(sweep: &RatioSweep) -> Self {
        Self {
            g12: sweep.peak_g12,
            g21: sweep.peak_g21,
        }
    }
}

/// Critical temperatures in millikelvin; `None` when no threshold exists in
/// the search range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdSummary {
    pub steering_mk: Option<f64>,
    pub entanglement_mk: Option<f64>,
}

/// Machine-readable run summary, one per figure/threshold run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub schema: &'static str,
    pub figure: String,
    pub config: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub peaks: Option<PeakSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub peaks_without_opa: Option<PeakSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thresholds: Option<ThresholdSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_stable_gain: Option<f64>,
}

impl RunSummary {
    pub fn new(figure: impl Into<String>, config_json: &str) -> Self {
        Self {
            schema: CSV_SCHEMA_VERSION,
            figure: figure.into(),
            config: serde_json::from_str(config_json).expect("resolved config is valid JSON"),
            peaks: None,
            peaks_without_opa: None,
            thresholds: None,
            max_stable_gain: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("summary serializes");
        text.push('\n');
        text
    }
}
