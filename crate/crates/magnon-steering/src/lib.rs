//! Steady-state quantum correlations of a three-mode cavity–magnon system.
//!
//! A microwave cavity mode couples to two magnon modes at rates `Γ₁`, `Γ₂`.
//! The cavity additionally contains a degenerate parametric amplifier (gain
//! `Λ`, phase `φ`) and is driven by a squeezed vacuum field (squeezing `r`,
//! phase `θ`). With all operators linearized, the quadrature fluctuations form
//! a Gaussian state whose steady-state 6×6 covariance matrix solves the
//! Lyapunov equation `AΣ + ΣAᵀ = −F`.
//!
//! The crate is organized by pipeline stage:
//!
//! - [`model`] — physical parameters, validation, and squeezed-bath moments;
//! - [`dynamics`] — drift/diffusion matrices, stability, Lyapunov solver, and
//!   an independent time-integration oracle;
//! - [`measures`] — squeezing (dB), logarithmic negativity, Gaussian steering
//!   in both directions, populations, and a moment-based steering criterion;
//! - [`experiments`] — parameter sweeps, peak location, temperature
//!   thresholds, and the maximum-stable-gain search;
//! - [`config`] / [`cli`] — TOML run configuration and the `magsteer` binary;
//! - [`report`] / [`plot`] — CSV/JSON serialization and SVG rendering.
//!
//! Internally every rate (couplings, dissipations, OPA gain, detunings) is
//! expressed in units of the cavity linewidth `κ_a`; absolute frequencies are
//! angular (rad/s) and appear only where thermal occupations are computed.
//!
//! ```
//! use magnon_steering::{dynamics, experiments, model};
//!
//! let spec = model::default_spec().with_squeezing(1.0, 0.0).with_opa(0.49, 0.0);
//! let point = experiments::evaluate_point(&spec);
//! let record = point.metrics().expect("baseline is stable");
//! assert!(record.e12 > 0.5 && record.g12 > 0.1);
//! ```

// Validation deliberately writes `!(x > 0.0)` instead of `x <= 0.0`: the
// negated form is true for NaN, so non-finite inputs fail closed.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod dynamics;
pub mod experiments;
pub mod measures;
pub mod model;
pub mod plot;
pub mod report;

pub use dynamics::{CovarianceMatrix, DiffusionMatrix, DriftMatrix};
pub use measures::MetricsRecord;
pub use model::{BathMoments, SystemSpec};
