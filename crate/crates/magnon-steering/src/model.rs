//! Physical parameterization of the cavity–magnon system and derived bath
//! quantities.
//!
//! Rates are stored in units of the cavity linewidth `κ_a` so that sweep axes
//! (`Λ/κ_a`, `Γ₂/Γ₁`, `κ_k/κ_a`) read directly off the struct, while mode
//! frequencies stay absolute (angular, rad/s) because thermal occupations need
//! them. Conversions from laboratory units (GHz, MHz, mK) happen once, at the
//! config boundary.

use nalgebra::Complex;
use serde::Serialize;
use thiserror::Error;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant, J/K.
pub const KB: f64 = 1.380_649e-23;
/// Gyromagnetic ratio of the Kittel mode, rad/s per tesla (2π × 28 GHz/T).
pub const GYROMAGNETIC_RATIO: f64 = 2.0 * std::f64::consts::PI * 28.0e9;

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("mode frequency must be positive (got {0} rad/s)")]
    NonPositiveFrequency(f64),
    #[error("magnetic field must be positive (got {0} T)")]
    NonPositiveField(f64),
}

/// Full parameterization of one system configuration.
///
/// `kappa_1`, `kappa_2`, `gamma_1`, `gamma_2`, and `lambda_opa` are expressed
/// in units of `kappa_a`; `kappa_a` itself and the mode frequencies are
/// absolute angular rates (rad/s). Detunings are derived quantities — see
/// [`SystemSpec::delta_a`] — and are never stored, so they cannot drift out of
/// sync with their parent frequencies.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SystemSpec {
    /// Cavity mode frequency ω_a, rad/s.
    pub omega_a: f64,
    /// Magnon mode frequencies ω₁, ω₂, rad/s.
    pub omega_1: f64,
    pub omega_2: f64,
    /// Squeezed-drive frequency ω_s, rad/s (sets the rotating frame).
    pub omega_s: f64,
    /// Cavity dissipation rate κ_a, rad/s; the unit for all relative rates.
    pub kappa_a: f64,
    /// Magnon dissipation rates, units of κ_a.
    pub kappa_1: f64,
    pub kappa_2: f64,
    /// Photon–magnon coupling strengths Γ₁, Γ₂, units of κ_a.
    pub gamma_1: f64,
    pub gamma_2: f64,
    /// OPA parametric gain Λ (units of κ_a) and phase φ (rad).
    pub lambda_opa: f64,
    pub phi_opa: f64,
    /// Squeezed-drive squeezing parameter r (dimensionless) and phase θ (rad).
    pub squeeze_r: f64,
    pub squeeze_theta: f64,
    /// Environment temperature, kelvin.
    pub temperature: f64,
}

impl SystemSpec {
    /// Cavity detuning Δ_a = ω_a − ω_s, units of κ_a.
    pub fn delta_a(&self) -> f64 {
        (self.omega_a - self.omega_s) / self.kappa_a
    }

    /// Magnon-1 detuning Δ₁ = ω₁ − ω_s, units of κ_a.
    pub fn delta_1(&self) -> f64 {
        (self.omega_1 - self.omega_s) / self.kappa_a
    }

    /// Magnon-2 detuning Δ₂ = ω₂ − ω_s, units of κ_a.
    pub fn delta_2(&self) -> f64 {
        (self.omega_2 - self.omega_s) / self.kappa_a
    }

    /// Ratio Γ₂/Γ₁ (undefined when Γ₁ = 0; returns +∞ or NaN accordingly).
    pub fn coupling_ratio(&self) -> f64 {
        self.gamma_2 / self.gamma_1
    }

    pub fn with_squeezing(mut self, r: f64, theta: f64) -> Self {
        self.squeeze_r = r;
        self.squeeze_theta = theta;
        self
    }

    pub fn with_opa(mut self, lambda: f64, phi: f64) -> Self {
        self.lambda_opa = lambda;
        self.phi_opa = phi;
        self
    }

    pub fn with_couplings(mut self, gamma_1: f64, gamma_2: f64) -> Self {
        self.gamma_1 = gamma_1;
        self.gamma_2 = gamma_2;
        self
    }

    pub fn with_kappas(mut self, kappa_1: f64, kappa_2: f64) -> Self {
        self.kappa_1 = kappa_1;
        self.kappa_2 = kappa_2;
        self
    }

    pub fn with_temperature(mut self, kelvin: f64) -> Self {
        self.temperature = kelvin;
        self
    }

    /// Checks every invariant and returns one message per violation, each
    /// naming the offending field. An empty list means the spec is valid.
    pub fn validate(&self) -> Vec<String> {
        let mut violations = Vec::new();
        for (name, omega) in [
            ("omega_a", self.omega_a),
            ("omega_1", self.omega_1),
            ("omega_2", self.omega_2),
            ("omega_s", self.omega_s),
        ] {
            if !(omega > 0.0) {
                violations.push(format!("{name} must be positive (got {omega} rad/s)"));
            }
        }
        if !(self.kappa_a > 0.0) {
            violations.push(format!("kappa_a must be positive (got {})", self.kappa_a));
        }
        if !(self.kappa_1 > 0.0) {
            violations.push(format!("kappa_1 must be positive (got {})", self.kappa_1));
        }
        if !(self.kappa_2 > 0.0) {
            violations.push(format!("kappa_2 must be positive (got {})", self.kappa_2));
        }
        if !(self.gamma_1 >= 0.0) {
            violations.push(format!("gamma_1 must be nonnegative (got {})", self.gamma_1));
        }
        if !(self.gamma_2 >= 0.0) {
            violations.push(format!("gamma_2 must be nonnegative (got {})", self.gamma_2));
        }
        if !(self.lambda_opa >= 0.0) {
            violations.push(format!(
                "lambda_opa must be nonnegative (got {})",
                self.lambda_opa
            ));
        }
        if !(self.squeeze_r >= 0.0) {
            violations.push(format!(
                "squeeze_r must be nonnegative (got {})",
                self.squeeze_r
            ));
        }
        if !(self.temperature >= 0.0) {
            violations.push(format!(
                "temperature must be nonnegative (got {} K)",
                self.temperature
            ));
        }
        for (name, value) in [("phi_opa", self.phi_opa), ("squeeze_theta", self.squeeze_theta)] {
            if !value.is_finite() {
                violations.push(format!("{name} must be finite (got {value})"));
            }
        }
        violations
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

/// Derived squeezed-bath quantities feeding the diffusion matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathMoments {
    /// Mean thermal occupations n̄_a, n̄₁, n̄₂ at the respective mode
    /// frequencies.
    pub n_a: f64,
    pub n_1: f64,
    pub n_2: f64,
    /// N = n̄_a cosh²r + (n̄_a + 1) sinh²r.
    pub big_n: f64,
    /// M = (1 + 2n̄_a) e^{iθ} cosh r sinh r.
    pub big_m: Complex<f64>,
}

/// Mean thermal occupation n̄ = 1/[exp(ħω/k_B T) − 1].
///
/// T = 0 returns 0 exactly (the defined limit) rather than evaluating the
/// formula, which would overflow the exponent.
pub fn thermal_occupancy(omega: f64, temperature: f64) -> Result<f64, ModelError> {
    if !(omega > 0.0) {
        return Err(ModelError::NonPositiveFrequency(omega));
    }
    if temperature == 0.0 {
        return Ok(0.0);
    }
    // exp_m1 keeps precision when ħω ≪ k_B T; for ħω ≫ k_B T the exponential
    // overflows to +∞ and the occupation underflows cleanly to 0.
    Ok(1.0 / (HBAR * omega / (KB * temperature)).exp_m1())
}

/// Thermal occupations of all three modes plus the squeezed-drive moments
/// N and M. Expects a valid spec; mode frequencies must be positive.
pub fn bath_moments(spec: &SystemSpec) -> BathMoments {
    let occupancy = |omega: f64| {
        thermal_occupancy(omega, spec.temperature).expect("mode frequency must be positive")
    };
    let n_a = occupancy(spec.omega_a);
    let n_1 = occupancy(spec.omega_1);
    let n_2 = occupancy(spec.omega_2);
    let (sh, ch) = (spec.squeeze_r.sinh(), spec.squeeze_r.cosh());
    let big_n = n_a * ch * ch + (n_a + 1.0) * sh * sh;
    let big_m = Complex::from_polar((1.0 + 2.0 * n_a) * ch * sh, spec.squeeze_theta);
    BathMoments {
        n_a,
        n_1,
        n_2,
        big_n,
        big_m,
    }
}

/// Magnon frequency from the bias magnetic field: ω = γ₀B with
/// γ₀ = 2π × 28 GHz/T.
pub fn frequency_from_field(field_tesla: f64) -> Result<f64, ModelError> {
    if !(field_tesla > 0.0) {
        return Err(ModelError::NonPositiveField(field_tesla));
    }
    Ok(GYROMAGNETIC_RATIO * field_tesla)
}

/// Inverse of [`frequency_from_field`]: the bias field that tunes a magnon
/// mode to the given angular frequency.
pub fn field_from_frequency(omega: f64) -> Result<f64, ModelError> {
    if !(omega > 0.0) {
        return Err(ModelError::NonPositiveFrequency(omega));
    }
    Ok(omega / GYROMAGNETIC_RATIO)
}

/// The reference operating point: all modes resonant with the drive at
/// ω/2π = 10 GHz (zero detunings), κ_a/2π = 5 MHz, κ₁ = κ₂ = κ_a/5,
/// Γ₁ = Γ₂ = 4κ_a, T = 20 mK, θ = φ = 0. Squeezing `r` and OPA gain `Λ`
/// start at zero; set them with [`SystemSpec::with_squeezing`] and
/// [`SystemSpec::with_opa`].
pub fn default_spec() -> SystemSpec {
    let two_pi = 2.0 * std::f64::consts::PI;
    let omega = two_pi * 10.0e9;
    SystemSpec {
        omega_a: omega,
        omega_1: omega,
        omega_2: omega,
        omega_s: omega,
        kappa_a: two_pi * 5.0e6,
        kappa_1: 0.2,
        kappa_2: 0.2,
        gamma_1: 4.0,
        gamma_2: 4.0,
        lambda_opa: 0.0,
        phi_opa: 0.0,
        squeeze_r: 0.0,
        squeeze_theta: 0.0,
        temperature: 0.020,
    }
}
