//! Configuration boundary: the TOML file schema, flat `key=value` overrides,
//! and the single place where user-facing units (GHz, MHz, mK) become the
//! internal representation (rad/s, kelvin, κ_a units).
//!
//! Every physical key carries its unit in the name (`kappa_a_mhz`,
//! `temperature_mk`, `..._rel` for rates in units of κ_a), so a value can
//! never be interpreted in the wrong scale silently.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::SystemSpec;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file: {0}")]
    Io(#[from] std::io::Error),
    #[error("config file is not valid TOML: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("unknown config key `{key}`")]
    UnknownKey { key: String },
    #[error("override `{arg}` is not of the form key=value with a numeric value")]
    BadOverride { arg: String },
    #[error("invalid configuration:\n{}", .violations.join("\n"))]
    Invalid { violations: Vec<String> },
}

/// `[frequencies]`: mode and drive frequencies, GHz (ω/2π).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Frequencies {
    pub omega_a_ghz: f64,
    pub omega_1_ghz: f64,
    pub omega_2_ghz: f64,
    pub omega_s_ghz: f64,
}

impl Default for Frequencies {
    fn default() -> Self {
        Self {
            omega_a_ghz: 10.0,
            omega_1_ghz: 10.0,
            omega_2_ghz: 10.0,
            omega_s_ghz: 10.0,
        }
    }
}

/// `[rates]`: dissipation — the cavity linewidth in MHz (κ_a/2π) and the
/// magnon linewidths relative to κ_a.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Rates {
    pub kappa_a_mhz: f64,
    pub kappa_1_rel: f64,
    pub kappa_2_rel: f64,
}

impl Default for Rates {
    fn default() -> Self {
        Self {
            kappa_a_mhz: 5.0,
            kappa_1_rel: 0.2,
            kappa_2_rel: 0.2,
        }
    }
}

/// `[coupling]`: cavity–magnon coupling rates relative to κ_a.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Coupling {
    pub gamma_1_rel: f64,
    pub gamma_2_rel: f64,
}

impl Default for Coupling {
    fn default() -> Self {
        Self {
            gamma_1_rel: 4.0,
            gamma_2_rel: 4.0,
        }
    }
}

/// `[drive]`: amplifier gain (relative to κ_a), its phase, and the squeezed
/// vacuum drive parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Drive {
    pub lambda_opa_rel: f64,
    pub phi_opa_rad: f64,
    pub squeeze_r: f64,
    pub squeeze_theta_rad: f64,
}

impl Default for Drive {
    fn default() -> Self {
        Self {
            lambda_opa_rel: 0.0,
            phi_opa_rad: 0.0,
            squeeze_r: 0.0,
            squeeze_theta_rad: 0.0,
        }
    }
}

/// `[bath]`: environment temperature in millikelvin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Bath {
    pub temperature_mk: f64,
}

impl Default for Bath {
    fn default() -> Self {
        Self {
            temperature_mk: 20.0,
        }
    }
}

/// The full config file. Every section and key is optional; omitted values
/// fall back to the reference operating point.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FileConfig {
    pub frequencies: Frequencies,
    pub rates: Rates,
    pub coupling: Coupling,
    pub drive: Drive,
    pub bath: Bath,
}

impl FileConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        Ok(toml::from_str(text)?)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self, ConfigError> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    /// Applies one flat `key = value` override. Keys are the leaf names of
    /// the file schema; sections exist only for file readability.
    pub fn set(&mut self, key: &str, value: f64) -> Result<(), ConfigError> {
        let slot = match key {
            "omega_a_ghz" => &mut self.frequencies.omega_a_ghz,
            "omega_1_ghz" => &mut self.frequencies.omega_1_ghz,
            "omega_2_ghz" => &mut self.frequencies.omega_2_ghz,
            "omega_s_ghz" => &mut self.frequencies.omega_s_ghz,
            "kappa_a_mhz" => &mut self.rates.kappa_a_mhz,
            "kappa_1_rel" => &mut self.rates.kappa_1_rel,
            "kappa_2_rel" => &mut self.rates.kappa_2_rel,
            "gamma_1_rel" => &mut self.coupling.gamma_1_rel,
            "gamma_2_rel" => &mut self.coupling.gamma_2_rel,
            "lambda_opa_rel" => &mut self.drive.lambda_opa_rel,
            "phi_opa_rad" => &mut self.drive.phi_opa_rad,
            "squeeze_r" => &mut self.drive.squeeze_r,
            "squeeze_theta_rad" => &mut self.drive.squeeze_theta_rad,
            "temperature_mk" => &mut self.bath.temperature_mk,
            _ => {
                return Err(ConfigError::UnknownKey {
                    key: key.to_string(),
                })
            }
        };
        *slot = value;
        Ok(())
    }

    /// Parses and applies one `--set key=value` argument.
    pub fn apply_set_arg(&mut self, arg: &str) -> Result<(), ConfigError> {
        let bad = || ConfigError::BadOverride {
            arg: arg.to_string(),
        };
        let (key, value) = arg.split_once('=').ok_or_else(bad)?;
        let value: f64 = value.trim().parse().map_err(|_| bad())?;
        self.set(key.trim(), value)
    }

    /// Converts to the internal representation: frequencies to rad/s,
    /// temperature to kelvin, everything else already in κ_a units.
    pub fn to_spec(&self) -> SystemSpec {
        SystemSpec {
            omega_a: TWO_PI * (self.frequencies.omega_a_ghz * 1e9),
            omega_1: TWO_PI * (self.frequencies.omega_1_ghz * 1e9),
            omega_2: TWO_PI * (self.frequencies.omega_2_ghz * 1e9),
            omega_s: TWO_PI * (self.frequencies.omega_s_ghz * 1e9),
            kappa_a: TWO_PI * (self.rates.kappa_a_mhz * 1e6),
            kappa_1: self.rates.kappa_1_rel,
            kappa_2: self.rates.kappa_2_rel,
            gamma_1: self.coupling.gamma_1_rel,
            gamma_2: self.coupling.gamma_2_rel,
            lambda_opa: self.drive.lambda_opa_rel,
            phi_opa: self.drive.phi_opa_rad,
            squeeze_r: self.drive.squeeze_r,
            squeeze_theta: self.drive.squeeze_theta_rad,
            temperature: self.bath.temperature_mk / 1000.0,
        }
    }

    /// Converts to a spec and validates it, collecting every violation.
    pub fn to_valid_spec(&self) -> Result<SystemSpec, ConfigError> {
        let spec = self.to_spec();
        let violations = spec.validate();
        if violations.is_empty() {
            Ok(spec)
        } else {
            Err(ConfigError::Invalid { violations })
        }
    }

    /// Compact single-line JSON of the resolved config, embedded in CSV
    /// header comments so every output file records what produced it.
    pub fn resolved_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}
