//! Strict JSON run configurations. Unknown keys are rejected everywhere;
//! all physical parameters are re-validated by the owning module before
//! any computation starts.

use serde::Deserialize;

use crate::error::{RabiError, Result};
use crate::models::{AnisotropicRabiParams, ParametricJCParams};
use crate::spectra::{AxisCoordinate, CutoffPolicy, SweepAxis, SweepModel};

/// Drive specification: exactly one of `eta` (two-photon amplitude) or
/// `r` (squeeze parameter).
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriveConfig {
    pub eta: Option<f64>,
    pub r: Option<f64>,
}

impl DriveConfig {
    fn build(&self, delta_c: f64, delta_q: f64, g: f64) -> Result<ParametricJCParams> {
        match (self.eta, self.r) {
            (Some(eta), None) => ParametricJCParams::from_eta(delta_c, delta_q, g, eta),
            (None, Some(r)) => ParametricJCParams::from_squeeze(delta_c, delta_q, g, r),
            _ => Err(RabiError::InvalidConfig(
                "drive must specify exactly one of {eta, r}".into(),
            )),
        }
    }
}

/// Model selector mirrored from the library's builders.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, tag = "kind", rename_all = "kebab-case")]
pub enum ModelConfig {
    Anisotropic {
        omega0: f64,
        omega_q: f64,
        xi1: f64,
        xi2: f64,
    },
    ParametricJc {
        delta_c: f64,
        delta_q: f64,
        g: f64,
        drive: DriveConfig,
    },
    SqueezedFrame {
        delta_c: f64,
        delta_q: f64,
        g: f64,
        drive: DriveConfig,
    },
    Dispersive {
        delta_c: f64,
        delta_q: f64,
        g: f64,
        drive: DriveConfig,
    },
}

impl ModelConfig {
    pub fn to_sweep_model(&self) -> Result<SweepModel> {
        Ok(match self {
            ModelConfig::Anisotropic {
                omega0,
                omega_q,
                xi1,
                xi2,
            } => SweepModel::Anisotropic(AnisotropicRabiParams::new(*omega0, *omega_q, *xi1, *xi2)?),
            ModelConfig::ParametricJc {
                delta_c,
                delta_q,
                g,
                drive,
            } => SweepModel::ParametricJc(drive.build(*delta_c, *delta_q, *g)?),
            ModelConfig::SqueezedFrame {
                delta_c,
                delta_q,
                g,
                drive,
            } => SweepModel::SqueezedFrame(drive.build(*delta_c, *delta_q, *g)?),
            ModelConfig::Dispersive {
                delta_c,
                delta_q,
                g,
                drive,
            } => SweepModel::Dispersive(drive.build(*delta_c, *delta_q, *g)?),
        })
    }
}

/// One swept coordinate with its range.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields, tag = "coordinate", rename_all = "kebab-case")]
pub enum AxisConfig {
    KOverKc { min: f64, max: f64, points: usize },
    Xi1OverXi1c { k: f64, min: f64, max: f64, points: usize },
    GOverG0 { min: f64, max: f64, points: usize },
    G { min: f64, max: f64, points: usize },
    R { min: f64, max: f64, points: usize },
}

impl AxisConfig {
    pub fn to_axis(&self) -> SweepAxis {
        let (coordinate, min, max, points) = match *self {
            AxisConfig::KOverKc { min, max, points } => (AxisCoordinate::KOverKc, min, max, points),
            AxisConfig::Xi1OverXi1c { k, min, max, points } => {
                (AxisCoordinate::Xi1OverXi1c { k }, min, max, points)
            }
            AxisConfig::GOverG0 { min, max, points } => (AxisCoordinate::GOverG0, min, max, points),
            AxisConfig::G { min, max, points } => (AxisCoordinate::BareG, min, max, points),
            AxisConfig::R { min, max, points } => (AxisCoordinate::SqueezeR, min, max, points),
        };
        SweepAxis {
            coordinate,
            min,
            max,
            points,
        }
    }
}

fn default_levels() -> usize {
    4
}

fn default_spectrum_levels() -> usize {
    6
}

fn default_true() -> bool {
    true
}

fn default_h() -> f64 {
    1e-3
}

fn default_gap_floor() -> f64 {
    1e-16
}

fn default_seed() -> u64 {
    7
}

/// `spectrum` command: one model instance.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumConfig {
    pub model: ModelConfig,
    #[serde(default)]
    pub cutoff: CutoffPolicy,
    #[serde(default = "default_spectrum_levels")]
    pub levels: usize,
}

/// `patterns` command: single-axis sweep of the anisotropic model with
/// pattern attribution.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternsConfig {
    pub model: ModelConfig,
    pub axis: AxisConfig,
    #[serde(default = "default_levels")]
    pub levels: usize,
    #[serde(default)]
    pub cutoff: CutoffPolicy,
    #[serde(default = "default_true")]
    pub second_derivatives: bool,
}

/// `phase-diagram` command: (g, r) grid of the gap.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseDiagramConfig {
    pub model: ModelConfig,
    pub g_axis: RangeConfig,
    pub r_axis: RangeConfig,
    #[serde(default)]
    pub cutoff: CutoffPolicy,
    #[serde(default = "default_gap_floor")]
    pub gap_floor: f64,
}

/// A bare numeric range for the phase-diagram axes.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RangeConfig {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

/// `analytic` command: closed-form phase quantities over a coupling grid.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalyticConfig {
    pub model: ModelConfig,
    pub coupling: RangeConfig,
    #[serde(default = "default_h")]
    pub h: f64,
}

/// `validate` command: seeds for the randomized suites.
#[derive(Debug, Clone, Copy, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ValidateConfig {
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Shrinks the randomized suites for smoke runs.
    #[serde(default)]
    pub quick: bool,
}

pub fn parse_config<'a, T: Deserialize<'a>>(raw: &'a str) -> Result<T> {
    serde_json::from_str(raw).map_err(|e| RabiError::InvalidConfig(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_keys_rejected() {
        let raw = r#"{"model": {"kind": "anisotropic", "omega0": 1.0, "omega_q": 100.0,
                       "xi1": 0.1, "xi2": 0.0}, "levels": 4, "bogus": 1}"#;
        assert!(parse_config::<SpectrumConfig>(raw).is_err());
    }

    #[test]
    fn drive_exclusivity() {
        let both = DriveConfig {
            eta: Some(0.1),
            r: Some(0.2),
        };
        assert!(both.build(1.0, 2.0, 0.1).is_err());
        let neither = DriveConfig { eta: None, r: None };
        assert!(neither.build(1.0, 2.0, 0.1).is_err());
        let ok = DriveConfig {
            eta: None,
            r: Some(0.5),
        };
        assert!(ok.build(1.0, 2.0, 0.1).is_ok());
    }

    #[test]
    fn full_patterns_config_parses() {
        let raw = r#"{
            "model": {"kind": "anisotropic", "omega0": 1.0, "omega_q": 100.0, "xi1": 0.1, "xi2": 0.0},
            "axis": {"coordinate": "k-over-kc", "min": 0.0, "max": 1.5, "points": 151},
            "levels": 4,
            "cutoff": {"tol_e": 1e-8, "tol_n": 1e-6, "n_start": 32, "n_max": 512},
            "second_derivatives": true
        }"#;
        let cfg: PatternsConfig = parse_config(raw).unwrap();
        assert_eq!(cfg.levels, 4);
        let axis = cfg.axis.to_axis();
        assert_eq!(axis.points, 151);
    }
}
