//! System-level multi-objective problem assembly.
//!
//! Twelve design variables (mass, radius, power demand, mobility mode and
//! subtype codes, power-system type, five COTS ids) map to four normalized
//! objectives: total size (F1), payload mass/volume shortfall (F2),
//! power demand (F3) and payload power shortfall (F4), all minimized under
//! payload-positivity, packing, bandwidth and user spec constraints folded
//! into a penalty violation.

mod compare;
mod encoding;
mod evaluate;
mod driver;

pub use compare::{comparative_mass_min, CompareOutcome, ComparisonSetup, PowerPlantCombo};
pub use encoding::{
    decode, denormalize, design_template, encode, init_population, normalize, DecodeError,
    NUM_DESIGN_VARS,
};
pub use evaluate::{
    evaluate, size_subsystems, EvaluationRecord, PayloadBudget, PayloadRatios, SizingInputs,
    SizingOutcome, SystemProblem,
};
pub use driver::{
    final_share, run_system_optimization, selection_history, FrontMember, OptionTally,
    ParetoFront,
};

use crate::disciplines::{MobilityConfig, PowerType};
use thiserror::Error;

pub use crate::disciplines::AvionicsIds;

/// Normalization bounds of the three continuous design variables.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SystemBounds {
    pub mass_kg: [f64; 2],
    pub radius_m: [f64; 2],
    pub power_w: [f64; 2],
}

impl Default for SystemBounds {
    fn default() -> Self {
        Self {
            mass_kg: [1.0, 20.0],
            radius_m: [0.05, 0.30],
            power_w: [5.0, 100.0],
        }
    }
}

impl SystemBounds {
    pub fn validate(&self) -> Result<(), ConfigError> {
        for (name, pair) in [
            ("mass_kg", self.mass_kg),
            ("radius_m", self.radius_m),
            ("power_w", self.power_w),
        ] {
            if !pair[0].is_finite() || !pair[1].is_finite() || pair[0] >= pair[1] {
                return Err(ConfigError::Bounds {
                    field: name,
                    message: format!("lower bound {} must be below upper {}", pair[0], pair[1]),
                });
            }
            if pair[0] <= 0.0 {
                return Err(ConfigError::Bounds {
                    field: name,
                    message: "bounds must be positive".into(),
                });
            }
        }
        Ok(())
    }
}

/// Objective blend weights; each pair sums to one.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ObjectiveWeights {
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    pub alpha4: f64,
}

impl Default for ObjectiveWeights {
    fn default() -> Self {
        Self {
            alpha1: 0.5,
            alpha2: 0.5,
            alpha3: 0.5,
            alpha4: 0.5,
        }
    }
}

impl ObjectiveWeights {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let all_in_range = [self.alpha1, self.alpha2, self.alpha3, self.alpha4]
            .iter()
            .all(|a| (0.0..=1.0).contains(a));
        if !all_in_range {
            return Err(ConfigError::Weights("weights must lie in [0, 1]".into()));
        }
        if (self.alpha1 + self.alpha2 - 1.0).abs() > 1e-9
            || (self.alpha3 + self.alpha4 - 1.0).abs() > 1e-9
        {
            return Err(ConfigError::Weights(
                "alpha1+alpha2 and alpha3+alpha4 must each sum to 1".into(),
            ));
        }
        Ok(())
    }
}

/// Optional user-defined spec constraints folded into the violation.
#[derive(Debug, Clone, Copy, PartialEq, Default, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExtraConstraints {
    pub min_clock_mhz: Option<f64>,
    pub min_storage_gb: Option<f64>,
    pub min_battery_capacity_wh: Option<f64>,
}

/// A decoded 12-variable system configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemConfig {
    pub mass_kg: f64,
    pub radius_m: f64,
    pub power_w: f64,
    pub mobility: MobilityConfig,
    pub power_type: PowerType,
    pub cots: AvionicsIds,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("bounds.{field}: {message}")]
    Bounds { field: &'static str, message: String },
    #[error("weights: {0}")]
    Weights(String),
}
