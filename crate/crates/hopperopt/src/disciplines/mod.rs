//! Subsystem discipline models.
//!
//! Seven disciplines (mobility, power, thermal, shielding, communication,
//! avionics, shell) each produce a [`DisciplineBudget`]: the mass, volume
//! and power the subsystem consumes plus named coupling outputs. All models
//! here are documented reference reconstructions parameterized entirely by
//! [`ModelParams`]; they are pure functions and safe to call concurrently.

mod avionics;
mod comm;
mod mobility;
mod params;
mod power;
mod shell;
mod shielding;
mod thermal;

pub use avionics::{avionics_select, AvionicsIds, AvionicsSelection};
pub use comm::comm_design;
pub use mobility::{hop_delta_v, mobility_design, propellant_mass, STANDARD_GRAVITY_M_S2};
pub use params::{
    CouplingParams, EnvironmentEntry, ModelParams, ParamsError, DEFAULT_MODEL_PARAMS,
};
pub use power::{power_design, storage_mass_crossover_wh};
pub use shell::{shell_design, ShellSizing};
pub use shielding::shielding_design;
pub use thermal::{equilibrium_temperature_k, thermal_design, STEFAN_BOLTZMANN};

use std::collections::BTreeMap;
use thiserror::Error;

/// Surface interaction parameters. Only the rolling/wheeled models consume
/// them; the record is carried for every environment.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Soil {
    pub cohesion_pa: f64,
    pub friction_angle_deg: f64,
    pub sinkage_exponent: f64,
}

/// Scalar environment parameter set for one mission phase.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Environment {
    pub gravity_m_s2: f64,
    pub ambient_temperature_k: f64,
    pub dose_rate_rad_yr: f64,
    pub soil: Soil,
}

impl Environment {
    pub fn validate(&self) -> Result<(), MissionError> {
        if !self.gravity_m_s2.is_finite() || self.gravity_m_s2 <= 0.0 {
            return Err(MissionError::Invalid("gravity must be positive".into()));
        }
        if !self.ambient_temperature_k.is_finite() || self.ambient_temperature_k <= 0.0 {
            return Err(MissionError::Invalid(
                "ambient temperature must be positive".into(),
            ));
        }
        if self.dose_rate_rad_yr < 0.0 {
            return Err(MissionError::Invalid(
                "dose rate must be nonnegative".into(),
            ));
        }
        Ok(())
    }
}

/// One mission phase: a distance to cover within a duration under one
/// environment.
#[derive(Debug, Clone, PartialEq)]
pub struct Phase {
    pub distance_m: f64,
    pub duration_hr: f64,
    pub environment: Environment,
}

/// Target exploration profile: ordered phases plus the number of robots
/// deployed together.
#[derive(Debug, Clone, PartialEq)]
pub struct MissionSpec {
    pub phases: Vec<Phase>,
    pub robot_count: u32,
}

impl MissionSpec {
    pub fn validate(&self) -> Result<(), MissionError> {
        if self.phases.is_empty() {
            return Err(MissionError::Invalid("mission needs at least one phase".into()));
        }
        if self.robot_count == 0 {
            return Err(MissionError::Invalid("robot_count must be positive".into()));
        }
        for (i, phase) in self.phases.iter().enumerate() {
            if !phase.distance_m.is_finite() || phase.distance_m <= 0.0 {
                return Err(MissionError::Invalid(format!(
                    "phase {i}: distance must be positive"
                )));
            }
            if !phase.duration_hr.is_finite() || phase.duration_hr <= 0.0 {
                return Err(MissionError::Invalid(format!(
                    "phase {i}: duration must be positive"
                )));
            }
            phase.environment.validate()?;
        }
        Ok(())
    }

    pub fn total_distance_m(&self) -> f64 {
        self.phases.iter().map(|p| p.distance_m).sum()
    }

    pub fn total_duration_hr(&self) -> f64 {
        self.phases.iter().map(|p| p.duration_hr).sum()
    }

    /// Longest single-phase distance; used as the required comm range.
    pub fn max_range_m(&self) -> f64 {
        self.phases
            .iter()
            .map(|p| p.distance_m)
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Error)]
pub enum MissionError {
    #[error("invalid mission: {0}")]
    Invalid(String),
}

/// What one subsystem costs the system, plus its named coupling outputs.
#[derive(Debug, Clone, PartialEq)]
pub struct DisciplineBudget {
    pub mass_kg: f64,
    pub volume_m3: f64,
    pub power_w: f64,
    /// Named coupling outputs consumed by other disciplines or constraints
    /// (energy demand, dissipated heat, antenna resonant frequency, ...).
    pub couplings: BTreeMap<String, f64>,
    pub feasible: bool,
    /// Populated exactly when `feasible` is false.
    pub infeasible_reason: Option<String>,
}

impl DisciplineBudget {
    pub fn zero() -> Self {
        Self {
            mass_kg: 0.0,
            volume_m3: 0.0,
            power_w: 0.0,
            couplings: BTreeMap::new(),
            feasible: true,
            infeasible_reason: None,
        }
    }

    pub fn infeasible(reason: impl Into<String>) -> Self {
        Self {
            feasible: false,
            infeasible_reason: Some(reason.into()),
            ..Self::zero()
        }
    }

    pub fn with_coupling(mut self, key: &str, value: f64) -> Self {
        self.couplings.insert(key.to_string(), value);
        self
    }

    pub fn coupling(&self, key: &str) -> Option<f64> {
        self.couplings.get(key).copied()
    }

    /// Componentwise worst case of two budgets; used to merge per-phase
    /// sizings of one subsystem into its driving case.
    pub fn worst_case(mut self, other: &DisciplineBudget) -> DisciplineBudget {
        self.mass_kg = self.mass_kg.max(other.mass_kg);
        self.volume_m3 = self.volume_m3.max(other.volume_m3);
        self.power_w = self.power_w.max(other.power_w);
        for (k, v) in &other.couplings {
            let entry = self.couplings.entry(k.clone()).or_insert(f64::NEG_INFINITY);
            *entry = entry.max(*v);
        }
        if !other.feasible {
            self.feasible = false;
            if self.infeasible_reason.is_none() {
                self.infeasible_reason = other.infeasible_reason.clone();
            }
        }
        self
    }
}

/// The seven per-subsystem budgets of one evaluated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsystemBudgets {
    pub mobility: DisciplineBudget,
    pub power: DisciplineBudget,
    pub thermal: DisciplineBudget,
    pub shielding: DisciplineBudget,
    pub comm: DisciplineBudget,
    pub avionics: DisciplineBudget,
    pub shell: DisciplineBudget,
}

pub const SUBSYSTEM_NAMES: [&str; 7] = [
    "mobility",
    "power",
    "thermal",
    "shielding",
    "comm",
    "avionics",
    "shell",
];

impl SubsystemBudgets {
    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &DisciplineBudget)> {
        [
            ("mobility", &self.mobility),
            ("power", &self.power),
            ("thermal", &self.thermal),
            ("shielding", &self.shielding),
            ("comm", &self.comm),
            ("avionics", &self.avionics),
            ("shell", &self.shell),
        ]
        .into_iter()
    }

    pub fn total_mass_kg(&self) -> f64 {
        self.iter().map(|(_, b)| b.mass_kg).sum()
    }

    pub fn total_volume_m3(&self) -> f64 {
        self.iter().map(|(_, b)| b.volume_m3).sum()
    }

    pub fn total_power_w(&self) -> f64 {
        self.iter().map(|(_, b)| b.power_w).sum()
    }

    pub fn all_feasible(&self) -> bool {
        self.iter().all(|(_, b)| b.feasible)
    }

    pub fn first_infeasible(&self) -> Option<(&'static str, &str)> {
        self.iter().find_map(|(name, b)| {
            (!b.feasible).then(|| (name, b.infeasible_reason.as_deref().unwrap_or("unknown")))
        })
    }
}

/// Mobility system architecture selected by the integer design variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MobilityConfig {
    pub mode: MobilityMode,
    /// Only meaningful when `mode == Hopping`.
    pub hop_subtype: HopSubtype,
    /// Only meaningful for propulsive hopping.
    pub propellant: Propellant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MobilityMode {
    Hopping,
    Rolling,
    Wheeled,
}

impl MobilityMode {
    pub const ALL: [MobilityMode; 3] =
        [MobilityMode::Hopping, MobilityMode::Rolling, MobilityMode::Wheeled];

    pub fn code(&self) -> u32 {
        match self {
            MobilityMode::Hopping => 1,
            MobilityMode::Rolling => 2,
            MobilityMode::Wheeled => 3,
        }
    }

    pub fn from_code(code: u32) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.code() == code)
    }

    pub fn name(&self) -> &'static str {
        match self {
            MobilityMode::Hopping => "hopping",
            MobilityMode::Rolling => "rolling",
            MobilityMode::Wheeled => "wheeled",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HopSubtype {
    Propulsive,
    Mechanical,
    ReactionWheel,
}

impl HopSubtype {
    pub const ALL: [HopSubtype; 3] = [
        HopSubtype::Propulsive,
        HopSubtype::Mechanical,
        HopSubtype::ReactionWheel,
    ];

    pub fn code(&self) -> u32 {
        match self {
            HopSubtype::Propulsive => 1,
            HopSubtype::Mechanical => 2,
            HopSubtype::ReactionWheel => 3,
        }
    }

    pub fn from_code(code: u32) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.code() == code)
    }

    pub fn name(&self) -> &'static str {
        match self {
            HopSubtype::Propulsive => "propulsive",
            HopSubtype::Mechanical => "mechanical",
            HopSubtype::ReactionWheel => "reaction_wheel",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Propellant {
    Hydrolox,
    Rp1Peroxide,
    Steam,
}

impl Propellant {
    pub const ALL: [Propellant; 3] =
        [Propellant::Hydrolox, Propellant::Rp1Peroxide, Propellant::Steam];

    pub fn code(&self) -> u32 {
        match self {
            Propellant::Hydrolox => 1,
            Propellant::Rp1Peroxide => 2,
            Propellant::Steam => 3,
        }
    }

    pub fn from_code(code: u32) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.code() == code)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Propellant::Hydrolox => "h2_o2",
            Propellant::Rp1Peroxide => "rp1_h2o2",
            Propellant::Steam => "steam",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PowerType {
    Battery,
    FuelCell,
}

impl PowerType {
    pub const ALL: [PowerType; 2] = [PowerType::Battery, PowerType::FuelCell];

    pub fn code(&self) -> u32 {
        match self {
            PowerType::Battery => 1,
            PowerType::FuelCell => 2,
        }
    }

    pub fn from_code(code: u32) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.code() == code)
    }

    pub fn name(&self) -> &'static str {
        match self {
            PowerType::Battery => "battery",
            PowerType::FuelCell => "fuel_cell",
        }
    }
}

#[derive(Debug, Error)]
#[error("unknown environment ({body}, {phase}); available: {available}")]
pub struct EnvironmentLookupError {
    pub body: String,
    pub phase: String,
    pub available: String,
}

/// Scalar environment parameters for a known (body, phase) combination from
/// the parameter table.
pub fn environment_lookup(
    params: &ModelParams,
    body: &str,
    phase: &str,
) -> Result<Environment, EnvironmentLookupError> {
    params
        .environment
        .iter()
        .find(|e| e.body == body && e.phase == phase)
        .map(|e| e.environment())
        .ok_or_else(|| EnvironmentLookupError {
            body: body.to_string(),
            phase: phase.to_string(),
            available: params
                .environment
                .iter()
                .map(|e| format!("({}, {})", e.body, e.phase))
                .collect::<Vec<_>>()
                .join(", "),
        })
}

/// Packing/consistency feasibility flag used by constraint G4: 1 exactly
/// when every budget is feasible and the component volumes, masses and
/// powers fit the configuration (closed inequalities).
pub fn assembly_index(
    budgets: &SubsystemBudgets,
    mass_kg: f64,
    radius_m: f64,
    power_w: f64,
    packing_fraction: f64,
) -> u8 {
    let enclosed = 4.0 / 3.0 * std::f64::consts::PI * radius_m.powi(3);
    let fits = budgets.all_feasible()
        && budgets.total_volume_m3() <= packing_fraction * enclosed
        && budgets.total_mass_kg() <= mass_kg
        && budgets.total_power_w() <= power_w;
    u8::from(fits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moon_surface_parameters_match_the_table() {
        let params = ModelParams::default();
        let env = environment_lookup(&params, "moon", "surface").unwrap();
        assert_eq!(env.gravity_m_s2, 1.62);
        assert_eq!(env.ambient_temperature_k, 340.0);
        assert_eq!(env.dose_rate_rad_yr, 100.0);
    }

    #[test]
    fn moon_subsurface_is_cold_and_shielded() {
        let params = ModelParams::default();
        let env = environment_lookup(&params, "moon", "subsurface").unwrap();
        assert_eq!(env.ambient_temperature_k, 250.0);
        assert_eq!(env.dose_rate_rad_yr, 0.0);
        assert_eq!(env.gravity_m_s2, 1.62);
    }

    #[test]
    fn lookup_is_pure_and_unknown_combos_list_options() {
        let params = ModelParams::default();
        let a = environment_lookup(&params, "moon", "surface").unwrap();
        let b = environment_lookup(&params, "moon", "surface").unwrap();
        assert_eq!(a, b);

        let err = environment_lookup(&params, "venus", "surface").unwrap_err();
        assert!(err.available.contains("(moon, surface)"));
        assert!(err.available.contains("(mars, subsurface)"));
    }

    #[test]
    fn assembly_index_boundary_is_closed() {
        let params = ModelParams::default();
        let r: f64 = 0.1;
        let enclosed = 4.0 / 3.0 * std::f64::consts::PI * r.powi(3);
        let mut budgets = SubsystemBudgets {
            mobility: DisciplineBudget::zero(),
            power: DisciplineBudget::zero(),
            thermal: DisciplineBudget::zero(),
            shielding: DisciplineBudget::zero(),
            comm: DisciplineBudget::zero(),
            avionics: DisciplineBudget::zero(),
            shell: DisciplineBudget::zero(),
        };
        budgets.avionics.volume_m3 = params.shell.packing_fraction * enclosed;
        budgets.avionics.mass_kg = 2.0;
        assert_eq!(
            assembly_index(&budgets, 2.0, r, 10.0, params.shell.packing_fraction),
            1
        );
        budgets.avionics.volume_m3 *= 1.0 + 1e-9;
        assert_eq!(
            assembly_index(&budgets, 2.0, r, 10.0, params.shell.packing_fraction),
            0
        );
    }

    #[test]
    fn assembly_index_rejects_any_infeasible_budget() {
        let params = ModelParams::default();
        let budgets = SubsystemBudgets {
            mobility: DisciplineBudget::infeasible("cannot cover distance in time"),
            power: DisciplineBudget::zero(),
            thermal: DisciplineBudget::zero(),
            shielding: DisciplineBudget::zero(),
            comm: DisciplineBudget::zero(),
            avionics: DisciplineBudget::zero(),
            shell: DisciplineBudget::zero(),
        };
        assert_eq!(
            assembly_index(&budgets, 10.0, 0.2, 50.0, params.shell.packing_fraction),
            0
        );
        assert!(budgets.first_infeasible().is_some());
    }
}
