//! The model parameter file: one human-editable TOML document holding every
//! constant the reference discipline models use.

use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

use super::{Environment, Soil};

/// Embedded copy of `data/model_params.toml`; [`ModelParams::default`]
/// parses it, so file and defaults cannot drift apart.
pub const DEFAULT_MODEL_PARAMS: &str = include_str!("../../data/model_params.toml");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelParams {
    pub propulsion: PropulsionParams,
    pub mechanism: MechanismParams,
    pub power: PowerParams,
    pub thermal: ThermalParams,
    pub shielding: ShieldingParams,
    pub comm: CommParams,
    pub shell: ShellParams,
    pub coupling: CouplingParams,
    #[serde(default)]
    pub environment: Vec<EnvironmentEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropulsionParams {
    pub isp_hydrolox_s: f64,
    pub isp_rp1_peroxide_s: f64,
    pub isp_steam_s: f64,
    pub density_hydrolox_kg_m3: f64,
    pub density_rp1_peroxide_kg_m3: f64,
    pub density_steam_kg_m3: f64,
    pub tank_mass_frac_hydrolox: f64,
    pub tank_mass_frac_rp1_peroxide: f64,
    pub tank_mass_frac_steam: f64,
    pub tank_ullage_factor: f64,
    pub preheat_wh_per_kg_hydrolox: f64,
    pub preheat_wh_per_kg_rp1_peroxide: f64,
    pub preheat_wh_per_kg_steam: f64,
    pub standby_power_w_hydrolox: f64,
    pub standby_power_w_rp1_peroxide: f64,
    pub standby_power_w_steam: f64,
    pub thruster_mass_per_newton_kg: f64,
    pub thruster_floor_mass_kg: f64,
    pub thruster_density_kg_m3: f64,
    pub burn_time_s: f64,
    pub hop_settle_time_s: f64,
    pub hop_range_min_m: f64,
    pub hop_range_max_m: f64,
    pub ignition_energy_j: f64,
    pub flight_power_w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MechanismParams {
    pub mech_hop_range_m: f64,
    pub mech_cycle_time_s: f64,
    pub mech_efficiency: f64,
    pub mech_base_mass_kg: f64,
    pub mech_mass_per_joule_kg: f64,
    pub rw_hop_range_m: f64,
    pub rw_cycle_time_s: f64,
    pub rw_efficiency: f64,
    pub rw_base_mass_kg: f64,
    pub rw_mass_per_joule_kg: f64,
    pub rolling_speed_m_s: f64,
    pub rolling_base_mass_kg: f64,
    pub rolling_resistance_coeff: f64,
    pub rolling_efficiency: f64,
    pub wheeled_speed_m_s: f64,
    pub wheeled_base_mass_kg: f64,
    pub wheeled_mass_frac: f64,
    pub wheeled_resistance_coeff: f64,
    pub wheeled_efficiency: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerParams {
    pub battery_specific_energy_wh_per_kg: f64,
    pub battery_energy_density_wh_per_l: f64,
    pub battery_packaging_mass_kg: f64,
    pub battery_packaging_volume_l: f64,
    pub battery_depth_of_discharge: f64,
    pub fuel_cell_stack_mass_kg: f64,
    pub fuel_cell_stack_volume_l: f64,
    pub fuel_cell_reactant_specific_energy_wh_per_kg: f64,
    pub fuel_cell_reactant_energy_density_wh_per_l: f64,
    pub fuel_cell_reactant_utilization: f64,
    pub conditioning_efficiency: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThermalParams {
    pub emissivity: f64,
    pub set_point_low_k: f64,
    pub set_point_high_k: f64,
    pub insulation_areal_mass_kg_m2: f64,
    pub radiator_areal_mass_kg_m2: f64,
    pub radiator_areal_volume_m3_m2: f64,
    pub heater_unit_mass_kg: f64,
    pub waste_heat_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShieldingParams {
    pub dose_limit_rad: f64,
    pub attenuation_length_m: f64,
    pub shield_density_kg_m3: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommParams {
    pub antenna_mass_per_m_kg: f64,
    pub antenna_volume_per_m_m3: f64,
    pub antenna_max_length_per_radius: f64,
    pub duty_cycle: f64,
    pub rf_efficiency: f64,
    pub antenna_gain_dbi: f64,
    pub rx_sensitivity_dbm: f64,
    pub bandwidth_per_robot_mhz: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShellParams {
    pub density_kg_m3: f64,
    pub min_thickness_m: f64,
    pub thickness_per_radius: f64,
    pub packing_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingParams {
    pub damping: f64,
    pub max_iterations: usize,
    pub tolerance_kg: f64,
}

/// One row of the built-in environment table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvironmentEntry {
    pub body: String,
    pub phase: String,
    pub gravity_m_s2: f64,
    pub ambient_temperature_k: f64,
    pub dose_rate_rad_yr: f64,
    pub soil: Soil,
}

impl EnvironmentEntry {
    pub fn environment(&self) -> Environment {
        Environment {
            gravity_m_s2: self.gravity_m_s2,
            ambient_temperature_k: self.ambient_temperature_k,
            dose_rate_rad_yr: self.dose_rate_rad_yr,
            soil: self.soil,
        }
    }
}

#[derive(Debug, Error)]
pub enum ParamsError {
    #[error("cannot read parameter file: {0}")]
    Io(#[from] std::io::Error),
    #[error("parameter file: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("parameter {field}: {message}")]
    Invalid { field: &'static str, message: String },
}

impl Default for ModelParams {
    fn default() -> Self {
        toml::from_str(DEFAULT_MODEL_PARAMS).expect("embedded parameter file must parse")
    }
}

impl ModelParams {
    pub fn load(path: &Path) -> Result<ModelParams, ParamsError> {
        let text = std::fs::read_to_string(path)?;
        let params: ModelParams = toml::from_str(&text)?;
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), ParamsError> {
        fn positive(value: f64, field: &'static str) -> Result<(), ParamsError> {
            if value > 0.0 {
                Ok(())
            } else {
                Err(ParamsError::Invalid {
                    field,
                    message: format!("must be positive, got {value}"),
                })
            }
        }
        fn fraction(value: f64, field: &'static str) -> Result<(), ParamsError> {
            if value > 0.0 && value <= 1.0 {
                Ok(())
            } else {
                Err(ParamsError::Invalid {
                    field,
                    message: format!("must lie in (0, 1], got {value}"),
                })
            }
        }
        positive(self.propulsion.isp_hydrolox_s, "propulsion.isp_hydrolox_s")?;
        positive(self.propulsion.isp_rp1_peroxide_s, "propulsion.isp_rp1_peroxide_s")?;
        positive(self.propulsion.isp_steam_s, "propulsion.isp_steam_s")?;
        positive(self.propulsion.hop_range_min_m, "propulsion.hop_range_min_m")?;
        if self.propulsion.hop_range_max_m <= self.propulsion.hop_range_min_m {
            return Err(ParamsError::Invalid {
                field: "propulsion.hop_range_max_m",
                message: "must exceed hop_range_min_m".into(),
            });
        }
        positive(self.propulsion.burn_time_s, "propulsion.burn_time_s")?;
        fraction(self.power.battery_depth_of_discharge, "power.battery_depth_of_discharge")?;
        fraction(self.power.fuel_cell_reactant_utilization, "power.fuel_cell_reactant_utilization")?;
        fraction(self.power.conditioning_efficiency, "power.conditioning_efficiency")?;
        fraction(self.thermal.emissivity, "thermal.emissivity")?;
        fraction(self.thermal.waste_heat_fraction, "thermal.waste_heat_fraction")?;
        if self.thermal.set_point_high_k <= self.thermal.set_point_low_k {
            return Err(ParamsError::Invalid {
                field: "thermal.set_point_high_k",
                message: "must exceed set_point_low_k".into(),
            });
        }
        positive(self.shielding.attenuation_length_m, "shielding.attenuation_length_m")?;
        positive(self.shielding.dose_limit_rad, "shielding.dose_limit_rad")?;
        fraction(self.shell.packing_fraction, "shell.packing_fraction")?;
        fraction(self.coupling.damping, "coupling.damping")?;
        positive(self.coupling.tolerance_kg, "coupling.tolerance_kg")?;
        if self.coupling.max_iterations == 0 {
            return Err(ParamsError::Invalid {
                field: "coupling.max_iterations",
                message: "must be positive".into(),
            });
        }
        fraction(self.comm.duty_cycle, "comm.duty_cycle")?;
        fraction(self.comm.rf_efficiency, "comm.rf_efficiency")?;
        Ok(())
    }

    pub fn isp_s(&self, propellant: super::Propellant) -> f64 {
        match propellant {
            super::Propellant::Hydrolox => self.propulsion.isp_hydrolox_s,
            super::Propellant::Rp1Peroxide => self.propulsion.isp_rp1_peroxide_s,
            super::Propellant::Steam => self.propulsion.isp_steam_s,
        }
    }

    pub fn propellant_density_kg_m3(&self, propellant: super::Propellant) -> f64 {
        match propellant {
            super::Propellant::Hydrolox => self.propulsion.density_hydrolox_kg_m3,
            super::Propellant::Rp1Peroxide => self.propulsion.density_rp1_peroxide_kg_m3,
            super::Propellant::Steam => self.propulsion.density_steam_kg_m3,
        }
    }

    pub fn tank_mass_frac(&self, propellant: super::Propellant) -> f64 {
        match propellant {
            super::Propellant::Hydrolox => self.propulsion.tank_mass_frac_hydrolox,
            super::Propellant::Rp1Peroxide => self.propulsion.tank_mass_frac_rp1_peroxide,
            super::Propellant::Steam => self.propulsion.tank_mass_frac_steam,
        }
    }

    pub fn preheat_wh_per_kg(&self, propellant: super::Propellant) -> f64 {
        match propellant {
            super::Propellant::Hydrolox => self.propulsion.preheat_wh_per_kg_hydrolox,
            super::Propellant::Rp1Peroxide => self.propulsion.preheat_wh_per_kg_rp1_peroxide,
            super::Propellant::Steam => self.propulsion.preheat_wh_per_kg_steam,
        }
    }

    pub fn standby_power_w(&self, propellant: super::Propellant) -> f64 {
        match propellant {
            super::Propellant::Hydrolox => self.propulsion.standby_power_w_hydrolox,
            super::Propellant::Rp1Peroxide => self.propulsion.standby_power_w_rp1_peroxide,
            super::Propellant::Steam => self.propulsion.standby_power_w_steam,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_file_parses_and_validates() {
        let params = ModelParams::default();
        params.validate().unwrap();
        assert_eq!(params.environment.len(), 4);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = DEFAULT_MODEL_PARAMS.replace("emissivity", "emisivity");
        let err = toml::from_str::<ModelParams>(&text).unwrap_err();
        assert!(err.to_string().contains("emisivity"));
    }

    #[test]
    fn steam_is_the_weakest_propellant_in_the_table() {
        let params = ModelParams::default();
        assert!(params.propulsion.isp_steam_s < params.propulsion.isp_rp1_peroxide_s);
        assert!(params.propulsion.isp_rp1_peroxide_s < params.propulsion.isp_hydrolox_s);
    }
}
