//! Full-system evaluation: runs all seven disciplines with the
//! power/thermal coupling iterated to a fixed point, then assembles
//! objectives F1-F4 and the penalty violation from constraints G1-G5 plus
//! any user spec constraints.

use crate::cots::{CategorySpecs, Inventory};
use crate::disciplines::{
    assembly_index, avionics_select, comm_design, mobility_design, power_design, shell_design,
    shielding_design, thermal_design, AvionicsSelection, DisciplineBudget, Environment,
    MissionSpec, MobilityConfig, ModelParams, PowerType, Soil, SubsystemBudgets,
};
use crate::nsga2::{self, DesignVector, EvaluationError, Problem};

use super::{
    decode, design_template, normalize, ExtraConstraints, ObjectiveWeights, SystemBounds,
    SystemConfig,
};

/// Payload allowances left after the subsystems take their share.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PayloadBudget {
    pub mass_kg: f64,
    pub volume_m3: f64,
    pub power_w: f64,
}

/// Payload shares of the robot's totals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PayloadRatios {
    pub mass: f64,
    pub volume: f64,
    pub power: f64,
}

/// Everything one evaluation produces.
#[derive(Debug, Clone)]
pub struct EvaluationRecord {
    pub config: SystemConfig,
    pub budgets: SubsystemBudgets,
    pub payload: PayloadBudget,
    pub ratios: PayloadRatios,
    pub objectives: [f64; 4],
    pub violation: f64,
    pub assembly_index: u8,
    pub antenna_freq_mhz: f64,
    /// Iterations the power/thermal fixed point took.
    pub coupling_iterations: usize,
    /// Final change of the total-mass iterate, kg.
    pub coupling_residual_kg: f64,
}

pub struct SizingInputs<'a> {
    pub mission: &'a MissionSpec,
    pub mobility: MobilityConfig,
    pub power_type: PowerType,
    pub avionics: &'a AvionicsSelection,
    pub mass_kg: f64,
    pub radius_m: f64,
    /// Payload power that must be carried by the power system (used by the
    /// comparative study; zero in the system MOOP where payload power is a
    /// reserve, not a demand).
    pub extra_delivered_w: f64,
    pub params: &'a ModelParams,
}

pub struct SizingOutcome {
    pub budgets: SubsystemBudgets,
    pub coupling_iterations: usize,
    pub coupling_residual_kg: f64,
}

/// Time-weighted mean environment used for shield sizing, equivalent to the
/// summed per-phase dose.
fn dose_equivalent_environment(mission: &MissionSpec) -> Environment {
    let total_hr = mission.total_duration_hr();
    let weighted_dose: f64 = mission
        .phases
        .iter()
        .map(|p| p.environment.dose_rate_rad_yr * p.duration_hr)
        .sum();
    Environment {
        gravity_m_s2: mission.phases[0].environment.gravity_m_s2,
        ambient_temperature_k: mission.phases[0].environment.ambient_temperature_k,
        dose_rate_rad_yr: weighted_dose / total_hr,
        soil: Soil {
            cohesion_pa: 0.0,
            friction_angle_deg: 0.0,
            sinkage_exponent: 0.0,
        },
    }
}

/// Runs the seven disciplines for one configuration. The power demand,
/// power-system mass and heater loop of the design structure is iterated by
/// damped successive substitution on the dissipated-heat estimate until the
/// total-mass iterate settles.
pub fn size_subsystems(inputs: &SizingInputs<'_>) -> SizingOutcome {
    let params = inputs.params;
    let mission = inputs.mission;
    let avionics = inputs.avionics;

    // stack draw: the transceiver's transmit power is duty-cycled inside the
    // comm budget, so it is removed from the always-on stack here
    let stack_power_w = avionics.budget.power_w - avionics.transceiver.power_w;
    let avionics_budget = DisciplineBudget {
        power_w: stack_power_w,
        ..avionics.budget.clone()
    };

    let comm = comm_design(
        mission.robot_count,
        mission.max_range_m(),
        &avionics.transceiver,
        inputs.radius_m,
        params,
    );
    let shell = shell_design(inputs.radius_m, params).budget;
    let shielding = shielding_design(
        &dose_equivalent_environment(mission),
        mission.total_duration_hr(),
        params.shielding.dose_limit_rad,
        inputs.radius_m,
        params,
    );
    let mobility = mobility_design(
        &inputs.mobility,
        mission,
        inputs.mass_kg,
        inputs.radius_m,
        params,
    );
    let mobility_energy_wh = mobility.coupling("energy_wh").unwrap_or(0.0);

    // electrical loads that run continuously, before heaters
    let base_delivered_w =
        stack_power_w + comm.power_w + mobility.power_w + inputs.extra_delivered_w;
    let eta = params.power.conditioning_efficiency;
    let waste = params.thermal.waste_heat_fraction;

    let mut dissipated_w = waste * base_delivered_w;
    let mut thermal = DisciplineBudget::zero();
    let mut power = DisciplineBudget::zero();
    let mut previous_total = f64::INFINITY;
    let mut iterations = 0;
    let mut residual = f64::INFINITY;

    for iter in 0..params.coupling.max_iterations {
        iterations = iter + 1;

        // thermal control per phase at the current dissipation estimate
        let mut merged: Option<DisciplineBudget> = None;
        let mut heater_energy_wh = 0.0;
        let mut heater_peak_w: f64 = 0.0;
        for phase in &mission.phases {
            let budget = thermal_design(&phase.environment, dissipated_w, inputs.radius_m, params);
            let heater = budget.coupling("heater_w").unwrap_or(0.0);
            heater_energy_wh += heater * phase.duration_hr;
            heater_peak_w = heater_peak_w.max(heater);
            merged = Some(match merged {
                None => budget,
                Some(acc) => acc.worst_case(&budget),
            });
        }
        thermal = merged.expect("mission has phases");

        let delivered_peak_w = base_delivered_w + heater_peak_w;
        let raw_energy_wh = (base_delivered_w * mission.total_duration_hr()
            + heater_energy_wh
            + mobility_energy_wh)
            / eta;
        power = power_design(inputs.power_type, raw_energy_wh, delivered_peak_w, params);

        // conversion losses and electronics waste both end up as heat
        let conversion_loss_w = power.power_w;
        let next_dissipated = waste * base_delivered_w + conversion_loss_w;
        dissipated_w = dissipated_w
            + params.coupling.damping * (next_dissipated - dissipated_w);

        let total = avionics_budget.mass_kg
            + comm.mass_kg
            + shell.mass_kg
            + shielding.mass_kg
            + mobility.mass_kg
            + thermal.mass_kg
            + power.mass_kg;
        residual = (total - previous_total).abs();
        previous_total = total;
        if residual < params.coupling.tolerance_kg {
            break;
        }
    }

    SizingOutcome {
        budgets: SubsystemBudgets {
            mobility,
            power,
            thermal,
            shielding,
            comm,
            avionics: avionics_budget,
            shell,
        },
        coupling_iterations: iterations,
        coupling_residual_kg: residual,
    }
}

/// Evaluates one in-bounds design vector into a full record.
pub fn evaluate(
    x: &[f64],
    mission: &MissionSpec,
    inventory: &Inventory,
    bounds: &SystemBounds,
    weights: &ObjectiveWeights,
    extra: &ExtraConstraints,
    params: &ModelParams,
) -> Result<EvaluationRecord, EvaluationError> {
    let config = decode(x).map_err(|e| EvaluationError(e.to_string()))?;
    let avionics = avionics_select(&config.cots, inventory)
        .map_err(|e| EvaluationError(format!("avionics lookup: {e}")))?;

    let sizing = size_subsystems(&SizingInputs {
        mission,
        mobility: config.mobility,
        power_type: config.power_type,
        avionics: &avionics,
        mass_kg: config.mass_kg,
        radius_m: config.radius_m,
        extra_delivered_w: 0.0,
        params,
    });
    let budgets = sizing.budgets;

    let enclosed_volume = 4.0 / 3.0 * std::f64::consts::PI * config.radius_m.powi(3);
    let payload = PayloadBudget {
        mass_kg: config.mass_kg - budgets.total_mass_kg(),
        volume_m3: enclosed_volume - budgets.total_volume_m3(),
        power_w: config.power_w - budgets.total_power_w(),
    };
    let ratios = PayloadRatios {
        mass: payload.mass_kg / config.mass_kg,
        volume: payload.volume_m3 / enclosed_volume,
        power: payload.power_w / config.power_w,
    };

    let (m_norm, r_norm, p_norm) =
        normalize(config.mass_kg, config.radius_m, config.power_w, bounds)
            .map_err(|e| EvaluationError(e.to_string()))?;
    let objectives = [
        weights.alpha1 * m_norm + weights.alpha2 * r_norm,
        1.0 - (weights.alpha3 * ratios.mass + weights.alpha4 * ratios.volume),
        p_norm,
        1.0 - ratios.power,
    ];

    let index = assembly_index(
        &budgets,
        config.mass_kg,
        config.radius_m,
        config.power_w,
        params.shell.packing_fraction,
    );

    // constraint rows in "g <= 0 feasible" form
    let mut g = vec![-ratios.mass, -ratios.volume, -ratios.power];
    g.push(1.0 - index as f64);

    let antenna_freq_mhz = budgets
        .comm
        .coupling("antenna_freq_mhz")
        .unwrap_or(f64::INFINITY);
    let CategorySpecs::Transceiver {
        freq_low_mhz,
        freq_high_mhz,
        bandwidth_mhz,
    } = avionics.transceiver.specs
    else {
        unreachable!("transceiver category enforced at load")
    };
    let centre = 0.5 * (freq_low_mhz + freq_high_mhz);
    g.push((freq_low_mhz + bandwidth_mhz / 2.0 - antenna_freq_mhz) / centre);
    g.push((antenna_freq_mhz - (freq_high_mhz - bandwidth_mhz / 2.0)) / centre);

    if let Some(min_clock) = extra.min_clock_mhz {
        g.push((min_clock - avionics.computer_clock_mhz) / min_clock.max(1.0));
    }
    if let Some(min_storage) = extra.min_storage_gb {
        g.push((min_storage - avionics.computer_storage_gb) / min_storage.max(1.0));
    }
    if let Some(min_capacity) = extra.min_battery_capacity_wh {
        g.push((min_capacity - avionics.battery_capacity_wh) / min_capacity.max(1.0));
    }

    let violation = nsga2::violation_total(&g, &[]);

    Ok(EvaluationRecord {
        config,
        budgets,
        payload,
        ratios,
        objectives,
        violation,
        assembly_index: index,
        antenna_freq_mhz,
        coupling_iterations: sizing.coupling_iterations,
        coupling_residual_kg: sizing.coupling_residual_kg,
    })
}

/// The system MOOP wired up as a [`Problem`] for the genetic engine.
pub struct SystemProblem {
    pub mission: MissionSpec,
    pub inventory: Inventory,
    pub bounds: SystemBounds,
    pub weights: ObjectiveWeights,
    pub extra: ExtraConstraints,
    pub params: ModelParams,
}

impl SystemProblem {
    pub fn record(&self, x: &[f64]) -> Result<EvaluationRecord, EvaluationError> {
        evaluate(
            x,
            &self.mission,
            &self.inventory,
            &self.bounds,
            &self.weights,
            &self.extra,
            &self.params,
        )
    }
}

impl Problem for SystemProblem {
    fn template(&self) -> DesignVector {
        design_template(&self.bounds, &self.inventory)
    }

    fn num_objectives(&self) -> usize {
        4
    }

    fn evaluate(&self, x: &DesignVector) -> Result<(Vec<f64>, f64), EvaluationError> {
        let record = self.record(&x.values)?;
        Ok((record.objectives.to_vec(), record.violation))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disciplines::{HopSubtype, MobilityMode, Phase, Propellant};
    use crate::sysopt::{encode, init_population};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn moon_mission() -> MissionSpec {
        let params = ModelParams::default();
        let env = crate::disciplines::environment_lookup(&params, "moon", "surface").unwrap();
        MissionSpec {
            phases: vec![Phase {
                distance_m: 1000.0,
                duration_hr: 5.0,
                environment: env,
            }],
            robot_count: 1,
        }
    }

    fn reference_config() -> SystemConfig {
        SystemConfig {
            mass_kg: 5.0,
            radius_m: 0.16,
            power_w: 30.0,
            mobility: MobilityConfig {
                mode: MobilityMode::Hopping,
                hop_subtype: HopSubtype::Propulsive,
                propellant: Propellant::Rp1Peroxide,
            },
            power_type: PowerType::Battery,
            cots: crate::disciplines::AvionicsIds {
                computer: 2,
                power_board: 2,
                battery: 2,
                transceiver: 2,
                attitude_board: 2,
            },
        }
    }

    fn problem() -> SystemProblem {
        SystemProblem {
            mission: moon_mission(),
            inventory: Inventory::embedded_default(),
            bounds: SystemBounds::default(),
            weights: ObjectiveWeights::default(),
            extra: ExtraConstraints::default(),
            params: ModelParams::default(),
        }
    }

    #[test]
    fn f1_is_the_weighted_normalized_size() {
        let p = problem();
        let mut config = reference_config();
        // m_norm = 0.2, r_norm = 0.4 under the default bounds
        config.mass_kg = 1.0 + 0.2 * 19.0;
        config.radius_m = 0.05 + 0.4 * 0.25;
        let record = p.record(&encode(&config)).unwrap();
        assert!((record.objectives[0] - 0.3).abs() < 1e-12);
    }

    #[test]
    fn payload_identities_hold_exactly_on_random_configs() {
        let p = problem();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let population = init_population(100, &p.bounds, &p.inventory, &mut rng);
        let machine = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0);
        for x in &population {
            let record = p.record(&x.values).unwrap();
            let enclosed = 4.0 / 3.0 * std::f64::consts::PI * record.config.radius_m.powi(3);
            assert!(machine(
                record.payload.mass_kg + record.budgets.total_mass_kg(),
                record.config.mass_kg
            ));
            assert!(machine(
                record.payload.volume_m3 + record.budgets.total_volume_m3(),
                enclosed
            ));
            assert!(machine(
                record.payload.power_w + record.budgets.total_power_w(),
                record.config.power_w
            ));
        }
    }

    #[test]
    fn oversubscribed_mass_is_an_infeasible_record() {
        let p = problem();
        let mut config = reference_config();
        config.mass_kg = 1.0; // subsystems alone exceed one kilogram
        let record = p.record(&encode(&config)).unwrap();
        assert!(record.payload.mass_kg < 0.0);
        assert!(record.violation > 0.0);
        let penalized = nsga2::penalize(&record.objectives, record.violation, 1e6);
        for (j, f) in penalized.iter().zip(&record.objectives) {
            assert!(j > f);
        }
    }

    #[test]
    fn feasible_reference_config_exists_and_couples_tightly() {
        let p = problem();
        let record = p.record(&encode(&reference_config())).unwrap();
        assert_eq!(record.violation, 0.0, "reference config should be feasible: {record:?}");
        assert_eq!(record.assembly_index, 1);
        assert!(record.coupling_residual_kg < p.params.coupling.tolerance_kg);
        for f in record.objectives {
            assert!((0.0..=1.0).contains(&f), "objective {f} out of unit range");
        }
    }

    #[test]
    fn coupling_fixed_point_converges_on_random_configs() {
        let p = problem();
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for x in init_population(100, &p.bounds, &p.inventory, &mut rng) {
            let record = p.record(&x.values).unwrap();
            assert!(
                record.coupling_residual_kg < 1e-6,
                "coupling residual {} for {:?}",
                record.coupling_residual_kg,
                record.config
            );
        }
    }

    #[test]
    fn detuned_antenna_violates_the_bandwidth_constraint() {
        let p = problem();
        let mut config = reference_config();
        config.radius_m = 0.05; // too small to stow a UHF quarter-wave whip
        config.cots.transceiver = 2; // 400-450 MHz band
        let record = p.record(&encode(&config)).unwrap();
        assert!(!crate::cots::bandwidth_check(
            p.inventory.get(crate::cots::Category::Transceiver, 2).unwrap(),
            record.antenna_freq_mhz
        ));
        assert!(record.violation > 0.0);
    }

    #[test]
    fn spec_constraints_cut_weak_computers() {
        let mut p = problem();
        p.extra.min_clock_mhz = Some(100.0);
        let mut config = reference_config();
        config.cots.computer = 1; // 48 MHz
        let record = p.record(&encode(&config)).unwrap();
        assert!(record.violation > 0.0);
        config.cots.computer = 5; // 250 MHz
        let record = p.record(&encode(&config)).unwrap();
        assert_eq!(record.violation, 0.0);
    }
}
