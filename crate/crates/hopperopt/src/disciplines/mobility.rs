//! Mobility sizing: propulsive hopping (rocket-equation based, hop range
//! chosen by an SQP subproblem), spring and reaction-wheel hopping, and
//! rolling/wheeled drive models.

use crate::sqp::{solve, Bounded, FnNlp, Nlp, SolveOptions};

use super::{
    DisciplineBudget, HopSubtype, MissionSpec, MobilityConfig, MobilityMode, ModelParams,
    Propellant,
};

/// Standard gravity used by the rocket equation, m/s^2.
pub const STANDARD_GRAVITY_M_S2: f64 = 9.80665;

/// Delta-v for one ballistic 45-degree hop of the given range: a launch
/// burn plus an equal-magnitude landing burn, `2 * sqrt(g * range)`.
pub fn hop_delta_v(gravity_m_s2: f64, hop_range_m: f64) -> f64 {
    debug_assert!(gravity_m_s2 > 0.0 && hop_range_m > 0.0);
    2.0 * (gravity_m_s2 * hop_range_m).sqrt()
}

/// Propellant mass consumed from `wet_mass` for a total delta-v at the
/// given specific impulse: `wet * (1 - exp(-dv / (isp * g0)))`.
pub fn propellant_mass(wet_mass_kg: f64, delta_v_m_s: f64, isp_s: f64) -> f64 {
    debug_assert!(wet_mass_kg > 0.0 && isp_s > 0.0 && delta_v_m_s >= 0.0);
    wet_mass_kg * (1.0 - (-delta_v_m_s / (isp_s * STANDARD_GRAVITY_M_S2)).exp())
}

/// Flight time of one 45-degree hop of range `d` under gravity `g`.
fn hop_flight_time_s(gravity_m_s2: f64, hop_range_m: f64) -> f64 {
    (2.0 * hop_range_m / gravity_m_s2).sqrt()
}

/// Propulsive sizing at a given hop range: masses, tank volume, energy.
struct PropulsiveSizing {
    propellant_kg: f64,
    tank_kg: f64,
    thruster_kg: f64,
    tank_volume_m3: f64,
    thruster_volume_m3: f64,
    energy_wh: f64,
    delta_v_m_s: f64,
    flight_duty: f64,
}

fn propulsive_sizing(
    hop_range_m: f64,
    propellant: Propellant,
    mission: &MissionSpec,
    wet_mass_kg: f64,
    params: &ModelParams,
) -> PropulsiveSizing {
    let p = &params.propulsion;
    let isp = params.isp_s(propellant);

    let mut delta_v = 0.0;
    let mut energy_j = 0.0;
    let mut flight_time_s = 0.0;
    let mut g_max: f64 = 0.0;
    for phase in &mission.phases {
        let g = phase.environment.gravity_m_s2;
        g_max = g_max.max(g);
        let hops = phase.distance_m / hop_range_m;
        delta_v += hops * hop_delta_v(g, hop_range_m);
        let t_flight = hop_flight_time_s(g, hop_range_m);
        energy_j += hops * (p.ignition_energy_j + p.flight_power_w * t_flight);
        flight_time_s += hops * t_flight;
    }

    let propellant_kg = propellant_mass(wet_mass_kg, delta_v, isp);
    let tank_kg = params.tank_mass_frac(propellant) * propellant_kg;
    let tank_volume_m3 =
        propellant_kg / params.propellant_density_kg_m3(propellant) * p.tank_ullage_factor;
    energy_j += params.preheat_wh_per_kg(propellant) * propellant_kg * 3600.0;
    // thruster sized by the launch-burn impulse of the largest hop
    let thrust_n = wet_mass_kg * (g_max * hop_range_m).sqrt() / p.burn_time_s;
    let thruster_kg = (p.thruster_mass_per_newton_kg * thrust_n).max(p.thruster_floor_mass_kg);
    let thruster_volume_m3 = thruster_kg / p.thruster_density_kg_m3;
    let total_time_s = mission.total_duration_hr() * 3600.0;

    PropulsiveSizing {
        propellant_kg,
        tank_kg,
        thruster_kg,
        tank_volume_m3,
        thruster_volume_m3,
        energy_wh: energy_j / 3600.0,
        delta_v_m_s: delta_v,
        flight_duty: (flight_time_s / total_time_s).min(1.0),
    }
}

/// Mission time spent by phase `phase` at hop range `d`, seconds.
fn phase_time_s(phase: &super::Phase, hop_range_m: f64, settle_s: f64) -> f64 {
    let hops = phase.distance_m / hop_range_m;
    hops * (hop_flight_time_s(phase.environment.gravity_m_s2, hop_range_m) + settle_s)
}

fn propulsive_design(
    propellant: Propellant,
    mission: &MissionSpec,
    wet_mass_kg: f64,
    params: &ModelParams,
) -> DisciplineBudget {
    let p = &params.propulsion;
    let (d_lo, d_hi) = (p.hop_range_min_m, p.hop_range_max_m);

    // phase time falls monotonically with hop range, so the largest range
    // is the fastest; if even that misses a window the mission is lost
    for (i, phase) in mission.phases.iter().enumerate() {
        if phase_time_s(phase, d_hi, p.hop_settle_time_s) > phase.duration_hr * 3600.0 {
            return DisciplineBudget::infeasible(format!(
                "phase {i}: cannot cover {:.0} m within {:.2} h at max hop range",
                phase.distance_m, phase.duration_hr
            ));
        }
    }

    // hop-range selection: minimize propellant + tank + thruster mass
    // subject to per-phase time windows, solved as a bounded 1-D NLP
    let objective = {
        let mission = mission.clone();
        move |d: &[f64]| {
            let s = propulsive_sizing(d[0].max(1e-6), propellant, &mission, wet_mass_kg, params);
            s.propellant_kg + s.tank_kg + s.thruster_kg
        }
    };
    let time_rows = {
        let mission = mission.clone();
        let settle = p.hop_settle_time_s;
        // expressed in hours to keep the QP rows on the objective's scale
        move |d: &[f64]| {
            mission
                .phases
                .iter()
                .map(|phase| {
                    phase_time_s(phase, d[0].max(1e-6), settle) / 3600.0 - phase.duration_hr
                })
                .collect::<Vec<f64>>()
        }
    };
    let nlp = Bounded {
        inner: FnNlp {
            dimension: 1,
            objective,
            inequality: time_rows,
            equality: |_: &[f64]| Vec::new(),
        },
        lower: vec![d_lo],
        upper: vec![d_hi],
    };

    // the mass trade is unimodal over the admissible range, so one start at
    // the log midpoint almost always lands; spread starts are the fallback
    let options = SolveOptions {
        tolerance: 1e-8,
        max_iterations: 60,
        ..SolveOptions::default()
    };
    let mut best: Option<(f64, f64)> = None;
    for frac in [0.5, 0.15, 0.85] {
        let d0 = d_lo * (d_hi / d_lo).powf(frac);
        if let Ok(report) = solve(&nlp, &[d0], &options) {
            let d = report.solution.d[0].clamp(d_lo, d_hi);
            let feasible = nlp.inequality(&[d]).iter().all(|&g| g <= 1e-6);
            if report.converged && feasible {
                let value = nlp.objective(&[d]);
                if best.is_none_or(|(v, _)| value < v) {
                    best = Some((value, d));
                }
                break;
            }
        }
    }
    let Some((_, hop_range)) = best else {
        return DisciplineBudget::infeasible("hop range sizing did not converge");
    };

    let sizing = propulsive_sizing(hop_range, propellant, mission, wet_mass_kg, params);
    let mut budget = DisciplineBudget::zero();
    budget.mass_kg = sizing.propellant_kg + sizing.tank_kg + sizing.thruster_kg;
    budget.volume_m3 = sizing.tank_volume_m3 + sizing.thruster_volume_m3;
    // valve/ignition draws are impulsive and ride the storage peak margin,
    // so they are charged through the energy coupling; the continuous draw
    // is the propellant-conditioning standby load
    budget.power_w = params.standby_power_w(propellant);
    budget
        .with_coupling("energy_wh", sizing.energy_wh)
        .with_coupling("hop_range_m", hop_range)
        .with_coupling("delta_v_m_s", sizing.delta_v_m_s)
        .with_coupling("propellant_kg", sizing.propellant_kg)
        .with_coupling("flight_duty", sizing.flight_duty)
}

/// Stored-energy hopping (spring or reaction wheel): fixed hop range, a
/// rewound actuator, battery energy per hop.
fn stored_energy_hop_design(
    subtype: HopSubtype,
    mission: &MissionSpec,
    wet_mass_kg: f64,
    params: &ModelParams,
) -> DisciplineBudget {
    let m = &params.mechanism;
    let (hop_range, cycle_s, efficiency, base_kg, kg_per_joule, label) = match subtype {
        HopSubtype::Mechanical => (
            m.mech_hop_range_m,
            m.mech_cycle_time_s,
            m.mech_efficiency,
            m.mech_base_mass_kg,
            m.mech_mass_per_joule_kg,
            "mechanical",
        ),
        HopSubtype::ReactionWheel => (
            m.rw_hop_range_m,
            m.rw_cycle_time_s,
            m.rw_efficiency,
            m.rw_base_mass_kg,
            m.rw_mass_per_joule_kg,
            "reaction wheel",
        ),
        HopSubtype::Propulsive => unreachable!("propulsive handled separately"),
    };

    let mut energy_j = 0.0;
    let mut hop_energy_max_j: f64 = 0.0;
    for (i, phase) in mission.phases.iter().enumerate() {
        let g = phase.environment.gravity_m_s2;
        let hops = phase.distance_m / hop_range;
        let time_s = hops * (hop_flight_time_s(g, hop_range) + cycle_s);
        if time_s > phase.duration_hr * 3600.0 {
            return DisciplineBudget::infeasible(format!(
                "phase {i}: {label} hopping too slow ({:.0} s needed, {:.0} s available)",
                time_s,
                phase.duration_hr * 3600.0
            ));
        }
        // kinetic energy of a 45-degree hop of this range
        let hop_energy = 0.5 * wet_mass_kg * g * hop_range / efficiency;
        hop_energy_max_j = hop_energy_max_j.max(hop_energy);
        energy_j += hops * hop_energy;
    }

    let actuator_kg = base_kg + kg_per_joule * hop_energy_max_j;
    let mut budget = DisciplineBudget::zero();
    budget.mass_kg = actuator_kg;
    budget.volume_m3 = actuator_kg / 1500.0;
    budget.power_w = hop_energy_max_j / cycle_s.max(1.0);
    budget
        .with_coupling("energy_wh", energy_j / 3600.0)
        .with_coupling("hop_range_m", hop_range)
}

/// Surface drive (rolling shell or wheels): speed-limited on loose soil,
/// rolling-resistance energy model scaled by the soil sinkage exponent.
fn drive_design(
    mode: MobilityMode,
    mission: &MissionSpec,
    wet_mass_kg: f64,
    params: &ModelParams,
) -> DisciplineBudget {
    let m = &params.mechanism;
    let (speed, base_kg, mass_frac, resist, efficiency, label) = match mode {
        MobilityMode::Rolling => (
            m.rolling_speed_m_s,
            m.rolling_base_mass_kg,
            0.0,
            m.rolling_resistance_coeff,
            m.rolling_efficiency,
            "rolling",
        ),
        MobilityMode::Wheeled => (
            m.wheeled_speed_m_s,
            m.wheeled_base_mass_kg,
            m.wheeled_mass_frac,
            m.wheeled_resistance_coeff,
            m.wheeled_efficiency,
            "wheeled",
        ),
        MobilityMode::Hopping => unreachable!("hopping handled separately"),
    };

    let mut energy_j = 0.0;
    let mut drive_power_max: f64 = 0.0;
    for (i, phase) in mission.phases.iter().enumerate() {
        let time_s = phase.distance_m / speed;
        if time_s > phase.duration_hr * 3600.0 {
            return DisciplineBudget::infeasible(format!(
                "phase {i}: {label} drive too slow ({:.0} s needed, {:.0} s available)",
                time_s,
                phase.duration_hr * 3600.0
            ));
        }
        let g = phase.environment.gravity_m_s2;
        let sink = phase.environment.soil.sinkage_exponent;
        let force = resist * sink * wet_mass_kg * g;
        energy_j += force * phase.distance_m / efficiency;
        drive_power_max = drive_power_max.max(force * speed / efficiency);
    }

    let drive_kg = base_kg + mass_frac * wet_mass_kg;
    let mut budget = DisciplineBudget::zero();
    budget.mass_kg = drive_kg;
    budget.volume_m3 = drive_kg / 1200.0;
    budget.power_w = drive_power_max;
    budget.with_coupling("energy_wh", energy_j / 3600.0)
}

/// Sizes the mobility subsystem for a configuration: chooses the model by
/// mode/subtype, selects the hop range through the SQP subproblem for
/// propulsive hopping, and reports mass/volume/power plus energy demand.
/// Terrain or time shortfalls yield `feasible = false` with the reason.
pub fn mobility_design(
    config: &MobilityConfig,
    mission: &MissionSpec,
    wet_mass_kg: f64,
    radius_m: f64,
    params: &ModelParams,
) -> DisciplineBudget {
    debug_assert!(wet_mass_kg > 0.0 && radius_m > 0.0);
    if mission.total_distance_m() == 0.0 {
        return DisciplineBudget::zero().with_coupling("energy_wh", 0.0);
    }
    match (config.mode, config.hop_subtype) {
        (MobilityMode::Hopping, HopSubtype::Propulsive) => {
            propulsive_design(config.propellant, mission, wet_mass_kg, params)
        }
        (MobilityMode::Hopping, subtype) => {
            stored_energy_hop_design(subtype, mission, wet_mass_kg, params)
        }
        (mode, _) => drive_design(mode, mission, wet_mass_kg, params),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disciplines::{Environment, Phase, Soil};

    fn moon_soil() -> Soil {
        Soil {
            cohesion_pa: 170.0,
            friction_angle_deg: 35.0,
            sinkage_exponent: 1.0,
        }
    }

    fn moon_surface() -> Environment {
        Environment {
            gravity_m_s2: 1.62,
            ambient_temperature_k: 340.0,
            dose_rate_rad_yr: 100.0,
            soil: moon_soil(),
        }
    }

    fn mission(distance_m: f64, duration_hr: f64) -> MissionSpec {
        MissionSpec {
            phases: vec![Phase {
                distance_m,
                duration_hr,
                environment: moon_surface(),
            }],
            robot_count: 1,
        }
    }

    #[test]
    fn hop_delta_v_matches_calculator() {
        // 2 * sqrt(1.62 * 10) = 8.0498...
        assert!((hop_delta_v(1.62, 10.0) - 8.049844718999243).abs() < 1e-12);
    }

    #[test]
    fn hop_delta_v_limits_and_scaling() {
        assert!(hop_delta_v(1.62, 1e-12) < 1e-5);
        let d1 = hop_delta_v(1.62, 25.0);
        let d4 = hop_delta_v(1.62, 100.0);
        assert!((d4 / d1 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn propellant_mass_examples() {
        assert_eq!(propellant_mass(5.0, 0.0, 320.0), 0.0);
        // 5 * (1 - exp(-100 / (320 * 9.80665))) frozen from a high-precision
        // evaluation of the closed form
        let m = propellant_mass(5.0, 100.0, 320.0);
        assert!((m - 0.15681878434759).abs() < 1e-12, "got {m}");
    }

    #[test]
    fn propellant_mass_monotone_and_bounded() {
        let mut last = 0.0;
        for dv in [0.0, 10.0, 100.0, 1000.0, 10000.0, 1e6] {
            let m = propellant_mass(5.0, dv, 320.0);
            assert!(m >= last);
            // saturates at the wet mass in the extreme limit
            assert!(m <= 5.0);
            last = m;
        }
        assert!(propellant_mass(5.0, 1000.0, 320.0) < 5.0);
    }

    #[test]
    fn propulsive_budget_scales_with_distance() {
        let params = ModelParams::default();
        let config = MobilityConfig {
            mode: MobilityMode::Hopping,
            hop_subtype: HopSubtype::Propulsive,
            propellant: Propellant::Rp1Peroxide,
        };
        let short = mobility_design(&config, &mission(500.0, 5.0), 4.0, 0.15, &params);
        let long = mobility_design(&config, &mission(1000.0, 5.0), 4.0, 0.15, &params);
        assert!(short.feasible && long.feasible);
        assert!(long.mass_kg >= short.mass_kg, "{} < {}", long.mass_kg, short.mass_kg);
    }

    #[test]
    fn steam_carries_more_propellant_than_hydrolox() {
        let params = ModelParams::default();
        let base = MobilityConfig {
            mode: MobilityMode::Hopping,
            hop_subtype: HopSubtype::Propulsive,
            propellant: Propellant::Steam,
        };
        let steam = mobility_design(&base, &mission(1000.0, 5.0), 4.0, 0.15, &params);
        let hydro = mobility_design(
            &MobilityConfig {
                propellant: Propellant::Hydrolox,
                ..base
            },
            &mission(1000.0, 5.0),
            4.0,
            0.15,
            &params,
        );
        assert!(steam.feasible && hydro.feasible);
        assert!(
            steam.coupling("propellant_kg").unwrap() > hydro.coupling("propellant_kg").unwrap()
        );
    }

    #[test]
    fn zero_distance_mission_needs_no_propellant() {
        let params = ModelParams::default();
        let config = MobilityConfig {
            mode: MobilityMode::Hopping,
            hop_subtype: HopSubtype::Propulsive,
            propellant: Propellant::Rp1Peroxide,
        };
        let empty = MissionSpec {
            phases: vec![],
            robot_count: 1,
        };
        let budget = mobility_design(&config, &empty, 4.0, 0.15, &params);
        assert!(budget.feasible);
        assert_eq!(budget.mass_kg, 0.0);
        assert_eq!(budget.coupling("energy_wh"), Some(0.0));
    }

    #[test]
    fn impossible_time_budget_is_flagged_infeasible() {
        let params = ModelParams::default();
        let config = MobilityConfig {
            mode: MobilityMode::Hopping,
            hop_subtype: HopSubtype::Propulsive,
            propellant: Propellant::Rp1Peroxide,
        };
        // 100 km in six minutes is beyond any admissible hop range
        let budget = mobility_design(&config, &mission(100_000.0, 0.1), 4.0, 0.15, &params);
        assert!(!budget.feasible);
        assert!(budget.infeasible_reason.unwrap().contains("phase 0"));
    }

    #[test]
    fn slow_modes_time_out_on_the_long_surface_mission() {
        let params = ModelParams::default();
        let long = mission(1000.0, 5.0);
        for (mode, subtype) in [
            (MobilityMode::Hopping, HopSubtype::Mechanical),
            (MobilityMode::Hopping, HopSubtype::ReactionWheel),
            (MobilityMode::Rolling, HopSubtype::Propulsive),
        ] {
            let config = MobilityConfig {
                mode,
                hop_subtype: subtype,
                propellant: Propellant::Rp1Peroxide,
            };
            let budget = mobility_design(&config, &long, 4.0, 0.15, &params);
            assert!(!budget.feasible, "{mode:?}/{subtype:?} should be too slow");
        }
    }

    #[test]
    fn wheeled_is_feasible_but_heavier_than_propulsive_on_a_relaxed_run() {
        // 500 m in 5 h sits inside the wheeled speed envelope
        let params = ModelParams::default();
        let m = mission(500.0, 5.0);
        let wheeled = mobility_design(
            &MobilityConfig {
                mode: MobilityMode::Wheeled,
                hop_subtype: HopSubtype::Propulsive,
                propellant: Propellant::Rp1Peroxide,
            },
            &m,
            4.0,
            0.15,
            &params,
        );
        let propulsive = mobility_design(
            &MobilityConfig {
                mode: MobilityMode::Hopping,
                hop_subtype: HopSubtype::Propulsive,
                propellant: Propellant::Rp1Peroxide,
            },
            &m,
            4.0,
            0.15,
            &params,
        );
        assert!(wheeled.feasible && propulsive.feasible);
        assert!(wheeled.mass_kg > propulsive.mass_kg);
    }
}
