//! Thermal control sizing from the radiative balance of the spherical shell.

use super::{DisciplineBudget, Environment, ModelParams};

/// Stefan-Boltzmann constant, W m^-2 K^-4.
pub const STEFAN_BOLTZMANN: f64 = 5.670374419e-8;

/// Equilibrium shell temperature solving
/// `eps * sigma * A * (T^4 - Ta^4) = dissipated` for T.
pub fn equilibrium_temperature_k(
    env: &Environment,
    dissipated_w: f64,
    area_m2: f64,
    emissivity: f64,
) -> f64 {
    let ta4 = env.ambient_temperature_k.powi(4);
    (ta4 + dissipated_w / (emissivity * STEFAN_BOLTZMANN * area_m2)).powf(0.25)
}

/// Sizes heaters (cold case) or radiator area (hot case) to keep the shell
/// interior inside the operating band, for one environment.
///
/// Couplings: `heater_w` (added electrical demand), `equilibrium_k`,
/// `radiator_m2`.
pub fn thermal_design(
    env: &Environment,
    dissipated_w: f64,
    radius_m: f64,
    params: &ModelParams,
) -> DisciplineBudget {
    debug_assert!(dissipated_w >= 0.0 && radius_m > 0.0);
    let t = &params.thermal;
    let area = 4.0 * std::f64::consts::PI * radius_m * radius_m;
    let conductance = t.emissivity * STEFAN_BOLTZMANN * area; // W/K^4
    let ta4 = env.ambient_temperature_k.powi(4);

    if env.ambient_temperature_k >= t.set_point_high_k {
        return DisciplineBudget::infeasible(format!(
            "ambient {:.0} K exceeds the upper operating set point {:.0} K",
            env.ambient_temperature_k, t.set_point_high_k
        ));
    }

    // cold case: hold the lower set point with heater power
    let heater_w = (conductance * (t.set_point_low_k.powi(4) - ta4) - dissipated_w).max(0.0);

    // hot case: shed dissipation at the upper set point with extra radiator
    let shed_capacity_w = conductance * (t.set_point_high_k.powi(4) - ta4);
    let radiator_m2 = if dissipated_w > shed_capacity_w {
        dissipated_w / (t.emissivity * STEFAN_BOLTZMANN * (t.set_point_high_k.powi(4) - ta4))
            - area
    } else {
        0.0
    };

    let equilibrium = equilibrium_temperature_k(env, dissipated_w, area, t.emissivity);

    let mut budget = DisciplineBudget::zero();
    budget.mass_kg = t.insulation_areal_mass_kg_m2 * area
        + t.radiator_areal_mass_kg_m2 * radiator_m2
        + t.heater_unit_mass_kg;
    budget.volume_m3 = t.radiator_areal_volume_m3_m2 * radiator_m2;
    budget.power_w = heater_w;
    budget
        .with_coupling("heater_w", heater_w)
        .with_coupling("equilibrium_k", equilibrium)
        .with_coupling("radiator_m2", radiator_m2)
}
