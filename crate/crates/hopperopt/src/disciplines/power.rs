//! Power system sizing: lithium-ion battery stack or fuel cell with
//! reactant storage.

use super::{DisciplineBudget, ModelParams, PowerType};

/// Sizes the energy storage for a mission. `energy_wh` is the raw energy
/// drawn from the bus (conversion losses already applied by the caller);
/// `peak_delivered_w` the load the conditioning chain must carry. The
/// returned `power_w` is the conversion overhead attributed to the power
/// system, so that summing every subsystem's draw gives the raw bus load.
///
/// Battery mass is linear in energy with a packaging floor; fuel-cell mass
/// is affine with the stack as intercept. Depth-of-discharge and reactant
/// utilization margins are applied here.
pub fn power_design(
    power_type: PowerType,
    energy_wh: f64,
    peak_delivered_w: f64,
    params: &ModelParams,
) -> DisciplineBudget {
    debug_assert!(energy_wh >= 0.0 && peak_delivered_w >= 0.0);
    let p = &params.power;
    let overhead_w = peak_delivered_w * (1.0 / p.conditioning_efficiency - 1.0);

    let mut budget = DisciplineBudget::zero();
    match power_type {
        PowerType::Battery => {
            let stored_wh = energy_wh / p.battery_depth_of_discharge;
            budget.mass_kg =
                stored_wh / p.battery_specific_energy_wh_per_kg + p.battery_packaging_mass_kg;
            budget.volume_m3 =
                (stored_wh / p.battery_energy_density_wh_per_l + p.battery_packaging_volume_l)
                    / 1000.0;
        }
        PowerType::FuelCell => {
            let reactant_wh = energy_wh / p.fuel_cell_reactant_utilization;
            budget.mass_kg = p.fuel_cell_stack_mass_kg
                + reactant_wh / p.fuel_cell_reactant_specific_energy_wh_per_kg;
            budget.volume_m3 = (p.fuel_cell_stack_volume_l
                + reactant_wh / p.fuel_cell_reactant_energy_density_wh_per_l)
                / 1000.0;
        }
    }
    budget.power_w = overhead_w;
    budget.with_coupling("energy_wh", energy_wh)
}

/// Energy at which battery and fuel-cell masses cross, from the two affine
/// mass models; above it the fuel cell is lighter.
pub fn storage_mass_crossover_wh(params: &ModelParams) -> f64 {
    let p = &params.power;
    let battery_slope = 1.0 / (p.battery_depth_of_discharge * p.battery_specific_energy_wh_per_kg);
    let cell_slope = 1.0
        / (p.fuel_cell_reactant_utilization * p.fuel_cell_reactant_specific_energy_wh_per_kg);
    (p.fuel_cell_stack_mass_kg - p.battery_packaging_mass_kg) / (battery_slope - cell_slope)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_battery_keeps_packaging_floor() {
        let params = ModelParams::default();
        let budget = power_design(PowerType::Battery, 0.0, 0.0, &params);
        assert_eq!(budget.mass_kg, params.power.battery_packaging_mass_kg);
        assert_eq!(budget.power_w, 0.0);
    }

    #[test]
    fn battery_mass_is_linear_and_fuel_cell_affine() {
        let params = ModelParams::default();
        let b1 = power_design(PowerType::Battery, 50.0, 0.0, &params).mass_kg;
        let b2 = power_design(PowerType::Battery, 100.0, 0.0, &params).mass_kg;
        let b3 = power_design(PowerType::Battery, 150.0, 0.0, &params).mass_kg;
        assert!(((b2 - b1) - (b3 - b2)).abs() < 1e-12);

        let f0 = power_design(PowerType::FuelCell, 0.0, 0.0, &params).mass_kg;
        assert_eq!(f0, params.power.fuel_cell_stack_mass_kg);
        let f1 = power_design(PowerType::FuelCell, 100.0, 0.0, &params).mass_kg;
        assert!(f1 > f0);
    }

    #[test]
    fn storage_masses_cross_exactly_once() {
        let params = ModelParams::default();
        let crossover = storage_mass_crossover_wh(&params);
        assert!(crossover > 0.0);
        let below = crossover * 0.8;
        let above = crossover * 1.25;
        let b_below = power_design(PowerType::Battery, below, 0.0, &params).mass_kg;
        let f_below = power_design(PowerType::FuelCell, below, 0.0, &params).mass_kg;
        assert!(b_below < f_below);
        let b_above = power_design(PowerType::Battery, above, 0.0, &params).mass_kg;
        let f_above = power_design(PowerType::FuelCell, above, 0.0, &params).mass_kg;
        assert!(f_above < b_above);

        // at the crossover itself the affine models agree
        let b_at = power_design(PowerType::Battery, crossover, 0.0, &params).mass_kg;
        let f_at = power_design(PowerType::FuelCell, crossover, 0.0, &params).mass_kg;
        assert!((b_at - f_at).abs() < 1e-9);
    }

    #[test]
    fn conversion_overhead_scales_with_load() {
        let params = ModelParams::default();
        let budget = power_design(PowerType::Battery, 10.0, 9.0, &params);
        let expected = 9.0 * (1.0 / params.power.conditioning_efficiency - 1.0);
        assert!((budget.power_w - expected).abs() < 1e-12);
    }
}
