//! Radiation shielding sized by exponential attenuation of the ambient dose
//! rate over the mission duration.

use super::{DisciplineBudget, Environment, ModelParams};

/// Shield thickness and mass so the integrated mission dose behind the
/// shield stays within `dose_limit_rad`:
/// `I0 * dt * exp(-t / t_char) <= limit`. A zero ambient dose rate yields a
/// zero shield.
pub fn shielding_design(
    env: &Environment,
    duration_hr: f64,
    dose_limit_rad: f64,
    radius_m: f64,
    params: &ModelParams,
) -> DisciplineBudget {
    debug_assert!(duration_hr > 0.0 && dose_limit_rad > 0.0);
    let s = &params.shielding;
    let unshielded_rad = env.dose_rate_rad_yr * duration_hr / 8760.0;
    let thickness_m = if unshielded_rad > dose_limit_rad {
        s.attenuation_length_m * (unshielded_rad / dose_limit_rad).ln()
    } else {
        0.0
    };
    let area = 4.0 * std::f64::consts::PI * radius_m * radius_m;
    let mut budget = DisciplineBudget::zero();
    budget.mass_kg = s.shield_density_kg_m3 * thickness_m * area;
    budget.volume_m3 = thickness_m * area;
    budget.with_coupling("thickness_m", thickness_m)
}
