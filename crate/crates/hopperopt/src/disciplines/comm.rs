//! Communication sizing: quarter-wave monopole matched to the selected
//! transceiver band, link margin at the mission range, bandwidth demand
//! from the robot count.

use crate::cots::{CategorySpecs, CotsRecord};

use super::{DisciplineBudget, ModelParams};

/// Speed of light, m/s.
const C_LIGHT_M_S: f64 = 299_792_458.0;

/// Resonant frequency of a quarter-wave monopole of length `l`, in MHz.
pub fn monopole_resonance_mhz(length_m: f64) -> f64 {
    C_LIGHT_M_S / (4.0 * length_m) / 1e6
}

/// Designs the antenna for the selected transceiver and checks the link.
///
/// The monopole is cut for the transceiver's band centre when it fits the
/// shell (stowed length limited to `antenna_max_length_per_radius * r`),
/// otherwise the longest stowable length is used and the emitted resonant
/// frequency will fail the bandwidth constraint downstream. Couplings:
/// `antenna_freq_mhz` (for constraint G5), `antenna_length_m`,
/// `link_margin_db`.
///
/// The budget covers the antenna hardware plus the transceiver's
/// duty-cycled transmit draw; the transceiver board's own mass and volume
/// are accounted once, in the avionics stack.
pub fn comm_design(
    robot_count: u32,
    range_m: f64,
    transceiver: &CotsRecord,
    radius_m: f64,
    params: &ModelParams,
) -> DisciplineBudget {
    let CategorySpecs::Transceiver {
        freq_low_mhz,
        freq_high_mhz,
        bandwidth_mhz,
    } = transceiver.specs
    else {
        panic!("comm_design needs a transceiver record");
    };
    let c = &params.comm;

    let centre_mhz = 0.5 * (freq_low_mhz + freq_high_mhz);
    let length_max_m = c.antenna_max_length_per_radius * radius_m;
    let length_m = (C_LIGHT_M_S / (4.0 * centre_mhz * 1e6)).min(length_max_m);
    let resonant_mhz = monopole_resonance_mhz(length_m);

    // free-space link margin at the resonant frequency
    let tx_dbm = 10.0 * (transceiver.power_w * c.rf_efficiency * 1000.0).log10();
    let fspl_db =
        20.0 * (4.0 * std::f64::consts::PI * range_m * resonant_mhz * 1e6 / C_LIGHT_M_S).log10();
    let margin_db = tx_dbm + 2.0 * c.antenna_gain_dbi - fspl_db - c.rx_sensitivity_dbm;

    let mut budget = DisciplineBudget::zero();
    budget.mass_kg = c.antenna_mass_per_m_kg * length_m;
    budget.volume_m3 = c.antenna_volume_per_m_m3 * length_m;
    budget.power_w = transceiver.power_w * c.duty_cycle;
    let required_bw_mhz = c.bandwidth_per_robot_mhz * robot_count as f64;
    if bandwidth_mhz < required_bw_mhz {
        budget.feasible = false;
        budget.infeasible_reason = Some(format!(
            "transceiver bandwidth {bandwidth_mhz} MHz below the {required_bw_mhz} MHz needed for {robot_count} robots"
        ));
    } else if margin_db < 0.0 {
        budget.feasible = false;
        budget.infeasible_reason = Some(format!(
            "link margin {margin_db:.1} dB at {range_m:.0} m range"
        ));
    }
    budget
        .with_coupling("antenna_freq_mhz", resonant_mhz)
        .with_coupling("antenna_length_m", length_m)
        .with_coupling("link_margin_db", margin_db)
}
