//! Bijective mapping between the 12-variable design vector and
//! [`SystemConfig`], plus normalization and uniform initialization.

use rand::Rng;
use thiserror::Error;

use crate::cots::{Category, Inventory};
use crate::disciplines::{HopSubtype, MobilityConfig, MobilityMode, PowerType, Propellant};
use crate::disciplines::AvionicsIds;
use crate::nsga2::DesignVector;

use super::{SystemBounds, SystemConfig};

/// Vector layout: `[m, r, P, ms_id, sd1, sd2, ps_id, c, p, b, t, a]`.
pub const NUM_DESIGN_VARS: usize = 12;

#[derive(Debug, Error, PartialEq)]
pub enum DecodeError {
    #[error("design vector has {0} entries, expected {NUM_DESIGN_VARS}")]
    Length(usize),
    #[error("variable {variable} holds invalid enumeration value {value}")]
    Enumeration { variable: &'static str, value: f64 },
}

/// Affine map of (m, r, P) onto the unit cube. Values outside the bounds
/// are a caller bug: the optimizer guarantees bounds.
pub fn normalize(
    mass_kg: f64,
    radius_m: f64,
    power_w: f64,
    bounds: &SystemBounds,
) -> Result<(f64, f64, f64), DecodeError> {
    let map = |v: f64, pair: [f64; 2], variable: &'static str| {
        if v < pair[0] - 1e-12 || v > pair[1] + 1e-12 {
            return Err(DecodeError::Enumeration { variable, value: v });
        }
        Ok((v - pair[0]) / (pair[1] - pair[0]))
    };
    Ok((
        map(mass_kg, bounds.mass_kg, "mass_kg")?,
        map(radius_m, bounds.radius_m, "radius_m")?,
        map(power_w, bounds.power_w, "power_w")?,
    ))
}

/// Inverse of [`normalize`].
pub fn denormalize(unit: (f64, f64, f64), bounds: &SystemBounds) -> (f64, f64, f64) {
    let back = |u: f64, pair: [f64; 2]| pair[0] + u * (pair[1] - pair[0]);
    (
        back(unit.0, bounds.mass_kg),
        back(unit.1, bounds.radius_m),
        back(unit.2, bounds.power_w),
    )
}

/// Search-space template for the genetic engine: continuous (m, r, P) plus
/// nine integral slots bounded by the enumeration sizes and inventory
/// category lengths.
pub fn design_template(bounds: &SystemBounds, inventory: &Inventory) -> DesignVector {
    let lower = vec![
        bounds.mass_kg[0],
        bounds.radius_m[0],
        bounds.power_w[0],
        1.0,
        1.0,
        1.0,
        1.0,
        1.0,
        1.0,
        1.0,
        1.0,
        1.0,
    ];
    let upper = vec![
        bounds.mass_kg[1],
        bounds.radius_m[1],
        bounds.power_w[1],
        MobilityMode::ALL.len() as f64,
        HopSubtype::ALL.len() as f64,
        Propellant::ALL.len() as f64,
        PowerType::ALL.len() as f64,
        inventory.len(Category::Computer) as f64,
        inventory.len(Category::PowerBoard) as f64,
        inventory.len(Category::Battery) as f64,
        inventory.len(Category::Transceiver) as f64,
        inventory.len(Category::AttitudeBoard) as f64,
    ];
    let mut integrality = vec![true; NUM_DESIGN_VARS];
    integrality[0] = false;
    integrality[1] = false;
    integrality[2] = false;
    DesignVector {
        values: lower.clone(),
        integrality,
        lower,
        upper,
    }
}

/// Decodes a 12-vector into a typed configuration.
pub fn decode(x: &[f64]) -> Result<SystemConfig, DecodeError> {
    if x.len() != NUM_DESIGN_VARS {
        return Err(DecodeError::Length(x.len()));
    }
    let enumeration = |value: f64, variable: &'static str| -> Result<u32, DecodeError> {
        if value.fract() != 0.0 || value < 1.0 {
            return Err(DecodeError::Enumeration { variable, value });
        }
        Ok(value as u32)
    };
    let mode = MobilityMode::from_code(enumeration(x[3], "ms_id")?)
        .ok_or(DecodeError::Enumeration { variable: "ms_id", value: x[3] })?;
    let hop_subtype = HopSubtype::from_code(enumeration(x[4], "sd1")?)
        .ok_or(DecodeError::Enumeration { variable: "sd1", value: x[4] })?;
    let propellant = Propellant::from_code(enumeration(x[5], "sd2")?)
        .ok_or(DecodeError::Enumeration { variable: "sd2", value: x[5] })?;
    let power_type = PowerType::from_code(enumeration(x[6], "ps_id")?)
        .ok_or(DecodeError::Enumeration { variable: "ps_id", value: x[6] })?;
    Ok(SystemConfig {
        mass_kg: x[0],
        radius_m: x[1],
        power_w: x[2],
        mobility: MobilityConfig {
            mode,
            hop_subtype,
            propellant,
        },
        power_type,
        cots: AvionicsIds {
            computer: enumeration(x[7], "c_id")?,
            power_board: enumeration(x[8], "p_id")?,
            battery: enumeration(x[9], "b_id")?,
            transceiver: enumeration(x[10], "t_id")?,
            attitude_board: enumeration(x[11], "a_id")?,
        },
    })
}

/// Inverse of [`decode`].
pub fn encode(config: &SystemConfig) -> [f64; NUM_DESIGN_VARS] {
    [
        config.mass_kg,
        config.radius_m,
        config.power_w,
        config.mobility.mode.code() as f64,
        config.mobility.hop_subtype.code() as f64,
        config.mobility.propellant.code() as f64,
        config.power_type.code() as f64,
        config.cots.computer as f64,
        config.cots.power_board as f64,
        config.cots.battery as f64,
        config.cots.transceiver as f64,
        config.cots.attitude_board as f64,
    ]
}

/// Uniform initial population: (m, r, P) uniform over their bounds, every
/// enumeration and COTS id uniform over its range.
pub fn init_population<R: Rng>(
    n: usize,
    bounds: &SystemBounds,
    inventory: &Inventory,
    rng: &mut R,
) -> Vec<DesignVector> {
    let template = design_template(bounds, inventory);
    (0..n)
        .map(|_| DesignVector::sample_uniform(&template, rng))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn normalize_endpoints_and_midpoint() {
        let bounds = SystemBounds::default();
        let (m, _, _) = normalize(1.0, 0.1, 50.0, &bounds).unwrap();
        assert_eq!(m, 0.0);
        let (m, _, _) = normalize(20.0, 0.1, 50.0, &bounds).unwrap();
        assert_eq!(m, 1.0);
        let (m, _, _) = normalize(10.5, 0.1, 50.0, &bounds).unwrap();
        assert_eq!(m, 0.5);
    }

    #[test]
    fn normalize_then_denormalize_is_identity() {
        let bounds = SystemBounds::default();
        for (m, r, p) in [(1.0, 0.05, 5.0), (20.0, 0.3, 100.0), (7.3, 0.17, 42.0)] {
            let unit = normalize(m, r, p, &bounds).unwrap();
            let (m2, r2, p2) = denormalize(unit, &bounds);
            assert!((m - m2).abs() < 1e-12);
            assert!((r - r2).abs() < 1e-12);
            assert!((p - p2).abs() < 1e-12);
        }
    }

    #[test]
    fn out_of_bounds_normalization_is_an_error() {
        let bounds = SystemBounds::default();
        assert!(normalize(0.5, 0.1, 50.0, &bounds).is_err());
    }

    #[test]
    fn encode_decode_round_trips_on_random_valid_vectors() {
        let inventory = Inventory::embedded_default();
        let bounds = SystemBounds::default();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for x in init_population(200, &bounds, &inventory, &mut rng) {
            let config = decode(&x.values).unwrap();
            let back = encode(&config);
            assert_eq!(&back[..], &x.values[..]);
        }
    }

    #[test]
    fn option_codes_follow_the_documented_encoding() {
        let inventory = Inventory::embedded_default();
        let bounds = SystemBounds::default();
        let template = design_template(&bounds, &inventory);
        let mut x = template.values.clone();
        x[0] = 4.0;
        x[1] = 0.15;
        x[2] = 20.0;
        x[3] = 1.0; // hopping
        x[4] = 1.0; // propulsive
        x[5] = 2.0; // rp1/h2o2
        x[6] = 2.0; // fuel cell
        let config = decode(&x).unwrap();
        assert_eq!(config.mobility.mode, MobilityMode::Hopping);
        assert_eq!(config.mobility.hop_subtype, HopSubtype::Propulsive);
        assert_eq!(config.mobility.propellant, Propellant::Rp1Peroxide);
        assert_eq!(config.power_type, PowerType::FuelCell);

        x[3] = 2.0; // rolling: sd fields are carried but unused
        let config = decode(&x).unwrap();
        assert_eq!(config.mobility.mode, MobilityMode::Rolling);
    }

    #[test]
    fn invalid_enumeration_is_rejected() {
        let inventory = Inventory::embedded_default();
        let bounds = SystemBounds::default();
        let template = design_template(&bounds, &inventory);
        let mut x = template.values.clone();
        x[3] = 7.0;
        assert!(matches!(
            decode(&x),
            Err(DecodeError::Enumeration { variable: "ms_id", .. })
        ));
    }

    #[test]
    fn initial_population_is_valid_and_centred() {
        let inventory = Inventory::embedded_default();
        let bounds = SystemBounds::default();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let population = init_population(10_000, &bounds, &inventory, &mut rng);
        let mut mass_sum = 0.0;
        for x in &population {
            assert!(x.is_valid());
            mass_sum += x.values[0];
        }
        // three-sigma band for a uniform sample mean over [1, 20]
        let mean = mass_sum / population.len() as f64;
        let expected = 0.5 * (1.0 + 20.0);
        let sigma = (20.0 - 1.0) / (12.0f64).sqrt() / (population.len() as f64).sqrt();
        assert!(
            (mean - expected).abs() < 3.0 * sigma,
            "mean {mean} vs expected {expected}"
        );
    }

    #[test]
    fn every_power_type_appears_in_a_modest_population() {
        let inventory = Inventory::embedded_default();
        let bounds = SystemBounds::default();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let population = init_population(100, &bounds, &inventory, &mut rng);
        let mut battery = false;
        let mut fuel_cell = false;
        for x in &population {
            match x.values[6] as u32 {
                1 => battery = true,
                2 => fuel_cell = true,
                other => panic!("invalid ps code {other}"),
            }
        }
        assert!(battery && fuel_cell);
    }
}
