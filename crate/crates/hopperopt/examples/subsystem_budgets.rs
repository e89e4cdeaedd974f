//! Evaluates one hand-picked configuration through all seven subsystem
//! models and prints the budget breakdown, payload identities, objectives
//! and constraint violation.
//!
//!     cargo run --release --example subsystem_budgets

use hopperopt::config;
use hopperopt::cots::Inventory;
use hopperopt::disciplines::{
    AvionicsIds, HopSubtype, MobilityConfig, MobilityMode, ModelParams, PowerType, Propellant,
};
use hopperopt::sysopt::{encode, evaluate, ObjectiveWeights, SystemBounds, SystemConfig};

fn main() {
    let params = ModelParams::default();
    let inventory = Inventory::embedded_default();
    let (mission, extra) =
        config::parse_mission(config::MISSION_MARE_SURFACE, &params).expect("shipped mission");

    let config = SystemConfig {
        mass_kg: 5.0,
        radius_m: 0.16,
        power_w: 30.0,
        mobility: MobilityConfig {
            mode: MobilityMode::Hopping,
            hop_subtype: HopSubtype::Propulsive,
            propellant: Propellant::Rp1Peroxide,
        },
        power_type: PowerType::Battery,
        cots: AvionicsIds {
            computer: 3,
            power_board: 2,
            battery: 2,
            transceiver: 2,
            attitude_board: 2,
        },
    };

    let record = evaluate(
        &encode(&config),
        &mission,
        &inventory,
        &SystemBounds::default(),
        &ObjectiveWeights::default(),
        &extra,
        &params,
    )
    .expect("in-bounds configuration");

    println!(
        "design: m = {} kg, r = {} m, P = {} W, {} / {} / {}, power = {}",
        config.mass_kg,
        config.radius_m,
        config.power_w,
        config.mobility.mode.name(),
        config.mobility.hop_subtype.name(),
        config.mobility.propellant.name(),
        config.power_type.name(),
    );

    println!("\n{:<10} {:>9} {:>11} {:>8}", "subsystem", "mass kg", "volume m3", "power W");
    for (name, budget) in record.budgets.iter() {
        println!(
            "{name:<10} {:9.4} {:11.6} {:8.3}",
            budget.mass_kg, budget.volume_m3, budget.power_w
        );
    }
    println!(
        "{:<10} {:9.4} {:11.6} {:8.3}",
        "total",
        record.budgets.total_mass_kg(),
        record.budgets.total_volume_m3(),
        record.budgets.total_power_w()
    );
    println!(
        "{:<10} {:9.4} {:11.6} {:8.3}",
        "payload", record.payload.mass_kg, record.payload.volume_m3, record.payload.power_w
    );

    println!("\ncouplings of interest:");
    for (name, budget) in record.budgets.iter() {
        for (key, value) in &budget.couplings {
            println!("  {name}.{key} = {value:.4}");
        }
    }

    println!("\nobjectives F = {:?}", record.objectives);
    println!(
        "violation = {}, assembly index = {}, coupling iterations = {}",
        record.violation, record.assembly_index, record.coupling_iterations
    );
}
