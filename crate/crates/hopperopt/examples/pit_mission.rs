//! The three-phase pit-descent mission: long surface approach, a timed
//! entry manoeuvre, then cold shielded subsurface exploration. Shows how
//! multi-phase environments steer the power-system and propellant choice.
//!
//!     cargo run --release --example pit_mission [seed]

use hopperopt::config;
use hopperopt::cots::Inventory;
use hopperopt::disciplines::ModelParams;
use hopperopt::nsga2::GaParams;
use hopperopt::sysopt::{
    final_share, run_system_optimization, ObjectiveWeights, SystemBounds, SystemProblem,
};

fn main() {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(7u64);
    let params = ModelParams::default();
    let (mission, extra) =
        config::parse_mission(config::MISSION_PIT_DESCENT, &params).expect("shipped mission");

    println!("phases:");
    for (i, phase) in mission.phases.iter().enumerate() {
        println!(
            "  {i}: {:6.0} m in {:5.2} h at T_a = {:3.0} K, dose {:3.0} rad/yr",
            phase.distance_m,
            phase.duration_hr,
            phase.environment.ambient_temperature_k,
            phase.environment.dose_rate_rad_yr
        );
    }

    let problem = SystemProblem {
        mission,
        inventory: Inventory::embedded_default(),
        bounds: SystemBounds::default(),
        weights: ObjectiveWeights::default(),
        extra,
        params,
    };
    let ga = GaParams {
        max_generations: 150,
        seed,
        ..GaParams::default()
    };
    let front = run_system_optimization(&problem, &ga).expect("system run");

    let n = front.members.len() as f64;
    let mean_mass = front
        .members
        .iter()
        .map(|m| m.record.config.mass_kg)
        .sum::<f64>()
        / n;
    println!("\nfront size {}, mean total mass {mean_mass:.2} kg", front.members.len());

    println!("final shares:");
    for (variable, option) in [
        ("propellant", "h2_o2"),
        ("propellant", "rp1_h2o2"),
        ("propellant", "steam"),
        ("power", "battery"),
        ("power", "fuel_cell"),
    ] {
        println!(
            "  {variable:10} {option:10} {:.2}",
            final_share(&front.selection, variable, option)
        );
    }

    // one representative member: the median-mass front individual
    let mut by_mass: Vec<_> = front.members.iter().collect();
    by_mass.sort_by(|a, b| a.record.config.mass_kg.total_cmp(&b.record.config.mass_kg));
    let mid = &by_mass[by_mass.len() / 2].record;
    println!(
        "\nmedian design: m = {:.2} kg, r = {:.3} m, P = {:.1} W",
        mid.config.mass_kg, mid.config.radius_m, mid.config.power_w
    );
    for (name, budget) in mid.budgets.iter() {
        println!(
            "  {name:10} {:7.3} kg {:9.5} m3 {:6.2} W",
            budget.mass_kg, budget.volume_m3, budget.power_w
        );
    }
    println!(
        "  {:10} {:7.3} kg {:9.5} m3 {:6.2} W",
        "payload", mid.payload.mass_kg, mid.payload.volume_m3, mid.payload.power_w
    );
}
