//! Full system optimization for the shipped 1000 m / 5 h lunar surface
//! mission: runs the genetic search over the 12-variable configuration
//! space and prints the front summary plus the option-selection history.
//!
//!     cargo run --release --example surface_mission [seed]

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
        config::parse_mission(config::MISSION_MARE_SURFACE, &params).expect("shipped mission");

    let problem = SystemProblem {
        mission,
        inventory: Inventory::embedded_default(),
        bounds: SystemBounds::default(),
        weights: ObjectiveWeights::default(),
        extra,
        params,
    };
    let ga = GaParams {
        seed,
        ..GaParams::default()
    };

    let front = run_system_optimization(&problem, &ga).expect("system run");
    let n = front.members.len() as f64;
    let mean = |f: &dyn Fn(&hopperopt::sysopt::FrontMember) -> f64| {
        front.members.iter().map(f).sum::<f64>() / n
    };

    println!("front size {}, evaluations {}", front.members.len(), front.evaluations);
    println!(
        "mean total mass {:.2} kg, mean radius {:.3} m",
        mean(&|m| m.record.config.mass_kg),
        mean(&|m| m.record.config.radius_m)
    );
    println!(
        "mean payload: {:.2} kg, {:.4} m3, {:.1} W",
        mean(&|m| m.record.payload.mass_kg),
        mean(&|m| m.record.payload.volume_m3),
        mean(&|m| m.record.payload.power_w)
    );

    println!("\nfinal parent-population shares:");
    for (variable, options) in [
        ("mobility", &["hopping", "rolling", "wheeled"][..]),
        ("hop_subtype", &["propulsive", "mechanical", "reaction_wheel"][..]),
        ("propellant", &["h2_o2", "rp1_h2o2", "steam"][..]),
        ("power", &["battery", "fuel_cell"][..]),
    ] {
        print!("  {variable:12}");
        for option in options {
            print!(" {option}={:.2}", final_share(&front.selection, variable, option));
        }
        println!();
    }

    // the generation at which each mobility option was last seen
    println!("\nlast generation each mobility option appears:");
    for option in ["hopping", "rolling", "wheeled"] {
        let last = front
            .selection
            .iter()
            .filter(|t| t.variable == "mobility" && t.option == option && t.count > 0)
            .map(|t| t.generation)
            .max();
        match last {
            Some(g) => println!("  {option:10} generation {g}"),
            None => println!("  {option:10} never sampled"),
        }
    }
}
