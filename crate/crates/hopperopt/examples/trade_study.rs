//! Minimum-mass trade study over exploration distance and mission time for
//! every propellant/power-system pairing: the battery-versus-fuel-cell
//! crossover emerges along the demand diagonal.
//!
//!     cargo run --release --example trade_study

use hopperopt::cots::Inventory;
use hopperopt::disciplines::{environment_lookup, ModelParams};
use hopperopt::sysopt::{comparative_mass_min, ComparisonSetup, PowerPlantCombo};

fn main() {
    let params = ModelParams::default();
    let env = environment_lookup(&params, "moon", "surface").unwrap();
    let inventory = Inventory::embedded_default();
    let setup = ComparisonSetup::new(env);

    let cells = [(100.0, 0.5), (1000.0, 5.0), (4000.0, 20.0)];
    println!(
        "{:>18} {:>14} {:>14} {:>14}",
        "combo", "100 m/0.5 h", "1 km/5 h", "4 km/20 h"
    );
    for combo in PowerPlantCombo::ALL {
        print!(
            "{:>18}",
            format!("{}+{}", combo.propellant.name(), combo.power_type.name())
        );
        for (d, t) in cells {
            match comparative_mass_min(combo, d, t, &setup, &inventory, &params) {
                Some(o) => print!(" {:11.3} kg", o.total_mass_kg),
                None => print!(" {:>14}", "infeasible"),
            }
        }
        println!();
    }

    println!("\nbest combo per cell:");
    for (d, t) in cells {
        let best = PowerPlantCombo::ALL
            .iter()
            .filter_map(|&combo| {
                comparative_mass_min(combo, d, t, &setup, &inventory, &params)
                    .map(|o| (combo, o.total_mass_kg))
            })
            .min_by(|a, b| a.1.total_cmp(&b.1));
        if let Some((combo, mass)) = best {
            println!(
                "  ({d:6.0} m, {t:4.1} h): {}+{} at {mass:.3} kg",
                combo.propellant.name(),
                combo.power_type.name()
            );
        }
    }
}
