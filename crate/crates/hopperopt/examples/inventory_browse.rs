//! Loads the component inventory (a file path if given, the embedded
//! default otherwise), prints it per category and demonstrates the
//! transceiver/antenna bandwidth check.
//!
//!     cargo run --release --example inventory_browse [path/to/inventory.csv]

use hopperopt::cots::{bandwidth_check, Category, CategorySpecs, Inventory};
use std::path::Path;

fn main() {
    let inventory = match std::env::args().nth(1) {
        Some(path) => Inventory::load(Path::new(&path)).expect("inventory loads"),
        None => Inventory::embedded_default(),
    };
    println!("inventory digest: {}", inventory.provenance);

    for category in Category::ALL {
        println!("\n[{category}] ({} records)", inventory.len(category));
        for r in inventory.category(category) {
            print!(
                "  {:>2}  {:<14} {:6.3} kg {:9.1e} m3 {:5.2} W",
                r.id, r.name, r.mass_kg, r.volume_m3, r.power_w
            );
            match &r.specs {
                CategorySpecs::Computer {
                    clock_mhz,
                    storage_gb,
                } => print!("  {clock_mhz} MHz, {storage_gb} GB"),
                CategorySpecs::Battery { capacity_wh } => print!("  {capacity_wh} Wh"),
                CategorySpecs::Transceiver {
                    freq_low_mhz,
                    freq_high_mhz,
                    bandwidth_mhz,
                } => print!("  {freq_low_mhz}-{freq_high_mhz} MHz, BW {bandwidth_mhz} MHz"),
                _ => {}
            }
            println!();
        }
    }

    println!("\nbandwidth check against a 437 MHz quarter-wave monopole:");
    for r in inventory.category(Category::Transceiver) {
        println!(
            "  {:<14} {}",
            r.name,
            if bandwidth_check(r, 437.0) { "compatible" } else { "out of band" }
        );
    }
}
