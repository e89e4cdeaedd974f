//! Avionics stack: the five COTS boards selected by the integer ID design
//! variables.

use crate::cots::{Category, CategorySpecs, CotsRecord, Inventory, InventoryError};

use super::DisciplineBudget;

/// The five COTS selections of a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AvionicsIds {
    pub computer: u32,
    pub power_board: u32,
    pub battery: u32,
    pub transceiver: u32,
    pub attitude_board: u32,
}

/// Resolved records plus the category specs the system constraints check.
#[derive(Debug, Clone)]
pub struct AvionicsSelection {
    pub budget: DisciplineBudget,
    pub computer_clock_mhz: f64,
    pub computer_storage_gb: f64,
    pub battery_capacity_wh: f64,
    pub transceiver: CotsRecord,
}

/// Sums mass/volume/power over the five selected records and exposes the
/// category-specific specs. Missing ids name the offending category.
pub fn avionics_select(
    ids: &AvionicsIds,
    inventory: &Inventory,
) -> Result<AvionicsSelection, InventoryError> {
    let computer = inventory.get(Category::Computer, ids.computer)?;
    let power_board = inventory.get(Category::PowerBoard, ids.power_board)?;
    let battery = inventory.get(Category::Battery, ids.battery)?;
    let transceiver = inventory.get(Category::Transceiver, ids.transceiver)?;
    let attitude = inventory.get(Category::AttitudeBoard, ids.attitude_board)?;

    let records = [computer, power_board, battery, transceiver, attitude];
    let mut budget = DisciplineBudget::zero();
    for r in records {
        budget.mass_kg += r.mass_kg;
        budget.volume_m3 += r.volume_m3;
        budget.power_w += r.power_w;
    }

    let CategorySpecs::Computer {
        clock_mhz,
        storage_gb,
    } = computer.specs
    else {
        unreachable!("category enforced at load")
    };
    let CategorySpecs::Battery { capacity_wh } = battery.specs else {
        unreachable!("category enforced at load")
    };

    Ok(AvionicsSelection {
        budget,
        computer_clock_mhz: clock_mhz,
        computer_storage_gb: storage_gb,
        battery_capacity_wh: capacity_wh,
        transceiver: transceiver.clone(),
    })
}
