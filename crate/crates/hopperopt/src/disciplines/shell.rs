//! Structural shell: thin sphere with a stress-heuristic wall thickness.

use super::{DisciplineBudget, ModelParams};

/// Shell budget plus the moment of inertia the mobility controller needs.
#[derive(Debug, Clone)]
pub struct ShellSizing {
    pub budget: DisciplineBudget,
    pub thickness_m: f64,
    /// Thin-shell moment of inertia `(2/3) m r^2`.
    pub inertia_kg_m2: f64,
}

/// Thin spherical shell: `mass = 4 pi r^2 t rho`, with the wall thickness
/// growing linearly in radius above a floor.
pub fn shell_design(radius_m: f64, params: &ModelParams) -> ShellSizing {
    debug_assert!(radius_m > 0.0);
    let s = &params.shell;
    let thickness_m = s.min_thickness_m.max(s.thickness_per_radius * radius_m);
    let area = 4.0 * std::f64::consts::PI * radius_m * radius_m;
    let mass_kg = area * thickness_m * s.density_kg_m3;
    let mut budget = DisciplineBudget::zero();
    budget.mass_kg = mass_kg;
    budget.volume_m3 = area * thickness_m;
    let budget = budget.with_coupling("inertia_kg_m2", 2.0 / 3.0 * mass_kg * radius_m * radius_m);
    ShellSizing {
        budget,
        thickness_m,
        inertia_kg_m2: 2.0 / 3.0 * mass_kg * radius_m * radius_m,
    }
}
