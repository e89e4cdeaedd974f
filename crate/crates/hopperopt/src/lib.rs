//! Design-space optimization for small spherical hopping exploration robots.
//!
//! The crate couples two optimizers: an elitist non-dominated sorting
//! genetic algorithm ([`nsga2`]) searches the mixed real/integer system
//! configuration space, while a dense SQP solver ([`sqp`]) sizes individual
//! subsystems inside every evaluation. Subsystem models live in
//! [`disciplines`] behind a common budget interface, electronics come from a
//! COTS inventory ([`cots`]), and [`sysopt`] assembles the four-objective
//! system problem, its constraints and the comparative mass study. Mission
//! configs, result export and the validation suites back the `hopperopt`
//! binary.
//!
//! Start with the examples: each one exercises a major capability end to
//! end (`cargo run --example zdt1`, `--example surface_mission`, ...).

pub mod benchmarks;
pub mod config;
pub mod cots;
pub mod disciplines;
pub mod nsga2;
pub mod report;
pub mod sqp;
pub mod sysopt;
pub mod validate;
