//! Mission configuration files: a JSON document describing the exploration
//! phases, robot count and optional extra spec constraints.
//!
//! Environments may be given inline (full scalar parameter set) or by
//! reference into the built-in table, e.g. `{"body": "moon", "phase":
//! "surface"}`.

use serde::Deserialize;
use std::path::Path;
use thiserror::Error;

use crate::disciplines::{environment_lookup, Environment, MissionSpec, ModelParams, Phase};
use crate::sysopt::ExtraConstraints;

/// Two example mission files ship with the crate.
pub const MISSION_MARE_SURFACE: &str = include_str!("../missions/mare_surface.json");
pub const MISSION_PIT_DESCENT: &str = include_str!("../missions/pit_descent.json");

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MissionFile {
    phases: Vec<PhaseFile>,
    robot_count: u32,
    #[serde(default)]
    extra_constraints: ExtraConstraints,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PhaseFile {
    distance_m: f64,
    duration_hr: f64,
    environment: EnvironmentRef,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum EnvironmentRef {
    Lookup { body: String, phase: String },
    Inline(Environment),
}

#[derive(Debug, Error)]
pub enum MissionFileError {
    #[error("cannot read mission file: {0}")]
    Io(#[from] std::io::Error),
    #[error("mission file: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("mission file: {0}")]
    Environment(#[from] crate::disciplines::EnvironmentLookupError),
    #[error("mission file: {0}")]
    Invalid(#[from] crate::disciplines::MissionError),
}

/// Parses mission JSON text against the environment table in `params`.
pub fn parse_mission(
    text: &str,
    params: &ModelParams,
) -> Result<(MissionSpec, ExtraConstraints), MissionFileError> {
    let file: MissionFile = serde_json::from_str(text)?;
    let mut phases = Vec::with_capacity(file.phases.len());
    for p in file.phases {
        let environment = match p.environment {
            EnvironmentRef::Lookup { body, phase } => environment_lookup(params, &body, &phase)?,
            EnvironmentRef::Inline(env) => env,
        };
        phases.push(Phase {
            distance_m: p.distance_m,
            duration_hr: p.duration_hr,
            environment,
        });
    }
    let mission = MissionSpec {
        phases,
        robot_count: file.robot_count,
    };
    mission.validate()?;
    Ok((mission, file.extra_constraints))
}

/// Loads and parses a mission file from disk.
pub fn load_mission(
    path: &Path,
    params: &ModelParams,
) -> Result<(MissionSpec, ExtraConstraints), MissionFileError> {
    let text = std::fs::read_to_string(path)?;
    parse_mission(&text, params)
}
