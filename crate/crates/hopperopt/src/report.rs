//! Machine-readable run outputs: the Pareto-front and selection-history
//! CSVs, the comparison-grid CSV and the reproducibility manifest.
//!
//! CSV values use SI units with `.` decimal separators; floats are written
//! in Rust's shortest round-trip form, so identical runs produce
//! byte-identical files. Column orders are fixed and documented by the
//! header constants.

use serde::Serialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use thiserror::Error;

use crate::cots::hex_digest;
use crate::disciplines::SUBSYSTEM_NAMES;
use crate::sysopt::{encode, OptionTally, ParetoFront};

pub const SCHEMA_VERSION: u32 = 1;

/// `pareto_front.csv`: the 12 design variables, the four objectives, the
/// violation, per-subsystem mass/volume/power and the payload budget.
pub fn pareto_front_header() -> String {
    let mut header = String::from(
        "mass_kg,radius_m,power_w,ms_id,sd1,sd2,ps_id,c_id,p_id,b_id,t_id,a_id,f1,f2,f3,f4,omega",
    );
    for name in SUBSYSTEM_NAMES {
        write!(header, ",{name}_mass_kg,{name}_volume_m3,{name}_power_w").unwrap();
    }
    header.push_str(",payload_mass_kg,payload_volume_m3,payload_power_w");
    header
}

pub const SELECTION_HISTORY_HEADER: &str = "generation,option,count";
pub const COMPARE_HEADER: &str =
    "distance_m,duration_hr,propellant,power_type,total_mass_kg,radius_m";

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("manifest: {0}")]
    Manifest(#[from] serde_json::Error),
}

fn write_file(path: &Path, contents: &str) -> Result<(), ReportError> {
    std::fs::write(path, contents).map_err(|source| ReportError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Renders the Pareto front as CSV text.
pub fn render_pareto_front(front: &ParetoFront) -> String {
    let mut out = pareto_front_header();
    out.push('\n');
    for member in &front.members {
        let record = &member.record;
        let x = encode(&record.config);
        let mut row = String::new();
        for (i, v) in x.iter().enumerate() {
            if i > 0 {
                row.push(',');
            }
            if i >= 3 {
                // integer design slots print as integers
                write!(row, "{}", *v as i64).unwrap();
            } else {
                write!(row, "{v}").unwrap();
            }
        }
        for f in record.objectives {
            write!(row, ",{f}").unwrap();
        }
        write!(row, ",{}", record.violation).unwrap();
        for (_, budget) in record.budgets.iter() {
            write!(
                row,
                ",{},{},{}",
                budget.mass_kg, budget.volume_m3, budget.power_w
            )
            .unwrap();
        }
        write!(
            row,
            ",{},{},{}",
            record.payload.mass_kg, record.payload.volume_m3, record.payload.power_w
        )
        .unwrap();
        out.push_str(&row);
        out.push('\n');
    }
    out
}

/// Renders the per-generation option tallies as CSV text.
pub fn render_selection_history(selection: &[OptionTally]) -> String {
    let mut out = String::from(SELECTION_HISTORY_HEADER);
    out.push('\n');
    for tally in selection {
        writeln!(
            out,
            "{},{}:{},{}",
            tally.generation, tally.variable, tally.option, tally.count
        )
        .unwrap();
    }
    out
}

/// One row of the comparison grid.
#[derive(Debug, Clone)]
pub struct CompareRow {
    pub distance_m: f64,
    pub duration_hr: f64,
    pub propellant: &'static str,
    pub power_type: &'static str,
    /// `None` renders as INFEASIBLE with no number.
    pub outcome: Option<(f64, f64)>,
}

/// Renders the comparison grid as CSV text.
pub fn render_compare(rows: &[CompareRow]) -> String {
    let mut out = String::from(COMPARE_HEADER);
    out.push('\n');
    for row in rows {
        match row.outcome {
            Some((mass, radius)) => writeln!(
                out,
                "{},{},{},{},{},{}",
                row.distance_m, row.duration_hr, row.propellant, row.power_type, mass, radius
            )
            .unwrap(),
            None => writeln!(
                out,
                "{},{},{},{},INFEASIBLE,",
                row.distance_m, row.duration_hr, row.propellant, row.power_type
            )
            .unwrap(),
        }
    }
    out
}

/// Digest of one input file recorded in the manifest.
#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of_text(path: &Path, text: &str) -> Self {
        Self {
            path: path.display().to_string(),
            sha256: hex_digest(text.as_bytes()),
        }
    }

    pub fn of_builtin(name: &str, text: &str) -> Self {
        Self {
            path: format!("<builtin:{name}>"),
            sha256: hex_digest(text.as_bytes()),
        }
    }
}

/// The self-description of one run directory: command, input digests, seed
/// and tool version suffice to reproduce the outputs bit-exactly with the
/// same binary.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub command: String,
    pub seed: u64,
    pub inputs: Vec<InputDigest>,
    pub wall_time_s: f64,
}

impl RunManifest {
    pub fn new(command: String, seed: u64, inputs: Vec<InputDigest>, wall_time_s: f64) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION"),
            command,
            seed,
            inputs,
            wall_time_s,
        }
    }
}

/// Writes an optimize-run output directory: `pareto_front.csv`,
/// `selection_history.csv` and `manifest.json`.
pub fn write_optimize_outputs(
    dir: &Path,
    front: &ParetoFront,
    manifest: &RunManifest,
) -> Result<(), ReportError> {
    std::fs::create_dir_all(dir).map_err(|source| ReportError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    write_file(&dir.join("pareto_front.csv"), &render_pareto_front(front))?;
    write_file(
        &dir.join("selection_history.csv"),
        &render_selection_history(&front.selection),
    )?;
    write_file(
        &dir.join("manifest.json"),
        &serde_json::to_string_pretty(manifest)?,
    )?;
    Ok(())
}

/// Writes a compare-run output directory: `compare.csv` and `manifest.json`.
pub fn write_compare_outputs(
    dir: &Path,
    rows: &[CompareRow],
    manifest: &RunManifest,
) -> Result<(), ReportError> {
    std::fs::create_dir_all(dir).map_err(|source| ReportError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    write_file(&dir.join("compare.csv"), &render_compare(rows))?;
    write_file(
        &dir.join("manifest.json"),
        &serde_json::to_string_pretty(manifest)?,
    )?;
    Ok(())
}
