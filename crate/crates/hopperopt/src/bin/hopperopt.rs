//! Command-line entry point: mission optimization runs, the comparative
//! mass-minimization grid, and the self-test suites. All heavy lifting
//! lives in the library; this binary parses flags, wires files together
//! and writes the output directory.

use clap::{Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use hopperopt::config;
use hopperopt::cots::Inventory;
use hopperopt::disciplines::{environment_lookup, ModelParams};
use hopperopt::nsga2::GaParams;
use hopperopt::report::{
    write_compare_outputs, write_optimize_outputs, CompareRow, InputDigest, RunManifest,
};
use hopperopt::sysopt::{
    comparative_mass_min, run_system_optimization, ComparisonSetup, ObjectiveWeights,
    PowerPlantCombo, SystemBounds, SystemProblem,
};
use hopperopt::validate;

#[derive(Parser)]
#[command(
    name = "hopperopt",
    version,
    about = "Design-space optimization for small spherical hopping robots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the system-level multi-objective optimization for a mission file
    /// and export the Pareto front.
    Optimize {
        /// Mission configuration (JSON).
        #[arg(long)]
        mission: PathBuf,
        /// COTS inventory CSV.
        #[arg(long, env = "HOPPEROPT_INVENTORY")]
        inventory: PathBuf,
        /// Output directory (created if missing).
        #[arg(long)]
        out: PathBuf,
        /// Model parameter file (TOML); defaults to the built-in table.
        #[arg(long)]
        params: Option<PathBuf>,
        /// Continuous variable bounds as m_lo,m_hi,r_lo,r_hi,p_lo,p_hi.
        #[arg(long)]
        bounds: Option<String>,
        /// Objective weights as a1,a2,a3,a4 (each pair summing to 1).
        #[arg(long)]
        weights: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        population: usize,
        #[arg(long, default_value_t = 100)]
        generations: usize,
        /// Cap on evaluation worker threads (results are unaffected).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Sweep the propellant/power-system combinations over a mission grid
    /// and export the minimum-mass surface.
    Compare {
        /// Grid as distances x durations, e.g. 100,1000,4000x0.5,5,20
        /// (metres and hours).
        #[arg(long)]
        grid: String,
        #[arg(long, env = "HOPPEROPT_INVENTORY")]
        inventory: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        params: Option<PathBuf>,
        /// Environment table entry to run against, as body:phase.
        #[arg(long, default_value = "moon:surface")]
        environment: String,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Run a named self-test suite and report pass/fail per criterion.
    Validate {
        /// One of: sorting, sqp, zdt1, schaffer.
        #[arg(long)]
        suite: String,
        /// Print solver iteration traces where the suite has them.
        #[arg(long)]
        verbose: bool,
    },
}

const EXIT_CONFIG: u8 = 2;
const EXIT_RUNTIME: u8 = 3;

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn parse_csv_numbers(text: &str, expected: usize, flag: &str) -> Result<Vec<f64>, String> {
    let values: Result<Vec<f64>, _> = text.split(',').map(|t| t.trim().parse::<f64>()).collect();
    match values {
        Ok(v) if v.len() == expected => Ok(v),
        Ok(v) => Err(format!(
            "--{flag} expects {expected} comma-separated numbers, got {}",
            v.len()
        )),
        Err(e) => Err(format!("--{flag}: {e}")),
    }
}

fn load_params(path: &Option<PathBuf>) -> Result<(ModelParams, Vec<InputDigest>), String> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| format!("--params {}: {e}", p.display()))?;
            let params = ModelParams::load(p).map_err(|e| e.to_string())?;
            Ok((params, vec![InputDigest::of_text(p, &text)]))
        }
        None => Ok((
            ModelParams::default(),
            vec![InputDigest::of_builtin(
                "model_params",
                hopperopt::disciplines::DEFAULT_MODEL_PARAMS,
            )],
        )),
    }
}

fn init_threads(threads: Option<usize>) -> Result<(), String> {
    if let Some(n) = threads {
        if n == 0 {
            return Err("--threads must be positive".into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| format!("--threads: {e}"))?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_optimize(
    mission_path: &Path,
    inventory_path: &Path,
    out: &Path,
    params_path: &Option<PathBuf>,
    bounds_flag: &Option<String>,
    weights_flag: &Option<String>,
    seed: u64,
    population: usize,
    generations: usize,
    threads: Option<usize>,
    command_line: String,
) -> ExitCode {
    if let Err(e) = init_threads(threads) {
        return fail(EXIT_CONFIG, e);
    }
    let (params, mut inputs) = match load_params(params_path) {
        Ok(x) => x,
        Err(e) => return fail(EXIT_CONFIG, e),
    };

    let mission_text = match std::fs::read_to_string(mission_path) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_CONFIG, format!("--mission {}: {e}", mission_path.display())),
    };
    let (mission, extra) = match config::parse_mission(&mission_text, &params) {
        Ok(x) => x,
        Err(e) => return fail(EXIT_CONFIG, e),
    };
    inputs.push(InputDigest::of_text(mission_path, &mission_text));

    let inventory_text = match std::fs::read_to_string(inventory_path) {
        Ok(t) => t,
        Err(e) => {
            return fail(
                EXIT_CONFIG,
                format!("--inventory {}: {e}", inventory_path.display()),
            )
        }
    };
    let inventory = match Inventory::parse(&inventory_text) {
        Ok(i) => i,
        Err(e) => return fail(EXIT_CONFIG, format!("inventory: {e}")),
    };
    inputs.push(InputDigest::of_text(inventory_path, &inventory_text));

    let mut bounds = SystemBounds::default();
    if let Some(text) = bounds_flag {
        match parse_csv_numbers(text, 6, "bounds") {
            Ok(v) => {
                bounds = SystemBounds {
                    mass_kg: [v[0], v[1]],
                    radius_m: [v[2], v[3]],
                    power_w: [v[4], v[5]],
                }
            }
            Err(e) => return fail(EXIT_CONFIG, e),
        }
    }
    if let Err(e) = bounds.validate() {
        return fail(EXIT_CONFIG, e);
    }

    let mut weights = ObjectiveWeights::default();
    if let Some(text) = weights_flag {
        match parse_csv_numbers(text, 4, "weights") {
            Ok(v) => {
                weights = ObjectiveWeights {
                    alpha1: v[0],
                    alpha2: v[1],
                    alpha3: v[2],
                    alpha4: v[3],
                }
            }
            Err(e) => return fail(EXIT_CONFIG, e),
        }
    }
    if let Err(e) = weights.validate() {
        return fail(EXIT_CONFIG, e);
    }

    let ga = GaParams {
        population_size: population,
        offspring_size: population,
        max_generations: generations,
        seed,
        ..GaParams::default()
    };
    if let Err(e) = ga.validate() {
        return fail(EXIT_CONFIG, format!("ga parameters: {e}"));
    }

    let problem = SystemProblem {
        mission,
        inventory,
        bounds,
        weights,
        extra,
        params,
    };
    let started = Instant::now();
    let front = match run_system_optimization(&problem, &ga) {
        Ok(f) => f,
        Err(e) => return fail(EXIT_RUNTIME, e),
    };
    let manifest = RunManifest::new(command_line, seed, inputs, started.elapsed().as_secs_f64());
    match write_optimize_outputs(out, &front, &manifest) {
        Ok(()) => {
            let feasible = front
                .members
                .iter()
                .filter(|m| m.record.violation == 0.0)
                .count();
            println!(
                "front {} ({} feasible), {} evaluations, outputs in {}",
                front.members.len(),
                feasible,
                front.evaluations,
                out.display()
            );
            ExitCode::SUCCESS
        }
        Err(e) => fail(EXIT_RUNTIME, e),
    }
}

fn run_compare(
    grid: &str,
    inventory_path: &Path,
    out: &Path,
    params_path: &Option<PathBuf>,
    environment: &str,
    threads: Option<usize>,
    command_line: String,
) -> ExitCode {
    if let Err(e) = init_threads(threads) {
        return fail(EXIT_CONFIG, e);
    }
    let (params, mut inputs) = match load_params(params_path) {
        Ok(x) => x,
        Err(e) => return fail(EXIT_CONFIG, e),
    };
    let inventory_text = match std::fs::read_to_string(inventory_path) {
        Ok(t) => t,
        Err(e) => {
            return fail(
                EXIT_CONFIG,
                format!("--inventory {}: {e}", inventory_path.display()),
            )
        }
    };
    let inventory = match Inventory::parse(&inventory_text) {
        Ok(i) => i,
        Err(e) => return fail(EXIT_CONFIG, format!("inventory: {e}")),
    };
    inputs.push(InputDigest::of_text(inventory_path, &inventory_text));

    let axes: Vec<&str> = grid.split('x').collect();
    if axes.len() != 2 {
        return fail(
            EXIT_CONFIG,
            "--grid expects distances x durations, e.g. 100,1000x0.5,5",
        );
    }
    let parse_axis = |text: &str, name: &str| -> Result<Vec<f64>, String> {
        let values: Result<Vec<f64>, _> =
            text.split(',').map(|t| t.trim().parse::<f64>()).collect();
        match values {
            Ok(v) if !v.is_empty() && v.iter().all(|x| *x > 0.0) => Ok(v),
            Ok(_) => Err(format!("--grid {name} axis needs positive numbers")),
            Err(e) => Err(format!("--grid {name} axis: {e}")),
        }
    };
    let distances = match parse_axis(axes[0], "distance") {
        Ok(v) => v,
        Err(e) => return fail(EXIT_CONFIG, e),
    };
    let durations = match parse_axis(axes[1], "duration") {
        Ok(v) => v,
        Err(e) => return fail(EXIT_CONFIG, e),
    };

    let env = {
        let parts: Vec<&str> = environment.split(':').collect();
        if parts.len() != 2 {
            return fail(EXIT_CONFIG, "--environment expects body:phase");
        }
        match environment_lookup(&params, parts[0], parts[1]) {
            Ok(e) => e,
            Err(e) => return fail(EXIT_CONFIG, e),
        }
    };
    let setup = ComparisonSetup::new(env);

    let started = Instant::now();
    let mut rows = Vec::new();
    for &distance in &distances {
        for &duration in &durations {
            for combo in PowerPlantCombo::ALL {
                let outcome =
                    comparative_mass_min(combo, distance, duration, &setup, &inventory, &params);
                rows.push(CompareRow {
                    distance_m: distance,
                    duration_hr: duration,
                    propellant: combo.propellant.name(),
                    power_type: combo.power_type.name(),
                    outcome: outcome.map(|o| (o.total_mass_kg, o.radius_m)),
                });
            }
        }
    }
    let manifest = RunManifest::new(command_line, 0, inputs, started.elapsed().as_secs_f64());
    match write_compare_outputs(out, &rows, &manifest) {
        Ok(()) => {
            println!("{} grid rows, outputs in {}", rows.len(), out.display());
            ExitCode::SUCCESS
        }
        Err(e) => fail(EXIT_RUNTIME, e),
    }
}

fn run_validate(suite: &str, verbose: bool) -> ExitCode {
    match validate::run_suite(suite) {
        Some(report) => {
            let mut all = true;
            for check in &report.checks {
                let status = if check.passed { "PASS" } else { "FAIL" };
                println!("{status}  {} ({})", check.name, check.detail);
                all &= check.passed;
            }
            if verbose && suite == "sqp" {
                for (label, trace) in validate::sqp_fixture_traces() {
                    println!("trace: {label}");
                    for t in trace {
                        println!(
                            "  it {:>3}: f={:14.8e} residual={:.3e} step={:.3e} alpha={:.3}",
                            t.iteration, t.objective, t.residual_norm, t.step_norm, t.step_scale
                        );
                    }
                }
            }
            if all {
                println!("suite {suite}: all criteria passed");
                ExitCode::SUCCESS
            } else {
                eprintln!("suite {suite}: failed");
                ExitCode::from(1)
            }
        }
        None => fail(
            EXIT_CONFIG,
            format!(
                "unknown suite '{suite}'; available: {}",
                validate::SUITES.join(", ")
            ),
        ),
    }
}

fn main() -> ExitCode {
    let command_line: Vec<String> = std::env::args().collect();
    let command_line = command_line.join(" ");
    let cli = Cli::parse();
    match cli.command {
        Command::Optimize {
            mission,
            inventory,
            out,
            params,
            bounds,
            weights,
            seed,
            population,
            generations,
            threads,
        } => run_optimize(
            &mission,
            &inventory,
            &out,
            &params,
            &bounds,
            &weights,
            seed,
            population,
            generations,
            threads,
            command_line,
        ),
        Command::Compare {
            grid,
            inventory,
            out,
            params,
            environment,
            threads,
        } => run_compare(
            &grid,
            &inventory,
            &out,
            &params,
            &environment,
            threads,
            command_line,
        ),
        Command::Validate { suite, verbose } => run_validate(&suite, verbose),
    }
}
