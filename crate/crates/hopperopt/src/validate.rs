//! Self-test suites behind `hopperopt validate --suite <name>`: oracle
//! comparisons for the sorting machinery, the analytic SQP fixtures and the
//! standard multi-objective benchmarks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::benchmarks::{self, reference, SchafferN1, Zdt1};
use crate::nsga2::{self, evolve, GaParams, Individual};
use crate::sqp::{solve, FnNlp, SolveOptions};

/// One named pass/fail check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub const SUITES: [&str; 4] = ["sorting", "sqp", "zdt1", "schaffer"];

/// Runs one suite by name; unknown names return `None`.
pub fn run_suite(name: &str) -> Option<SuiteReport> {
    match name {
        "sorting" => Some(sorting_suite()),
        "sqp" => Some(sqp_suite()),
        "zdt1" => Some(zdt1_suite()),
        "schaffer" => Some(schaffer_suite()),
        _ => None,
    }
}

fn individual_from_costs(costs: &[f64]) -> Individual {
    Individual {
        x: crate::nsga2::DesignVector {
            values: vec![],
            integrality: vec![],
            lower: vec![],
            upper: vec![],
        },
        objectives: costs.to_vec(),
        violation: 0.0,
        penalized: costs.to_vec(),
        rank: 0,
        crowding: 0.0,
    }
}

/// 200 seeded random populations (N <= 50, K in {2,3,4}): the fast sort
/// must match the all-pairs brute-force partition exactly and crowding must
/// match the direct reference evaluation to 1e-12.
pub fn sorting_suite() -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(0x50);
    let mut partition_failures = 0usize;
    let mut crowding_failures = 0usize;
    let trials = 200;

    for _ in 0..trials {
        let n = rng.random_range(2..=50);
        let k = rng.random_range(2..=4usize);
        // draw costs with occasional exact duplicates to stress ties
        let mut costs: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..k).map(|_| (rng.random::<f64>() * 8.0).round() / 8.0).collect())
            .collect();
        if n > 3 {
            let dup = costs[0].clone();
            costs[n - 1] = dup;
        }

        let mut population: Vec<Individual> =
            costs.iter().map(|c| individual_from_costs(c)).collect();
        let partition = nsga2::non_dominated_sort(&mut population);
        let oracle = reference::brute_force_fronts(&costs);

        let mut ours: Vec<Vec<usize>> = partition.fronts.clone();
        for front in &mut ours {
            front.sort_unstable();
        }
        if ours != oracle {
            partition_failures += 1;
            continue;
        }

        for front in &oracle {
            let front_costs: Vec<Vec<f64>> = front.iter().map(|&i| costs[i].clone()).collect();
            let fast = nsga2::crowding_distance(&front_costs);
            let slow = reference::crowding_reference(&front_costs);
            for (a, b) in fast.iter().zip(&slow) {
                let same = (a.is_infinite() && b.is_infinite()) || (a - b).abs() <= 1e-12;
                if !same {
                    crowding_failures += 1;
                }
            }
        }
    }

    SuiteReport {
        suite: "sorting",
        checks: vec![
            CheckResult::new(
                format!("non-dominated partition matches brute force on {trials} populations"),
                partition_failures == 0,
                format!("{partition_failures} mismatches"),
            ),
            CheckResult::new(
                "crowding matches the direct reference to 1e-12",
                crowding_failures == 0,
                format!("{crowding_failures} mismatches"),
            ),
        ],
    }
}

/// The three analytic NLP fixtures.
pub fn sqp_suite() -> SuiteReport {
    let mut checks = Vec::new();
    let no_rows = |_: &[f64]| Vec::new();

    let equality = FnNlp {
        dimension: 2,
        objective: |d: &[f64]| d[0] * d[0] + d[1] * d[1],
        inequality: no_rows,
        equality: |d: &[f64]| vec![d[0] + d[1] - 1.0],
    };
    let report = solve(&equality, &[3.0, -2.0], &SolveOptions::default());
    checks.push(match report {
        Ok(r) => CheckResult::new(
            "min x1^2+x2^2 s.t. x1+x2=1 reaches (0.5, 0.5)",
            r.converged
                && r.iterations <= 20
                && (r.solution.d[0] - 0.5).abs() <= 1e-6
                && (r.solution.d[1] - 0.5).abs() <= 1e-6
                && r.kkt_residual_norm <= 1e-6,
            format!(
                "d = ({:.8}, {:.8}), residual {:.2e}, {} iterations",
                r.solution.d[0], r.solution.d[1], r.kkt_residual_norm, r.iterations
            ),
        ),
        Err(e) => CheckResult::new("equality fixture", false, e.to_string()),
    });

    let inequality = FnNlp {
        dimension: 1,
        objective: |d: &[f64]| (d[0] - 2.0) * (d[0] - 2.0),
        inequality: |d: &[f64]| vec![d[0] - 1.0],
        equality: no_rows,
    };
    let report = solve(&inequality, &[0.0], &SolveOptions::default());
    checks.push(match report {
        Ok(r) => CheckResult::new(
            "min (x-2)^2 s.t. x<=1 reaches x=1 with mu=2",
            r.converged
                && (r.solution.d[0] - 1.0).abs() <= 1e-6
                && (r.solution.mu[0] - 2.0).abs() <= 1e-6,
            format!("x = {:.8}, mu = {:.8}", r.solution.d[0], r.solution.mu[0]),
        ),
        Err(e) => CheckResult::new("inequality fixture", false, e.to_string()),
    });

    let rosenbrock = FnNlp {
        dimension: 2,
        objective: |d: &[f64]| 100.0 * (d[1] - d[0] * d[0]).powi(2) + (1.0 - d[0]).powi(2),
        inequality: no_rows,
        equality: no_rows,
    };
    let options = SolveOptions {
        max_iterations: 200,
        ..SolveOptions::default()
    };
    let report = solve(&rosenbrock, &[-1.2, 1.0], &options);
    checks.push(match report {
        Ok(r) => CheckResult::new(
            "Rosenbrock from (-1.2, 1) reaches (1, 1)",
            r.converged
                && r.iterations <= 200
                && (r.solution.d[0] - 1.0).abs() <= 1e-4
                && (r.solution.d[1] - 1.0).abs() <= 1e-4,
            format!(
                "d = ({:.6}, {:.6}) after {} iterations",
                r.solution.d[0], r.solution.d[1], r.iterations
            ),
        ),
        Err(e) => CheckResult::new("Rosenbrock fixture", false, e.to_string()),
    });

    SuiteReport {
        suite: "sqp",
        checks,
    }
}

/// ZDT1 convergence: five seeds, mean front distance to the analytic curve
/// below 0.01 on every seed.
pub fn zdt1_suite() -> SuiteReport {
    let mut checks = Vec::new();
    for seed in 1..=5u64 {
        let params = GaParams {
            population_size: 100,
            offspring_size: 100,
            max_generations: 250,
            seed,
            ..GaParams::default()
        };
        match evolve(&Zdt1::default(), &params) {
            Ok(outcome) => {
                let points: Vec<[f64; 2]> = outcome
                    .front
                    .iter()
                    .map(|i| [i.objectives[0], i.objectives[1]])
                    .collect();
                let distance =
                    benchmarks::mean_distance_to_front(&points, Zdt1::front, (0.0, 1.0));
                checks.push(CheckResult::new(
                    format!("ZDT1 seed {seed}: mean front distance < 0.01"),
                    distance < 0.01,
                    format!("distance {distance:.5}, front size {}", points.len()),
                ));
            }
            Err(e) => checks.push(CheckResult::new(
                format!("ZDT1 seed {seed}"),
                false,
                e.to_string(),
            )),
        }
    }
    SuiteReport {
        suite: "zdt1",
        checks,
    }
}

/// Schaffer N1 is low-dimensional enough for a quick end-to-end check of
/// front convergence and coverage.
pub fn schaffer_suite() -> SuiteReport {
    let params = GaParams {
        population_size: 100,
        offspring_size: 100,
        max_generations: 100,
        seed: 11,
        ..GaParams::default()
    };
    let mut checks = Vec::new();
    match evolve(&SchafferN1::default(), &params) {
        Ok(outcome) => {
            let points: Vec<[f64; 2]> = outcome
                .front
                .iter()
                .map(|i| [i.objectives[0], i.objectives[1]])
                .collect();
            let distance =
                benchmarks::mean_distance_to_front(&points, SchafferN1::front, (0.0, 4.0));
            checks.push(CheckResult::new(
                "Schaffer N1: mean front distance < 0.01",
                distance < 0.01,
                format!("distance {distance:.5}"),
            ));
            let f1_min = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
            let f1_max = points.iter().map(|p| p[0]).fold(0.0f64, f64::max);
            checks.push(CheckResult::new(
                "Schaffer N1: front spans both extremes",
                f1_min < 0.2 && f1_max > 3.5,
                format!("f1 range [{f1_min:.3}, {f1_max:.3}]"),
            ));
        }
        Err(e) => checks.push(CheckResult::new("Schaffer N1", false, e.to_string())),
    }
    SuiteReport {
        suite: "schaffer",
        checks,
    }
}

/// Iteration traces of the three fixtures, for verbose diagnostics.
pub fn sqp_fixture_traces() -> Vec<(String, Vec<crate::sqp::IterationRecord>)> {
    let no_rows = |_: &[f64]| Vec::new();
    let mut out = Vec::new();

    let equality = FnNlp {
        dimension: 2,
        objective: |d: &[f64]| d[0] * d[0] + d[1] * d[1],
        inequality: no_rows,
        equality: |d: &[f64]| vec![d[0] + d[1] - 1.0],
    };
    if let Ok(r) = solve(&equality, &[3.0, -2.0], &SolveOptions::default()) {
        out.push(("equality-constrained quadratic".to_string(), r.trace));
    }

    let inequality = FnNlp {
        dimension: 1,
        objective: |d: &[f64]| (d[0] - 2.0) * (d[0] - 2.0),
        inequality: |d: &[f64]| vec![d[0] - 1.0],
        equality: no_rows,
    };
    if let Ok(r) = solve(&inequality, &[0.0], &SolveOptions::default()) {
        out.push(("bound quadratic".to_string(), r.trace));
    }

    let rosenbrock = FnNlp {
        dimension: 2,
        objective: |d: &[f64]| 100.0 * (d[1] - d[0] * d[0]).powi(2) + (1.0 - d[0]).powi(2),
        inequality: no_rows,
        equality: no_rows,
    };
    let options = SolveOptions {
        max_iterations: 200,
        ..SolveOptions::default()
    };
    if let Ok(r) = solve(&rosenbrock, &[-1.2, 1.0], &options) {
        out.push(("Rosenbrock".to_string(), r.trace));
    }
    out
}
