//! Exercises the discipline-level SQP solver on three classic problems and
//! prints the iteration traces.
//!
//!     cargo run --release --example sqp_showcase

use hopperopt::sqp::{solve, Bounded, FnNlp, SolveOptions};

fn no_rows(_: &[f64]) -> Vec<f64> {
    Vec::new()
}

fn report(label: &str, r: &hopperopt::sqp::SqpReport) {
    println!("== {label}");
    println!(
        "   converged={} iterations={} objective={:.8} residual={:.2e}",
        r.converged, r.iterations, r.objective_value, r.kkt_residual_norm
    );
    println!(
        "   d = {:?}",
        r.solution.d.iter().map(|v| (v * 1e6).round() / 1e6).collect::<Vec<_>>()
    );
    if !r.solution.mu.is_empty() {
        println!("   mu = {:?}", r.solution.mu.as_slice());
    }
    if !r.solution.lambda.is_empty() {
        println!("   lambda = {:?}", r.solution.lambda.as_slice());
    }
}

fn main() {
    let options = SolveOptions::default();

    let equality = FnNlp {
        dimension: 2,
        objective: |d: &[f64]| d[0] * d[0] + d[1] * d[1],
        inequality: no_rows,
        equality: |d: &[f64]| vec![d[0] + d[1] - 1.0],
    };
    report(
        "min x1^2 + x2^2  s.t.  x1 + x2 = 1",
        &solve(&equality, &[3.0, -2.0], &options).unwrap(),
    );

    let inequality = FnNlp {
        dimension: 1,
        objective: |d: &[f64]| (d[0] - 2.0) * (d[0] - 2.0),
        inequality: |d: &[f64]| vec![d[0] - 1.0],
        equality: no_rows,
    };
    report(
        "min (x - 2)^2  s.t.  x <= 1",
        &solve(&inequality, &[0.0], &options).unwrap(),
    );

    let rosenbrock = FnNlp {
        dimension: 2,
        objective: |d: &[f64]| 100.0 * (d[1] - d[0] * d[0]).powi(2) + (1.0 - d[0]).powi(2),
        inequality: no_rows,
        equality: no_rows,
    };
    let r = solve(
        &rosenbrock,
        &[-1.2, 1.0],
        &SolveOptions {
            max_iterations: 200,
            ..options
        },
    )
    .unwrap();
    report("Rosenbrock from (-1.2, 1)", &r);
    println!("   last merit values:");
    for t in r.trace.iter().rev().take(5).rev() {
        println!(
            "     it {:>3}: f={:12.6e} residual={:.2e} alpha={:.3}",
            t.iteration, t.objective, t.residual_norm, t.step_scale
        );
    }

    // box bounds fold into inequality rows through the Bounded wrapper
    let boxed = Bounded {
        inner: FnNlp {
            dimension: 2,
            objective: |d: &[f64]| (d[0] - 3.0).powi(2) + (d[1] + 4.0).powi(2),
            inequality: no_rows,
            equality: no_rows,
        },
        lower: vec![0.0, -1.0],
        upper: vec![1.0, 1.0],
    };
    report(
        "box-constrained quadratic (optimum pinned to a corner)",
        &solve(&boxed, &[0.5, 0.0], &options).unwrap(),
    );
}
