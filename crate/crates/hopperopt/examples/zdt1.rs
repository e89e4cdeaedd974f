//! Runs the genetic engine on the ZDT1 benchmark and reports how close the
//! final front sits to the analytic curve f2 = 1 - sqrt(f1).
//!
//!     cargo run --release --example zdt1 [seed]

use hopperopt::benchmarks::{mean_distance_to_front, Zdt1};
use hopperopt::nsga2::{evolve, GaParams};

fn main() {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1u64);
    let params = GaParams {
        population_size: 100,
        offspring_size: 100,
        max_generations: 250,
        seed,
        ..GaParams::default()
    };

    let outcome = evolve(&Zdt1::default(), &params).expect("unconstrained benchmark");
    let points: Vec<[f64; 2]> = outcome
        .front
        .iter()
        .map(|i| [i.objectives[0], i.objectives[1]])
        .collect();
    let distance = mean_distance_to_front(&points, Zdt1::front, (0.0, 1.0));

    println!(
        "seed {seed}: {} evaluations, front size {}",
        outcome.evaluations,
        points.len()
    );
    println!("mean distance to the analytic front: {distance:.5}");

    let mut sorted = points.clone();
    sorted.sort_by(|a, b| a[0].total_cmp(&b[0]));
    println!("\n{:>8} {:>8} {:>8}", "f1", "f2", "f2*");
    for p in sorted.iter().step_by(sorted.len().max(10) / 10) {
        println!("{:8.4} {:8.4} {:8.4}", p[0], p[1], Zdt1::front(p[0]));
    }
}
