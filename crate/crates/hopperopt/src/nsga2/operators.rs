//! Genetic operators: crowded binary tournament, BLX-alpha crossover and
//! non-uniform mutation.

use rand::Rng;

use super::{DesignVector, GaParams, Individual};

/// Crowded binary tournament: better rank wins; at equal rank the larger
/// crowding distance wins; on an exact tie the winner is drawn uniformly.
pub fn crowded_tournament<'a, R: Rng>(
    a: &'a Individual,
    b: &'a Individual,
    rng: &mut R,
) -> &'a Individual {
    if a.rank != b.rank {
        return if a.rank < b.rank { a } else { b };
    }
    if a.crowding != b.crowding {
        return if a.crowding > b.crowding { a } else { b };
    }
    if rng.random::<bool>() {
        a
    } else {
        b
    }
}

/// BLX-alpha blend crossover. Per coordinate the child is
/// `(1 - gamma) * p1 + gamma * p2` with `gamma = (1 + 2*alpha) * u - alpha`
/// and `u` uniform in [0, 1). The child is clamped to the bounds and integer
/// coordinates are rounded afterwards.
pub fn blx_crossover<R: Rng>(
    p1: &DesignVector,
    p2: &DesignVector,
    alpha: f64,
    rng: &mut R,
) -> DesignVector {
    debug_assert_eq!(p1.lower, p2.lower);
    debug_assert_eq!(p1.upper, p2.upper);
    debug_assert_eq!(p1.integrality, p2.integrality);

    let mut child = p1.clone();
    for j in 0..child.values.len() {
        let u: f64 = rng.random();
        let gamma = (1.0 + 2.0 * alpha) * u - alpha;
        child.values[j] = (1.0 - gamma) * p1.values[j] + gamma * p2.values[j];
    }
    child.repair();
    child
}

/// Non-uniform mutation with a generation-shrinking step:
/// `x' = x + tau * (upper - lower) * (1 - u^((1 - t/t_max)^b))` applied per
/// selected coordinate, with `tau` a fair sign and `u` uniform in [0, 1).
/// At `t = t_max` the perturbation magnitude is exactly zero.
pub fn nonuniform_mutate<R: Rng>(
    x: &DesignVector,
    t: usize,
    params: &GaParams,
    rng: &mut R,
) -> DesignVector {
    debug_assert!(t <= params.max_generations);
    let n = x.values.len();
    let p_mut = params
        .mutation_probability
        .unwrap_or(1.0 / n.max(1) as f64);
    let schedule = (1.0 - t as f64 / params.max_generations as f64).powf(params.mutation_b);

    let mut out = x.clone();
    for j in 0..n {
        if rng.random::<f64>() >= p_mut {
            continue;
        }
        let tau = if rng.random::<bool>() { 1.0 } else { -1.0 };
        let u: f64 = rng.random();
        let step = (x.upper[j] - x.lower[j]) * (1.0 - u.powf(schedule));
        out.values[j] += tau * step;
    }
    out.repair();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn real_vector(values: Vec<f64>, lower: f64, upper: f64) -> DesignVector {
        let n = values.len();
        DesignVector {
            values,
            integrality: vec![false; n],
            lower: vec![lower; n],
            upper: vec![upper; n],
        }
    }

    fn ranked(rank: usize, crowding: f64) -> Individual {
        Individual {
            x: real_vector(vec![0.0], -1.0, 1.0),
            objectives: vec![0.0],
            violation: 0.0,
            penalized: vec![0.0],
            rank,
            crowding,
        }
    }

    #[test]
    fn tournament_prefers_better_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = ranked(1, 0.0);
        let b = ranked(2, f64::INFINITY);
        for _ in 0..10 {
            assert_eq!(crowded_tournament(&a, &b, &mut rng).rank, 1);
        }
    }

    #[test]
    fn tournament_breaks_rank_tie_by_crowding() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = ranked(1, f64::INFINITY);
        let b = ranked(1, 2.0);
        for _ in 0..10 {
            assert!(crowded_tournament(&a, &b, &mut rng).crowding.is_infinite());
        }
    }

    #[test]
    fn tournament_full_tie_is_a_fair_coin() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut a = ranked(1, 1.0);
        let b = ranked(1, 1.0);
        a.x.values[0] = 0.5; // distinguish the winners
        let trials = 10_000;
        let mut a_wins = 0usize;
        for _ in 0..trials {
            if crowded_tournament(&a, &b, &mut rng).x.values[0] == 0.5 {
                a_wins += 1;
            }
        }
        // three-sigma band around 0.5 for a fair Bernoulli sample
        let sigma = 0.5 / (trials as f64).sqrt();
        let freq = a_wins as f64 / trials as f64;
        assert!((freq - 0.5).abs() < 3.0 * sigma, "tie frequency {freq}");
    }

    #[test]
    fn blx_offspring_tracks_parent_spread() {
        // child - p1 = gamma * (p2 - p1), so shrinking the parent gap shrinks
        // the offspring gap by the same factor
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p1 = real_vector(vec![0.2], 0.0, 1.0);
        let p2 = real_vector(vec![0.4], 0.0, 1.0);
        for _ in 0..100 {
            let child = blx_crossover(&p1, &p2, 0.5, &mut rng);
            let gamma = (child.values[0] - p1.values[0]) / (p2.values[0] - p1.values[0]);
            assert!((-0.5..=1.5).contains(&gamma));
        }
    }

    #[test]
    fn blx_zero_alpha_brackets_parents() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p1 = real_vector(vec![0.3], 0.0, 1.0);
        let p2 = real_vector(vec![0.7], 0.0, 1.0);
        for _ in 0..200 {
            let child = blx_crossover(&p1, &p2, 0.0, &mut rng);
            assert!(child.values[0] >= 0.3 - 1e-12 && child.values[0] <= 0.7 + 1e-12);
        }
    }

    #[test]
    fn mutation_at_final_generation_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let params = GaParams {
            max_generations: 50,
            mutation_probability: Some(1.0),
            ..GaParams::default()
        };
        let x = real_vector(vec![0.25, -0.5, 0.9], -1.0, 1.0);
        let y = nonuniform_mutate(&x, 50, &params, &mut rng);
        assert_eq!(x.values, y.values);
    }

    #[test]
    fn mutation_magnitude_shrinks_with_generation() {
        // Monte-Carlo check of the shrinking schedule: the mean |dx| over
        // many seeded draws must be non-increasing in t.
        let params = GaParams {
            max_generations: 10,
            mutation_probability: Some(1.0),
            ..GaParams::default()
        };
        let x = real_vector(vec![0.0], -1.0, 1.0);
        let mut last = f64::INFINITY;
        for t in [0usize, 2, 4, 6, 8, 10] {
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let mut total = 0.0;
            let draws = 100_000;
            for _ in 0..draws {
                let y = nonuniform_mutate(&x, t, &params, &mut rng);
                total += (y.values[0] - x.values[0]).abs();
            }
            let mean = total / draws as f64;
            assert!(
                mean <= last + 1e-9,
                "mean step grew from {last} to {mean} at t={t}"
            );
            last = mean;
        }
    }

    #[test]
    fn operators_respect_bounds_and_integrality() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let template = DesignVector {
            values: vec![0.5, 3.0],
            integrality: vec![false, true],
            lower: vec![0.0, 1.0],
            upper: vec![1.0, 8.0],
        };
        let other = DesignVector {
            values: vec![0.9, 7.0],
            ..template.clone()
        };
        let params = GaParams {
            max_generations: 10,
            mutation_probability: Some(1.0),
            ..GaParams::default()
        };
        for t in 0..=10 {
            let child = blx_crossover(&template, &other, 0.5, &mut rng);
            assert!(child.is_valid());
            let mutant = nonuniform_mutate(&child, t, &params, &mut rng);
            assert!(mutant.is_valid());
        }
    }
}
