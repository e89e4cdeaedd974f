//! The elitist evolution loop: seeded uniform initialization, penalized
//! evaluation, ranking, crowded tournaments, crossover, mutation and
//! front-by-front survival of the combined parent/offspring pool.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::operators::{blx_crossover, crowded_tournament, nonuniform_mutate};
use super::sort::rank_and_crowd;
use super::{penalize, DesignVector, EvaluationError, EvolveError, GaParams, Individual, Problem};

/// Result of a full run.
#[derive(Debug, Clone)]
pub struct EvolveOutcome {
    /// Parent population after the last generation, ranked and crowded.
    pub final_population: Vec<Individual>,
    /// Rank-1 members of the final population.
    pub front: Vec<Individual>,
    /// Parent population of every generation, index 0 being the initial one.
    pub history: Vec<Vec<Individual>>,
    /// Total number of callback evaluations performed.
    pub evaluations: u64,
}

fn evaluate_batch<P: Problem>(
    problem: &P,
    xs: Vec<DesignVector>,
    generation: usize,
    params: &GaParams,
) -> Result<Vec<Individual>, EvolveError> {
    let results: Vec<Result<(Vec<f64>, f64), EvaluationError>> = xs
        .par_iter()
        .map(|x| {
            let (objectives, violation) = problem.evaluate(x)?;
            if objectives.iter().any(|f| !f.is_finite()) || !violation.is_finite() {
                return Err(EvaluationError("non-finite objective or violation".into()));
            }
            if violation < 0.0 {
                return Err(EvaluationError("negative constraint violation".into()));
            }
            Ok((objectives, violation))
        })
        .collect();

    let mut individuals = Vec::with_capacity(xs.len());
    for (index, (x, result)) in xs.into_iter().zip(results).enumerate() {
        let (objectives, violation) = result.map_err(|source| EvolveError::Evaluation {
            generation,
            index,
            source,
        })?;
        let penalized = penalize(&objectives, violation, params.penalty);
        individuals.push(Individual {
            x,
            objectives,
            violation,
            penalized,
            rank: 0,
            crowding: 0.0,
        });
    }
    Ok(individuals)
}

/// Elitist survival: ranks the combined pool, admits whole fronts in rank
/// order and fills the remainder from the first overflowing front in
/// descending crowding order.
pub fn survival_select(mut combined: Vec<Individual>, n: usize) -> Vec<Individual> {
    assert!(combined.len() >= n, "cannot select {n} from {}", combined.len());
    let partition = rank_and_crowd(&mut combined);

    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    for front in &partition.fronts {
        if chosen.len() + front.len() <= n {
            chosen.extend_from_slice(front);
            if chosen.len() == n {
                break;
            }
        } else {
            let mut last = front.clone();
            // stable sort keeps index order among exact crowding ties
            last.sort_by(|&a, &b| combined[b].crowding.total_cmp(&combined[a].crowding));
            last.truncate(n - chosen.len());
            chosen.extend_from_slice(&last);
            break;
        }
    }

    let mut keep = vec![false; combined.len()];
    for &i in &chosen {
        keep[i] = true;
    }
    let mut survivors: Vec<Individual> = combined
        .into_iter()
        .zip(keep)
        .filter_map(|(ind, k)| k.then_some(ind))
        .collect();
    // fronts were walked in rank order, so survivors are already rank-sorted;
    // re-sorting keeps that explicit after the retain above
    survivors.sort_by_key(|ind| ind.rank);
    survivors
}

/// Runs the full constrained NSGA-II loop against `problem`.
///
/// All stochastic decisions are drawn on the calling thread in a fixed
/// canonical order (selection, crossover, mutation; individual-major), so
/// concurrent evaluation cannot perturb the stream: identical seeds and
/// parameters give bit-identical histories.
pub fn evolve<P: Problem>(problem: &P, params: &GaParams) -> Result<EvolveOutcome, EvolveError> {
    params.validate()?;
    let template = problem.template();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut evaluations = 0u64;

    let initial: Vec<DesignVector> = (0..params.population_size)
        .map(|_| DesignVector::sample_uniform(&template, &mut rng))
        .collect();
    evaluations += initial.len() as u64;
    let mut population = evaluate_batch(problem, initial, 0, params)?;
    rank_and_crowd(&mut population);

    let mut history: Vec<Vec<Individual>> = Vec::with_capacity(params.max_generations + 1);

    for t in 0..params.max_generations {
        history.push(population.clone());

        let mut offspring_x: Vec<DesignVector> = Vec::with_capacity(params.offspring_size);
        for _ in 0..params.offspring_size {
            let first = pick_parent(&population, &mut rng);
            let second = pick_parent(&population, &mut rng);
            let mut child = if rng.random::<f64>() < params.crossover_probability {
                blx_crossover(&population[first].x, &population[second].x, params.blx_alpha, &mut rng)
            } else {
                population[first].x.clone()
            };
            child = nonuniform_mutate(&child, t, params, &mut rng);
            offspring_x.push(child);
        }

        evaluations += offspring_x.len() as u64;
        let offspring = evaluate_batch(problem, offspring_x, t + 1, params)?;

        let mut combined = population;
        combined.extend(offspring);
        population = survival_select(combined, params.population_size);
    }
    history.push(population.clone());

    let front: Vec<Individual> = population.iter().filter(|i| i.rank == 1).cloned().collect();
    Ok(EvolveOutcome {
        final_population: population,
        front,
        history,
        evaluations,
    })
}

fn pick_parent<R: Rng>(population: &[Individual], rng: &mut R) -> usize {
    let i = rng.random_range(0..population.len());
    let j = rng.random_range(0..population.len());
    let winner = crowded_tournament(&population[i], &population[j], rng);
    if std::ptr::eq(winner, &population[i]) {
        i
    } else {
        j
    }
}
