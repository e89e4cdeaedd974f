//! Drives the genetic engine over the system problem and digests run
//! histories into selection tallies.

use crate::nsga2::{evolve, EvolveError, GaParams, Individual};

use super::evaluate::{EvaluationRecord, SystemProblem};
use super::decode;

/// One final-front member with its full evaluation record.
#[derive(Debug, Clone)]
pub struct FrontMember {
    pub individual: Individual,
    pub record: EvaluationRecord,
}

/// Result of a system optimization run: the non-dominated set with budget
/// breakdowns, the raw per-generation population history and its
/// per-generation option tallies.
#[derive(Debug, Clone)]
pub struct ParetoFront {
    pub members: Vec<FrontMember>,
    pub history: Vec<Vec<Individual>>,
    pub selection: Vec<OptionTally>,
    pub evaluations: u64,
}

/// Count of one categorical option value in one generation's parents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptionTally {
    pub generation: usize,
    pub variable: &'static str,
    pub option: &'static str,
    pub count: usize,
}

/// Per-generation raw tallies of the mobility, hop-subtype, propellant and
/// power-system choices in the parent population.
pub fn selection_history(history: &[Vec<Individual>]) -> Vec<OptionTally> {
    use crate::disciplines::{HopSubtype, MobilityMode, PowerType, Propellant};
    let mut tallies = Vec::new();
    for (generation, population) in history.iter().enumerate() {
        let mut mobility = [0usize; 3];
        let mut subtype = [0usize; 3];
        let mut propellant = [0usize; 3];
        let mut power = [0usize; 2];
        for individual in population {
            let config = decode(&individual.x.values).expect("engine emits valid vectors");
            mobility[(config.mobility.mode.code() - 1) as usize] += 1;
            subtype[(config.mobility.hop_subtype.code() - 1) as usize] += 1;
            propellant[(config.mobility.propellant.code() - 1) as usize] += 1;
            power[(config.power_type.code() - 1) as usize] += 1;
        }
        for mode in MobilityMode::ALL {
            tallies.push(OptionTally {
                generation,
                variable: "mobility",
                option: mode.name(),
                count: mobility[(mode.code() - 1) as usize],
            });
        }
        for s in HopSubtype::ALL {
            tallies.push(OptionTally {
                generation,
                variable: "hop_subtype",
                option: s.name(),
                count: subtype[(s.code() - 1) as usize],
            });
        }
        for p in Propellant::ALL {
            tallies.push(OptionTally {
                generation,
                variable: "propellant",
                option: p.name(),
                count: propellant[(p.code() - 1) as usize],
            });
        }
        for p in PowerType::ALL {
            tallies.push(OptionTally {
                generation,
                variable: "power",
                option: p.name(),
                count: power[(p.code() - 1) as usize],
            });
        }
    }
    tallies
}

/// Final tally of one variable/option pair, as a fraction of the last
/// generation's parents.
pub fn final_share(selection: &[OptionTally], variable: &str, option: &str) -> f64 {
    let last_generation = selection.iter().map(|t| t.generation).max().unwrap_or(0);
    let of_variable: Vec<&OptionTally> = selection
        .iter()
        .filter(|t| t.generation == last_generation && t.variable == variable)
        .collect();
    let total: usize = of_variable.iter().map(|t| t.count).sum();
    let hit: usize = of_variable
        .iter()
        .filter(|t| t.option == option)
        .map(|t| t.count)
        .sum();
    if total == 0 {
        0.0
    } else {
        hit as f64 / total as f64
    }
}

/// Runs the full system-level optimization and re-evaluates the final front
/// into complete records (evaluation is pure, so this is exact replay).
pub fn run_system_optimization(
    problem: &SystemProblem,
    ga: &GaParams,
) -> Result<ParetoFront, EvolveError> {
    let outcome = evolve(problem, ga)?;
    let members = outcome
        .front
        .iter()
        .map(|individual| {
            let record = problem
                .record(&individual.x.values)
                .expect("front member re-evaluation cannot fail");
            FrontMember {
                individual: individual.clone(),
                record,
            }
        })
        .collect();
    let selection = selection_history(&outcome.history);
    Ok(ParetoFront {
        members,
        history: outcome.history,
        selection,
        evaluations: outcome.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cots::Inventory;
    use crate::disciplines::{environment_lookup, MissionSpec, ModelParams, Phase};
    use crate::nsga2::rank_and_crowd;
    use crate::sysopt::{
        init_population, ExtraConstraints, ObjectiveWeights, SystemBounds,
    };
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn small_problem() -> SystemProblem {
        let params = ModelParams::default();
        let env = environment_lookup(&params, "moon", "surface").unwrap();
        SystemProblem {
            mission: MissionSpec {
                phases: vec![Phase {
                    distance_m: 500.0,
                    duration_hr: 5.0,
                    environment: env,
                }],
                robot_count: 1,
            },
            inventory: Inventory::embedded_default(),
            bounds: SystemBounds::default(),
            weights: ObjectiveWeights::default(),
            extra: ExtraConstraints::default(),
            params,
        }
    }

    #[test]
    fn tallies_sum_to_population_size_per_variable() {
        let problem = small_problem();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let population: Vec<crate::nsga2::Individual> =
            init_population(40, &problem.bounds, &problem.inventory, &mut rng)
                .into_iter()
                .map(|x| {
                    let record = problem.record(&x.values).unwrap();
                    crate::nsga2::Individual {
                        x,
                        objectives: record.objectives.to_vec(),
                        violation: record.violation,
                        penalized: record.objectives.to_vec(),
                        rank: 1,
                        crowding: 0.0,
                    }
                })
                .collect();
        let mut ranked = population;
        rank_and_crowd(&mut ranked);
        let tallies = selection_history(&[ranked]);
        for variable in ["mobility", "hop_subtype", "propellant", "power"] {
            let total: usize = tallies
                .iter()
                .filter(|t| t.variable == variable)
                .map(|t| t.count)
                .sum();
            assert_eq!(total, 40, "variable {variable}");
        }
    }

    #[test]
    fn generation_zero_tallies_are_roughly_uniform() {
        // chi-square against the uniform initializer at a loose threshold
        let problem = small_problem();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 3000usize;
        let population: Vec<crate::nsga2::Individual> =
            init_population(n, &problem.bounds, &problem.inventory, &mut rng)
                .into_iter()
                .map(|x| crate::nsga2::Individual {
                    x,
                    objectives: vec![0.0],
                    violation: 0.0,
                    penalized: vec![0.0],
                    rank: 1,
                    crowding: 0.0,
                })
                .collect();
        let tallies = selection_history(&[population]);
        for (variable, k) in [("mobility", 3.0), ("propellant", 3.0), ("power", 2.0)] {
            let expected = n as f64 / k;
            let chi2: f64 = tallies
                .iter()
                .filter(|t| t.variable == variable)
                .map(|t| (t.count as f64 - expected).powi(2) / expected)
                .sum();
            // 99.9th percentile of chi-square with 2 dof is 13.8, with 1 dof 10.8
            assert!(chi2 < 14.0, "{variable} chi2 = {chi2}");
        }
    }
}
