//! Property tests over the engine's core invariants.

use proptest::prelude::*;

use hopperopt::benchmarks::reference;
use hopperopt::nsga2::{
    self, blx_crossover, nonuniform_mutate, DesignVector, GaParams, Individual,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn costs_strategy() -> impl Strategy<Value = Vec<Vec<f64>>> {
    // populations up to 50 with 2..=4 objectives on a coarse lattice so
    // exact ties occur
    (2usize..=4, 1usize..=50).prop_flat_map(|(k, n)| {
        proptest::collection::vec(
            proptest::collection::vec((0u8..=16).prop_map(|v| v as f64 / 4.0), k),
            n,
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sort_matches_brute_force_partition(costs in costs_strategy()) {
        let mut population: Vec<Individual> = costs
            .iter()
            .map(|c| Individual {
                x: DesignVector { values: vec![], integrality: vec![], lower: vec![], upper: vec![] },
                objectives: c.clone(),
                violation: 0.0,
                penalized: c.clone(),
                rank: 0,
                crowding: 0.0,
            })
            .collect();
        let mut fronts = nsga2::non_dominated_sort(&mut population).fronts;
        for front in &mut fronts {
            front.sort_unstable();
        }
        prop_assert_eq!(fronts, reference::brute_force_fronts(&costs));
    }

    #[test]
    fn partition_covers_population_disjointly(costs in costs_strategy()) {
        let mut population: Vec<Individual> = costs
            .iter()
            .map(|c| Individual {
                x: DesignVector { values: vec![], integrality: vec![], lower: vec![], upper: vec![] },
                objectives: c.clone(),
                violation: 0.0,
                penalized: c.clone(),
                rank: 0,
                crowding: 0.0,
            })
            .collect();
        let partition = nsga2::non_dominated_sort(&mut population);
        let mut seen = vec![false; costs.len()];
        for front in &partition.fronts {
            for &i in front {
                prop_assert!(!seen[i], "index {} assigned twice", i);
                seen[i] = true;
            }
        }
        prop_assert!(seen.iter().all(|&s| s));
        // no member may be dominated by a peer of its own front
        for front in &partition.fronts {
            for &i in front {
                for &j in front {
                    prop_assert!(!nsga2::dominates(&costs[j], &costs[i]));
                }
            }
        }
    }

    #[test]
    fn operators_preserve_bounds_and_integrality(
        seed in 0u64..1000,
        values in proptest::collection::vec(-10.0f64..10.0, 2..8),
        t_frac in 0.0f64..=1.0,
    ) {
        let n = values.len();
        let template = DesignVector {
            values: values.iter().map(|v| v.clamp(-5.0, 5.0).round()).collect(),
            integrality: (0..n).map(|j| j % 2 == 0).collect(),
            lower: vec![-5.0; n],
            upper: vec![5.0; n],
        };
        let mut fixed = template.clone();
        fixed.repair();
        let other = {
            let mut o = fixed.clone();
            o.values.reverse();
            o.repair();
            o
        };
        let params = GaParams {
            max_generations: 100,
            mutation_probability: Some(1.0),
            ..GaParams::default()
        };
        let t = (t_frac * 100.0) as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let child = blx_crossover(&fixed, &other, 0.5, &mut rng);
        prop_assert!(child.is_valid(), "crossover escaped: {:?}", child.values);
        let mutant = nonuniform_mutate(&child, t, &params, &mut rng);
        prop_assert!(mutant.is_valid(), "mutation escaped: {:?}", mutant.values);
    }

    #[test]
    fn penalize_identity_and_inflation(
        objectives in proptest::collection::vec(-100.0f64..100.0, 1..5),
        violation in 0.0f64..1000.0,
    ) {
        let feasible = nsga2::penalize(&objectives, 0.0, 1e6);
        prop_assert_eq!(&feasible, &objectives);
        if violation > 0.0 {
            let penalized = nsga2::penalize(&objectives, violation, 1e6);
            for (j, f) in penalized.iter().zip(&objectives) {
                prop_assert!(j > f);
            }
        }
    }
}
