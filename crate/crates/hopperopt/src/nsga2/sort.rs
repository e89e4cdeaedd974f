//! Fast non-dominated sorting and crowding distance on penalized costs.

use super::Individual;

/// Ordered partition of a population into non-dominated fronts.
/// Front 0 holds the indices of rank-1 individuals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontPartition {
    pub fronts: Vec<Vec<usize>>,
}

impl FrontPartition {
    pub fn num_fronts(&self) -> usize {
        self.fronts.len()
    }
}

/// True iff `a` is no worse than `b` in every component and strictly better
/// in at least one (minimization).
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    assert_eq!(a.len(), b.len(), "cost vectors must share one length");
    let mut strictly_better = false;
    for (&ai, &bi) in a.iter().zip(b) {
        if ai > bi {
            return false;
        }
        if ai < bi {
            strictly_better = true;
        }
    }
    strictly_better
}

/// Fast non-dominated sort over the individuals' penalized costs.
///
/// Assigns `rank` (front index + 1) on every individual and returns the
/// partition. An empty population yields an empty partition.
pub fn non_dominated_sort(population: &mut [Individual]) -> FrontPartition {
    let n = population.len();
    if n == 0 {
        return FrontPartition { fronts: Vec::new() };
    }

    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut domination_count = vec![0usize; n];
    let mut current: Vec<usize> = Vec::new();

    for i in 0..n {
        for j in (i + 1)..n {
            if dominates(&population[i].penalized, &population[j].penalized) {
                dominated_by[i].push(j);
                domination_count[j] += 1;
            } else if dominates(&population[j].penalized, &population[i].penalized) {
                dominated_by[j].push(i);
                domination_count[i] += 1;
            }
        }
        if domination_count[i] == 0 {
            current.push(i);
        }
    }

    let mut fronts: Vec<Vec<usize>> = Vec::new();
    while !current.is_empty() {
        let mut next: Vec<usize> = Vec::new();
        for &p in &current {
            population[p].rank = fronts.len() + 1;
            for &q in &dominated_by[p] {
                domination_count[q] -= 1;
                if domination_count[q] == 0 {
                    next.push(q);
                }
            }
        }
        fronts.push(std::mem::take(&mut current));
        current = next;
    }

    FrontPartition { fronts }
}

/// Crowding distance for one front of K-objective cost vectors.
///
/// Boundary solutions along every objective receive +infinity; interior ones
/// accumulate the normalized gap between their sorted neighbours. Objectives
/// with zero spread contribute nothing.
pub fn crowding_distance(front_costs: &[Vec<f64>]) -> Vec<f64> {
    let l = front_costs.len();
    if l == 0 {
        return Vec::new();
    }
    let k = front_costs[0].len();
    let mut distance = vec![0.0f64; l];
    if l <= 2 {
        return vec![f64::INFINITY; l];
    }

    for m in 0..k {
        let column: Vec<f64> = front_costs.iter().map(|row| row[m]).collect();
        // fresh index order per objective: stable sort then breaks cost
        // ties by original index, a fixed convention for tied columns
        let mut order: Vec<usize> = (0..l).collect();
        order.sort_by(|&a, &b| column[a].total_cmp(&column[b]));
        let min = column[order[0]];
        let max = column[order[l - 1]];
        distance[order[0]] = f64::INFINITY;
        distance[order[l - 1]] = f64::INFINITY;
        if max > min {
            for j in 1..(l - 1) {
                let gap = column[order[j + 1]] - column[order[j - 1]];
                distance[order[j]] += gap / (max - min);
            }
        }
    }
    distance
}

/// Computes ranks and crowding for a whole population in place and returns
/// the partition.
pub fn rank_and_crowd(population: &mut [Individual]) -> FrontPartition {
    let partition = non_dominated_sort(population);
    for front in &partition.fronts {
        let costs: Vec<Vec<f64>> = front
            .iter()
            .map(|&i| population[i].penalized.clone())
            .collect();
        let dist = crowding_distance(&costs);
        for (&i, &d) in front.iter().zip(&dist) {
            population[i].crowding = d;
        }
    }
    partition
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nsga2::DesignVector;

    fn ind(costs: &[f64]) -> Individual {
        Individual {
            x: DesignVector {
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

    #[test]
    fn dominates_partial_order_examples() {
        assert!(dominates(&[1.0, 2.0], &[2.0, 3.0]));
        assert!(!dominates(&[1.0, 3.0], &[2.0, 2.0]));
        assert!(!dominates(&[1.0, 2.0], &[1.0, 2.0]));
    }

    #[test]
    fn sort_splits_simple_population() {
        let mut pop = vec![ind(&[1.0, 1.0]), ind(&[2.0, 2.0]), ind(&[1.5, 0.5])];
        let partition = non_dominated_sort(&mut pop);
        assert_eq!(partition.fronts, vec![vec![0, 2], vec![1]]);
        assert_eq!(pop[0].rank, 1);
        assert_eq!(pop[2].rank, 1);
        assert_eq!(pop[1].rank, 2);
    }

    #[test]
    fn single_individual_is_one_front() {
        let mut pop = vec![ind(&[3.0, 4.0, 5.0])];
        let partition = non_dominated_sort(&mut pop);
        assert_eq!(partition.fronts, vec![vec![0]]);
    }

    #[test]
    fn empty_population_yields_empty_partition() {
        let mut pop: Vec<Individual> = Vec::new();
        let partition = non_dominated_sort(&mut pop);
        assert!(partition.fronts.is_empty());
    }

    #[test]
    fn crowding_small_fronts_are_all_infinite() {
        assert_eq!(crowding_distance(&[vec![1.0, 2.0]]), vec![f64::INFINITY]);
        assert_eq!(
            crowding_distance(&[vec![1.0, 2.0], vec![2.0, 1.0]]),
            vec![f64::INFINITY, f64::INFINITY]
        );
    }

    #[test]
    fn crowding_middle_of_three() {
        let d = crowding_distance(&[vec![0.0, 1.0], vec![0.5, 0.5], vec![1.0, 0.0]]);
        assert!(d[0].is_infinite() && d[2].is_infinite());
        assert!((d[1] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn crowding_degenerate_objective_contributes_zero() {
        // second objective has zero spread
        let d = crowding_distance(&[
            vec![0.0, 1.0],
            vec![0.25, 1.0],
            vec![0.5, 1.0],
            vec![1.0, 1.0],
        ]);
        assert!((d[1] - 0.5).abs() < 1e-15);
        assert!((d[2] - 0.75).abs() < 1e-15);
    }
}
