//! Standard multi-objective test problems, quality metrics and the
//! independent reference implementations the validation suites compare
//! against.

use crate::nsga2::{DesignVector, EvaluationError, Problem};

/// ZDT1: 30-variable convex benchmark; the analytic Pareto front is
/// `f2 = 1 - sqrt(f1)` with `f1` in [0, 1].
pub struct Zdt1 {
    pub variables: usize,
}

impl Default for Zdt1 {
    fn default() -> Self {
        Self { variables: 30 }
    }
}

impl Zdt1 {
    pub fn objectives(x: &[f64]) -> [f64; 2] {
        let n = x.len();
        let f1 = x[0];
        let g = 1.0 + 9.0 / (n as f64 - 1.0) * x[1..].iter().sum::<f64>();
        let f2 = g * (1.0 - (f1 / g).sqrt());
        [f1, f2]
    }

    /// Analytic front value at a given `f1`.
    pub fn front(f1: f64) -> f64 {
        1.0 - f1.sqrt()
    }
}

impl Problem for Zdt1 {
    fn template(&self) -> DesignVector {
        DesignVector {
            values: vec![0.0; self.variables],
            integrality: vec![false; self.variables],
            lower: vec![0.0; self.variables],
            upper: vec![1.0; self.variables],
        }
    }

    fn num_objectives(&self) -> usize {
        2
    }

    fn evaluate(&self, x: &DesignVector) -> Result<(Vec<f64>, f64), EvaluationError> {
        Ok((Zdt1::objectives(&x.values).to_vec(), 0.0))
    }
}

/// Schaffer's first problem: `f1 = x^2`, `f2 = (x - 2)^2`; the front is
/// `f2 = (sqrt(f1) - 2)^2` for `f1` in [0, 4].
pub struct SchafferN1 {
    pub range: f64,
}

impl Default for SchafferN1 {
    fn default() -> Self {
        Self { range: 100.0 }
    }
}

impl SchafferN1 {
    pub fn front(f1: f64) -> f64 {
        (f1.sqrt() - 2.0).powi(2)
    }
}

impl Problem for SchafferN1 {
    fn template(&self) -> DesignVector {
        DesignVector {
            values: vec![0.0],
            integrality: vec![false],
            lower: vec![-self.range],
            upper: vec![self.range],
        }
    }

    fn num_objectives(&self) -> usize {
        2
    }

    fn evaluate(&self, x: &DesignVector) -> Result<(Vec<f64>, f64), EvaluationError> {
        let v = x.values[0];
        Ok((vec![v * v, (v - 2.0) * (v - 2.0)], 0.0))
    }
}

/// Binh-Korn: constrained two-objective benchmark with a known feasible
/// region (two circular constraints over a box).
pub struct BinhKorn;

impl Problem for BinhKorn {
    fn template(&self) -> DesignVector {
        DesignVector {
            values: vec![0.0, 0.0],
            integrality: vec![false, false],
            lower: vec![0.0, 0.0],
            upper: vec![5.0, 3.0],
        }
    }

    fn num_objectives(&self) -> usize {
        2
    }

    fn evaluate(&self, x: &DesignVector) -> Result<(Vec<f64>, f64), EvaluationError> {
        let (a, b) = (x.values[0], x.values[1]);
        let f = vec![
            4.0 * a * a + 4.0 * b * b,
            (a - 5.0) * (a - 5.0) + (b - 5.0) * (b - 5.0),
        ];
        let g = [
            (a - 5.0) * (a - 5.0) + b * b - 25.0,
            7.7 - (a - 8.0) * (a - 8.0) - (b + 3.0) * (b + 3.0),
        ];
        Ok((f, crate::nsga2::violation_total(&g, &[])))
    }
}

/// Mean distance from a set of 2-D cost points to a front curve sampled
/// densely; the standard generational-distance style convergence metric.
pub fn mean_distance_to_front(points: &[[f64; 2]], front: impl Fn(f64) -> f64, f1_range: (f64, f64)) -> f64 {
    let samples = 2000;
    let curve: Vec<[f64; 2]> = (0..=samples)
        .map(|i| {
            let f1 = f1_range.0 + (f1_range.1 - f1_range.0) * i as f64 / samples as f64;
            [f1, front(f1)]
        })
        .collect();
    let mut total = 0.0;
    for p in points {
        let nearest = curve
            .iter()
            .map(|c| ((p[0] - c[0]).powi(2) + (p[1] - c[1]).powi(2)).sqrt())
            .fold(f64::INFINITY, f64::min);
        total += nearest;
    }
    total / points.len() as f64
}

/// Dominated hypervolume of a minimization point set against a reference
/// point, by recursive slicing on the first objective. Points outside the
/// reference box contribute their clipped part; dominated points are
/// filtered at each level.
pub fn hypervolume(points: &[Vec<f64>], reference: &[f64]) -> f64 {
    let k = reference.len();
    assert!(points.iter().all(|p| p.len() == k));
    let clipped: Vec<Vec<f64>> = points
        .iter()
        .filter(|p| p.iter().zip(reference).all(|(a, r)| a < r))
        .cloned()
        .collect();
    hv_recursive(&nondominated(clipped), reference)
}

fn nondominated(points: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let mut keep: Vec<Vec<f64>> = Vec::new();
    'outer: for p in points {
        let mut i = 0;
        while i < keep.len() {
            if dominates_weak(&keep[i], &p) {
                continue 'outer;
            }
            if dominates_weak(&p, &keep[i]) {
                keep.swap_remove(i);
            } else {
                i += 1;
            }
        }
        keep.push(p);
    }
    keep
}

fn dominates_weak(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn hv_recursive(points: &[Vec<f64>], reference: &[f64]) -> f64 {
    let k = reference.len();
    if points.is_empty() {
        return 0.0;
    }
    if k == 1 {
        let best = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
        return (reference[0] - best).max(0.0);
    }
    // sort by the first objective and sweep slabs, recursing on the rest
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a][0].total_cmp(&points[b][0]));

    let mut volume = 0.0;
    let mut active: Vec<Vec<f64>> = Vec::new();
    for (rank, &i) in order.iter().enumerate() {
        let x0 = points[i][0];
        let x1 = order
            .get(rank + 1)
            .map(|&j| points[j][0])
            .unwrap_or(reference[0]);
        active.push(points[i][1..].to_vec());
        if x1 > x0 {
            let slice = hv_recursive(&nondominated(active.clone()), &reference[1..]);
            volume += (x1 - x0) * slice;
        }
    }
    volume
}

/// Reference implementations used as oracles by the validation suites.
/// They share nothing with the engine's sorting/crowding code paths.
pub mod reference {
    /// All-pairs non-dominated partition: index sets per front, O(N^2 K)
    /// per front peeling round.
    pub fn brute_force_fronts(costs: &[Vec<f64>]) -> Vec<Vec<usize>> {
        let n = costs.len();
        let dominates = |a: &[f64], b: &[f64]| {
            a.iter().zip(b).all(|(x, y)| x <= y) && a.iter().zip(b).any(|(x, y)| x < y)
        };
        let mut assigned = vec![false; n];
        let mut fronts = Vec::new();
        let mut remaining = n;
        while remaining > 0 {
            let mut front = Vec::new();
            for i in 0..n {
                if assigned[i] {
                    continue;
                }
                let dominated = (0..n).any(|j| {
                    j != i && !assigned[j] && dominates(&costs[j], &costs[i])
                });
                if !dominated {
                    front.push(i);
                }
            }
            for &i in &front {
                assigned[i] = true;
            }
            remaining -= front.len();
            fronts.push(front);
        }
        fronts
    }

    /// Direct crowding evaluation: per objective, sort, give the boundary
    /// infinite distance, accumulate the normalized neighbour gap.
    pub fn crowding_reference(front: &[Vec<f64>]) -> Vec<f64> {
        let l = front.len();
        if l == 0 {
            return Vec::new();
        }
        if l <= 2 {
            return vec![f64::INFINITY; l];
        }
        let k = front[0].len();
        let mut d = vec![0.0; l];
        for m in 0..k {
            let column: Vec<f64> = front.iter().map(|row| row[m]).collect();
            let mut idx: Vec<usize> = (0..l).collect();
            idx.sort_by(|&a, &b| column[a].total_cmp(&column[b]));
            let lo = column[idx[0]];
            let hi = column[idx[l - 1]];
            d[idx[0]] = f64::INFINITY;
            d[idx[l - 1]] = f64::INFINITY;
            if hi > lo {
                for j in 1..(l - 1) {
                    d[idx[j]] += (column[idx[j + 1]] - column[idx[j - 1]]) / (hi - lo);
                }
            }
        }
        d
    }
}
