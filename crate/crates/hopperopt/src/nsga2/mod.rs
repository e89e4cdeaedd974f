//! Elitist non-dominated sorting genetic algorithm for constrained
//! multi-objective problems over mixed real/integer variables.
//!
//! Constraints are handled with an additive penalty: each individual's raw
//! objectives are shifted by `penalty * violation`, and all ranking,
//! selection and survival decisions operate on the penalized costs. The
//! survival step is elitist: parents and offspring compete in a combined
//! pool and the next generation is filled front-by-front, with the last
//! partially admitted front truncated by crowding distance.

mod engine;
mod operators;
mod sort;

pub use engine::{evolve, survival_select, EvolveOutcome};
pub use operators::{blx_crossover, crowded_tournament, nonuniform_mutate};
pub use sort::{crowding_distance, dominates, non_dominated_sort, rank_and_crowd, FrontPartition};

use thiserror::Error;

/// A point in a mixed real/integer box-bounded design space.
///
/// Coordinates flagged in `integrality` always hold exact integer values;
/// every coordinate stays inside `[lower, upper]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignVector {
    pub values: Vec<f64>,
    pub integrality: Vec<bool>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl DesignVector {
    /// Builds a vector and checks the structural invariants.
    pub fn new(
        values: Vec<f64>,
        integrality: Vec<bool>,
        lower: Vec<f64>,
        upper: Vec<f64>,
    ) -> Result<Self, DesignVectorError> {
        let n = values.len();
        if integrality.len() != n || lower.len() != n || upper.len() != n {
            return Err(DesignVectorError::LengthMismatch);
        }
        for j in 0..n {
            if lower[j] > upper[j] {
                return Err(DesignVectorError::InvertedBounds { index: j });
            }
            if values[j] < lower[j] || values[j] > upper[j] {
                return Err(DesignVectorError::OutOfBounds { index: j });
            }
            if integrality[j] && values[j].fract() != 0.0 {
                return Err(DesignVectorError::NotIntegral { index: j });
            }
        }
        Ok(Self {
            values,
            integrality,
            lower,
            upper,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Clamps every coordinate into its bounds and rounds integral ones.
    /// Rounding happens after clamping, so an integral coordinate ends on
    /// the nearest in-bounds integer.
    pub fn repair(&mut self) {
        for j in 0..self.values.len() {
            let mut v = self.values[j].clamp(self.lower[j], self.upper[j]);
            if self.integrality[j] {
                v = v.round();
                // rounding can step over a fractional bound
                v = v.clamp(self.lower[j].ceil(), self.upper[j].floor());
            }
            self.values[j] = v;
        }
    }

    /// Uniform in-bounds sample over this vector's box; integral
    /// coordinates draw uniformly over the integers inside their bounds.
    pub fn sample_uniform<R: rand::Rng>(template: &DesignVector, rng: &mut R) -> DesignVector {
        let mut x = template.clone();
        for j in 0..x.values.len() {
            if x.integrality[j] {
                let lo = x.lower[j].ceil() as i64;
                let hi = x.upper[j].floor() as i64;
                x.values[j] = rng.random_range(lo..=hi) as f64;
            } else {
                let u: f64 = rng.random();
                x.values[j] = x.lower[j] + u * (x.upper[j] - x.lower[j]);
            }
        }
        x
    }

    /// True when every coordinate is in bounds and integral where required.
    pub fn is_valid(&self) -> bool {
        (0..self.values.len()).all(|j| {
            self.values[j] >= self.lower[j]
                && self.values[j] <= self.upper[j]
                && (!self.integrality[j] || self.values[j].fract() == 0.0)
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DesignVectorError {
    #[error("values, integrality and bound sequences must share one length")]
    LengthMismatch,
    #[error("lower bound exceeds upper bound at coordinate {index}")]
    InvertedBounds { index: usize },
    #[error("value out of bounds at coordinate {index}")]
    OutOfBounds { index: usize },
    #[error("non-integer value in integral coordinate {index}")]
    NotIntegral { index: usize },
}

/// One candidate design together with its evaluation and ranking state.
#[derive(Debug, Clone)]
pub struct Individual {
    pub x: DesignVector,
    /// Raw objective values.
    pub objectives: Vec<f64>,
    /// Total constraint violation, zero for feasible designs.
    pub violation: f64,
    /// Penalized costs used for all comparisons.
    pub penalized: Vec<f64>,
    /// Non-domination rank; members of the first front carry 1.
    pub rank: usize,
    /// Crowding distance within this individual's front.
    pub crowding: f64,
}

impl Individual {
    pub fn is_feasible(&self) -> bool {
        self.violation == 0.0
    }
}

/// Engine parameters. `Default` gives the stock configuration; every field
/// can be overridden before a run.
#[derive(Debug, Clone)]
pub struct GaParams {
    pub population_size: usize,
    pub offspring_size: usize,
    pub max_generations: usize,
    /// BLX-alpha crossover spread.
    pub blx_alpha: f64,
    /// Shape exponent of the non-uniform mutation schedule.
    pub mutation_b: f64,
    pub crossover_probability: f64,
    /// Per-coordinate mutation probability. `None` selects 1/J at run time.
    pub mutation_probability: Option<f64>,
    /// Penalty weight applied to the constraint violation.
    pub penalty: f64,
    pub seed: u64,
}

impl Default for GaParams {
    fn default() -> Self {
        Self {
            population_size: 100,
            offspring_size: 100,
            max_generations: 100,
            blx_alpha: 0.5,
            mutation_b: 5.0,
            crossover_probability: 0.9,
            mutation_probability: None,
            penalty: 1e6,
            seed: 0,
        }
    }
}

impl GaParams {
    pub fn validate(&self) -> Result<(), GaParamsError> {
        if self.population_size < 4 {
            return Err(GaParamsError::PopulationTooSmall);
        }
        if self.offspring_size == 0 || self.max_generations == 0 {
            return Err(GaParamsError::ZeroBudget);
        }
        let probs_ok = (0.0..=1.0).contains(&self.crossover_probability)
            && self
                .mutation_probability
                .is_none_or(|p| (0.0..=1.0).contains(&p));
        if !probs_ok {
            return Err(GaParamsError::ProbabilityOutOfRange);
        }
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.penalty) || !positive(self.mutation_b) {
            return Err(GaParamsError::NonPositiveParameter);
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GaParamsError {
    #[error("population size must be at least 4")]
    PopulationTooSmall,
    #[error("offspring size and generation count must be positive")]
    ZeroBudget,
    #[error("probabilities must lie in [0, 1]")]
    ProbabilityOutOfRange,
    #[error("penalty and mutation shape parameters must be positive")]
    NonPositiveParameter,
}

/// A problem the engine can evolve against. Implementations must be pure:
/// the engine may evaluate candidates concurrently.
pub trait Problem: Sync {
    /// Search-space template: bounds and integrality. The `values` of the
    /// returned vector are ignored.
    fn template(&self) -> DesignVector;

    /// Number of objectives (K).
    fn num_objectives(&self) -> usize;

    /// Raw objectives and total constraint violation for an in-bounds point.
    fn evaluate(&self, x: &DesignVector) -> Result<(Vec<f64>, f64), EvaluationError>;
}

/// Failure raised by an evaluation callback.
#[derive(Debug, Error)]
#[error("{0}")]
pub struct EvaluationError(pub String);

#[derive(Debug, Error)]
pub enum EvolveError {
    #[error("invalid engine parameters: {0}")]
    Params(#[from] GaParamsError),
    #[error("evaluation failed at generation {generation}, individual {index}: {source}")]
    Evaluation {
        generation: usize,
        index: usize,
        source: EvaluationError,
    },
}

/// Total constraint violation of Eqs. of the penalty transform: inequality
/// entries count only when positive, equality entries by absolute value.
pub fn violation_total(g_values: &[f64], h_values: &[f64]) -> f64 {
    let ineq: f64 = g_values.iter().map(|&g| if g > 0.0 { g.abs() } else { 0.0 }).sum();
    let eq: f64 = h_values.iter().map(|&h| h.abs()).sum();
    ineq + eq
}

/// Penalized costs: each objective shifted by `penalty * violation`.
/// Exact identity for feasible points.
pub fn penalize(objectives: &[f64], violation: f64, penalty: f64) -> Vec<f64> {
    debug_assert!(violation >= 0.0 && penalty > 0.0);
    if violation == 0.0 {
        return objectives.to_vec();
    }
    objectives.iter().map(|&f| f + penalty * violation).collect()
}
