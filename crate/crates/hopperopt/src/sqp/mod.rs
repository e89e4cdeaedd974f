//! Sequential quadratic programming for small dense nonlinear programs.
//!
//! The solver iterates quadratic subproblems built from finite-difference
//! gradients and a damped BFGS model of the Lagrangian Hessian, globalized
//! by an l1 merit line search. Local Newton iteration on the KKT system is
//! exposed separately for problems where the active set is already known.

mod numdiff;
mod qp;
mod solver;

pub use numdiff::{bfgs_update, fd_gradient, fd_hessian, fd_jacobian};
pub use qp::{solve_qp, QpSolution};
pub use solver::{
    kkt_jacobian, kkt_residual, lagrangian, newton_step, qp_subproblem, solve, IterationRecord,
    SolveOptions,
};

use nalgebra::DVector;
use thiserror::Error;

/// A nonlinear program in the standard form
/// `min f(d)  s.t.  g(d) <= 0, h(d) = 0`,
/// with side constraints already folded into the inequality rows.
/// Callbacks must be deterministic and finite-valued near the feasible box.
pub trait Nlp: Sync {
    fn dimension(&self) -> usize;
    fn objective(&self, d: &[f64]) -> f64;
    /// Inequality constraint values, `g(d) <= 0` feasible.
    fn inequality(&self, d: &[f64]) -> Vec<f64>;
    /// Equality constraint values, `h(d) = 0` feasible.
    fn equality(&self, d: &[f64]) -> Vec<f64>;
}

/// Closure-backed [`Nlp`] for quick problem definitions.
pub struct FnNlp<F, G, H> {
    pub dimension: usize,
    pub objective: F,
    pub inequality: G,
    pub equality: H,
}

impl<F, G, H> Nlp for FnNlp<F, G, H>
where
    F: Fn(&[f64]) -> f64 + Sync,
    G: Fn(&[f64]) -> Vec<f64> + Sync,
    H: Fn(&[f64]) -> Vec<f64> + Sync,
{
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn objective(&self, d: &[f64]) -> f64 {
        (self.objective)(d)
    }

    fn inequality(&self, d: &[f64]) -> Vec<f64> {
        (self.inequality)(d)
    }

    fn equality(&self, d: &[f64]) -> Vec<f64> {
        (self.equality)(d)
    }
}

/// Wraps an [`Nlp`] and folds box bounds into exactly `2R` extra inequality
/// rows: `lower_r - d_r <= 0` then `d_r - upper_r <= 0` per coordinate.
pub struct Bounded<N> {
    pub inner: N,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl<N: Nlp> Nlp for Bounded<N> {
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    fn objective(&self, d: &[f64]) -> f64 {
        self.inner.objective(d)
    }

    fn inequality(&self, d: &[f64]) -> Vec<f64> {
        let mut rows = self.inner.inequality(d);
        for (r, &value) in d.iter().enumerate() {
            rows.push(self.lower[r] - value);
            rows.push(value - self.upper[r]);
        }
        rows
    }

    fn equality(&self, d: &[f64]) -> Vec<f64> {
        self.inner.equality(d)
    }
}

/// A primal/dual iterate: the point, its multipliers and the indices of the
/// inequality rows treated as active (satisfied as equalities).
#[derive(Debug, Clone)]
pub struct KktPoint {
    pub d: DVector<f64>,
    /// Equality multipliers.
    pub lambda: DVector<f64>,
    /// Inequality multipliers, kept nonnegative.
    pub mu: DVector<f64>,
    pub active_set: Vec<usize>,
}

impl KktPoint {
    /// Zero-multiplier starting point.
    pub fn origin(d: Vec<f64>, num_eq: usize, num_ineq: usize) -> Self {
        Self {
            d: DVector::from_vec(d),
            lambda: DVector::zeros(num_eq),
            mu: DVector::zeros(num_ineq),
            active_set: Vec::new(),
        }
    }
}

/// Outcome of a solve. `converged == false` carries the best iterate seen,
/// never a fabricated optimum.
#[derive(Debug, Clone)]
pub struct SqpReport {
    pub solution: KktPoint,
    pub objective_value: f64,
    /// Infinity norm of the stacked KKT residual at the final iterate.
    pub kkt_residual_norm: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Per-iteration trace for verbose diagnostics.
    pub trace: Vec<IterationRecord>,
}

#[derive(Debug, Error)]
pub enum SqpError {
    #[error("KKT matrix singular or badly conditioned (condition estimate {cond:.3e})")]
    SingularKkt { cond: f64 },
    #[error("active-set iteration stalled after {iterations} updates")]
    ActiveSetStalled { iterations: usize },
    #[error("start point has dimension {got}, problem expects {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}
