//! Primal active-set solver for the small dense quadratic subproblems.
//!
//! Solves `min g'x + 1/2 x'Bx` subject to `A_eq x = b_eq` and
//! `A_in x <= b_in` by iterating on a working set of inequality rows treated
//! as equalities. Inconsistent working sets fall back to a least-squares
//! (elastic) solve and flag the result.

use nalgebra::{DMatrix, DVector};
use std::collections::BTreeSet;

use super::SqpError;

#[derive(Debug, Clone)]
pub struct QpSolution {
    pub step: DVector<f64>,
    pub eq_multipliers: DVector<f64>,
    /// One entry per inequality row; zero off the active set.
    pub ineq_multipliers: DVector<f64>,
    pub active_set: Vec<usize>,
    /// True when an inconsistent working set forced an elastic solve.
    pub relaxed: bool,
}

const FEAS_TOL: f64 = 1e-9;

/// Solves one equality-constrained QP through its KKT system.
/// Returns the primal step and the stacked multipliers.
fn solve_eqp(
    b: &DMatrix<f64>,
    g: &DVector<f64>,
    a: &DMatrix<f64>,
    rhs: &DVector<f64>,
) -> Result<(DVector<f64>, DVector<f64>, bool), SqpError> {
    let n = g.len();
    let m = a.nrows();
    let size = n + m;
    let mut kkt = DMatrix::zeros(size, size);
    kkt.view_mut((0, 0), (n, n)).copy_from(b);
    if m > 0 {
        kkt.view_mut((0, n), (n, m)).copy_from(&a.transpose());
        kkt.view_mut((n, 0), (m, n)).copy_from(a);
    }
    let mut full_rhs = DVector::zeros(size);
    full_rhs.rows_mut(0, n).copy_from(&(-g));
    if m > 0 {
        full_rhs.rows_mut(n, m).copy_from(rhs);
    }

    if let Some(solution) = kkt.clone().lu().solve(&full_rhs) {
        let residual = (&kkt * &solution - &full_rhs).norm();
        if residual <= 1e-7 * (1.0 + full_rhs.norm()) {
            let x = solution.rows(0, n).into_owned();
            let mult = solution.rows(n, m).into_owned();
            return Ok((x, mult, false));
        }
    }

    // Singular or inconsistent system: elastic fallback through the
    // pseudo-inverse, which yields the least-squares, least-norm solution.
    let svd = kkt.svd(true, true);
    let solution = svd
        .solve(&full_rhs, 1e-12)
        .map_err(|_| SqpError::SingularKkt { cond: f64::INFINITY })?;
    let x = solution.rows(0, n).into_owned();
    let mult = solution.rows(n, m).into_owned();
    Ok((x, mult, true))
}

/// Active-set iteration. `warm_start` seeds the working set.
pub fn solve_qp(
    b: &DMatrix<f64>,
    g: &DVector<f64>,
    a_eq: &DMatrix<f64>,
    b_eq: &DVector<f64>,
    a_in: &DMatrix<f64>,
    b_in: &DVector<f64>,
    warm_start: &[usize],
) -> Result<QpSolution, SqpError> {
    let n = g.len();
    let m_eq = a_eq.nrows();
    let m_in = a_in.nrows();

    let mut working: BTreeSet<usize> = warm_start.iter().copied().filter(|&i| i < m_in).collect();
    let mut visited: Vec<BTreeSet<usize>> = Vec::new();
    let mut relaxed = false;
    let cap = 3 * (n + m_in) + 10;

    for _ in 0..cap {
        let rows: Vec<usize> = working.iter().copied().collect();
        let m_act = m_eq + rows.len();
        let mut a = DMatrix::zeros(m_act, n);
        let mut rhs = DVector::zeros(m_act);
        if m_eq > 0 {
            a.view_mut((0, 0), (m_eq, n)).copy_from(a_eq);
            rhs.rows_mut(0, m_eq).copy_from(b_eq);
        }
        for (k, &row) in rows.iter().enumerate() {
            a.row_mut(m_eq + k).copy_from(&a_in.row(row));
            rhs[m_eq + k] = b_in[row];
        }

        let (step, multipliers, was_relaxed) = solve_eqp(b, g, &a, &rhs)?;
        relaxed |= was_relaxed;

        // drop the most negative active multiplier, if any
        let mut worst: Option<(usize, f64)> = None;
        for (k, &row) in rows.iter().enumerate() {
            let mu = multipliers[m_eq + k];
            if mu < -FEAS_TOL && worst.is_none_or(|(_, w)| mu < w) {
                worst = Some((row, mu));
            }
        }
        if let Some((row, _)) = worst {
            working.remove(&row);
            if visited.contains(&working) {
                // cycling guard: accept the current iterate as elastic
                relaxed = true;
            } else {
                visited.push(working.clone());
                continue;
            }
        }

        // add the most violated inactive inequality
        let mut violator: Option<(usize, f64)> = None;
        for row in 0..m_in {
            if working.contains(&row) {
                continue;
            }
            let slack = a_in.row(row).transpose().dot(&step) - b_in[row];
            if slack > FEAS_TOL && violator.is_none_or(|(_, v)| slack > v) {
                violator = Some((row, slack));
            }
        }
        if let Some((row, _)) = violator {
            if !relaxed {
                working.insert(row);
                if visited.contains(&working) {
                    relaxed = true;
                } else {
                    visited.push(working.clone());
                    continue;
                }
            }
        }

        let mut ineq_multipliers = DVector::zeros(m_in);
        for (k, &row) in rows.iter().enumerate() {
            ineq_multipliers[row] = multipliers[m_eq + k].max(0.0);
        }
        return Ok(QpSolution {
            step,
            eq_multipliers: multipliers.rows(0, m_eq).into_owned(),
            ineq_multipliers,
            active_set: rows,
            relaxed,
        });
    }

    Err(SqpError::ActiveSetStalled { iterations: cap })
}
