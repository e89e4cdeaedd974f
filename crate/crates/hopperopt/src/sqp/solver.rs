//! KKT machinery and the SQP driver.

use nalgebra::{DMatrix, DVector};

use super::numdiff::{bfgs_update, fd_gradient, fd_hessian, fd_jacobian};
use super::qp::solve_qp;
use super::{KktPoint, Nlp, SqpError, SqpReport};

/// Solver knobs. Defaults match the shipped discipline problems: residual
/// tolerance 1e-6, iteration cap 100, relative differencing step 1e-6.
#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub tolerance: f64,
    pub max_iterations: usize,
    pub fd_step: f64,
    /// Inequalities with |g| below this (scaled) threshold count as active.
    pub activity_tolerance: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-6,
            max_iterations: 100,
            fd_step: 1e-6,
            activity_tolerance: 1e-8,
        }
    }
}

/// One line of the iteration trace.
#[derive(Debug, Clone)]
pub struct IterationRecord {
    pub iteration: usize,
    pub objective: f64,
    pub residual_norm: f64,
    pub step_norm: f64,
    pub step_scale: f64,
    pub merit: f64,
}

/// Lagrangian `f + lambda'h + mu'g` at the iterate.
pub fn lagrangian<N: Nlp>(nlp: &N, p: &KktPoint) -> f64 {
    let d = p.d.as_slice();
    let h = DVector::from_vec(nlp.equality(d));
    let g = DVector::from_vec(nlp.inequality(d));
    nlp.objective(d) + p.lambda.dot(&h) + p.mu.dot(&g)
}

fn lagrangian_gradient<N: Nlp>(nlp: &N, p: &KktPoint, d: &[f64], fd_step: f64) -> DVector<f64> {
    let mut grad = DVector::from_vec(fd_gradient(&|x: &[f64]| nlp.objective(x), d, fd_step));
    if !p.lambda.is_empty() {
        let jac_h = fd_jacobian(&|x: &[f64]| nlp.equality(x), d, fd_step, p.lambda.len());
        grad += jac_h.transpose() * &p.lambda;
    }
    if !p.mu.is_empty() {
        let jac_g = fd_jacobian(&|x: &[f64]| nlp.inequality(x), d, fd_step, p.mu.len());
        grad += jac_g.transpose() * &p.mu;
    }
    grad
}

/// Indices of inequalities satisfied as equalities at `d`.
pub fn active_set<N: Nlp>(nlp: &N, d: &[f64], tolerance: f64) -> Vec<usize> {
    nlp.inequality(d)
        .iter()
        .enumerate()
        .filter(|(_, &g)| g.abs() <= tolerance * (1.0 + g.abs()))
        .map(|(s, _)| s)
        .collect()
}

/// Stacked KKT residual `[grad L; h; g_active]`, using only the iterate's
/// active inequality rows in the third block.
pub fn kkt_residual<N: Nlp>(nlp: &N, p: &KktPoint) -> DVector<f64> {
    let d = p.d.as_slice();
    let grad = lagrangian_gradient(nlp, p, d, SolveOptions::default().fd_step);
    let h = nlp.equality(d);
    let g = nlp.inequality(d);
    let mut out = Vec::with_capacity(grad.len() + h.len() + p.active_set.len());
    out.extend(grad.iter().copied());
    out.extend(h.iter().copied());
    out.extend(p.active_set.iter().map(|&s| g[s]));
    DVector::from_vec(out)
}

/// Symmetric bordered KKT Jacobian
/// `[[HL, Jh', Jg_active'], [Jh, 0, 0], [Jg_active, 0, 0]]`
/// with the Lagrangian Hessian obtained by central finite differences.
pub fn kkt_jacobian<N: Nlp>(nlp: &N, p: &KktPoint) -> DMatrix<f64> {
    let d = p.d.as_slice();
    let n = d.len();
    let q = p.lambda.len();
    let a = p.active_set.len();

    let lambda = p.lambda.clone();
    let mu = p.mu.clone();
    let lag = |x: &[f64]| {
        let h = DVector::from_vec(nlp.equality(x));
        let g = DVector::from_vec(nlp.inequality(x));
        nlp.objective(x) + lambda.dot(&h) + mu.dot(&g)
    };
    // second differences lose digits faster than first ones
    let hess = fd_hessian(&lag, d, 1e-4);

    let jac_h = fd_jacobian(&|x: &[f64]| nlp.equality(x), d, 1e-6, q);
    let jac_g_full = fd_jacobian(&|x: &[f64]| nlp.inequality(x), d, 1e-6, p.mu.len());

    let size = n + q + a;
    let mut out = DMatrix::zeros(size, size);
    out.view_mut((0, 0), (n, n)).copy_from(&hess);
    if q > 0 {
        out.view_mut((0, n), (n, q)).copy_from(&jac_h.transpose());
        out.view_mut((n, 0), (q, n)).copy_from(&jac_h);
    }
    for (k, &s) in p.active_set.iter().enumerate() {
        for j in 0..n {
            out[(j, n + q + k)] = jac_g_full[(s, j)];
            out[(n + q + k, j)] = jac_g_full[(s, j)];
        }
    }
    out
}

fn constraint_infeasibility(h: &[f64], g: &[f64]) -> f64 {
    h.iter().map(|v| v.abs()).sum::<f64>() + g.iter().map(|v| v.max(0.0)).sum::<f64>()
}

fn merit<N: Nlp>(nlp: &N, d: &[f64], nu: f64) -> f64 {
    nlp.objective(d) + nu * constraint_infeasibility(&nlp.equality(d), &nlp.inequality(d))
}

/// One damped Newton iteration on the KKT system of the iterate's active
/// set: solves `J s = -Psi`, then backtracks the primal part of the step on
/// the l1 merit function.
pub fn newton_step<N: Nlp>(nlp: &N, p: &KktPoint) -> Result<KktPoint, SqpError> {
    let residual = kkt_residual(nlp, p);
    if residual.amax() == 0.0 {
        return Ok(p.clone());
    }
    let jac = kkt_jacobian(nlp, p);
    let lu = jac.clone().lu();
    let step = match lu.solve(&(-&residual)) {
        Some(s) if s.iter().all(|v| v.is_finite()) => s,
        _ => {
            let svd = jac.svd(false, false);
            let smax = svd.singular_values.max();
            let smin = svd
                .singular_values
                .iter()
                .fold(f64::INFINITY, |a, &b| a.min(b));
            return Err(SqpError::SingularKkt {
                cond: if smin > 0.0 { smax / smin } else { f64::INFINITY },
            });
        }
    };

    let n = p.d.len();
    let q = p.lambda.len();
    let s_d = step.rows(0, n).into_owned();
    let s_lambda = step.rows(n, q).into_owned();
    let s_mu_active = step.rows(n + q, p.active_set.len()).into_owned();

    // merit line search on the primal part
    let nu = 1.0 + 2.0 * p.lambda.amax().max(p.mu.amax());
    let base = merit(nlp, p.d.as_slice(), nu);
    let mut alpha = 1.0;
    let mut accepted = 1.0;
    for _ in 0..30 {
        let trial = &p.d + &s_d * alpha;
        if merit(nlp, trial.as_slice(), nu) < base {
            accepted = alpha;
            break;
        }
        alpha *= 0.5;
        accepted = alpha;
    }

    let mut next = p.clone();
    next.d += &s_d * accepted;
    next.lambda += &s_lambda * accepted;
    for (k, &s) in p.active_set.iter().enumerate() {
        next.mu[s] = (next.mu[s] + accepted * s_mu_active[k]).max(0.0);
    }
    Ok(next)
}

/// Builds and solves the local quadratic subproblem at the iterate with the
/// supplied Lagrangian Hessian model; returns the primal step and the
/// updated multiplier estimates.
pub fn qp_subproblem<N: Nlp>(
    nlp: &N,
    p: &KktPoint,
    hessian_model: &DMatrix<f64>,
    fd_step: f64,
) -> Result<super::qp::QpSolution, SqpError> {
    let d = p.d.as_slice();
    let q = p.lambda.len();
    let s = p.mu.len();
    let grad_f = DVector::from_vec(fd_gradient(&|x: &[f64]| nlp.objective(x), d, fd_step));
    let jac_h = fd_jacobian(&|x: &[f64]| nlp.equality(x), d, fd_step, q);
    let jac_g = fd_jacobian(&|x: &[f64]| nlp.inequality(x), d, fd_step, s);
    let h = DVector::from_vec(nlp.equality(d));
    let g = DVector::from_vec(nlp.inequality(d));

    solve_qp(
        hessian_model,
        &grad_f,
        &jac_h,
        &(-h),
        &jac_g,
        &(-g),
        &p.active_set,
    )
}

/// Full SQP solve from `d0`: quadratic subproblems on a damped BFGS model,
/// l1 merit backtracking, honest convergence reporting.
pub fn solve<N: Nlp>(nlp: &N, d0: &[f64], options: &SolveOptions) -> Result<SqpReport, SqpError> {
    let n = nlp.dimension();
    if d0.len() != n {
        return Err(SqpError::DimensionMismatch {
            expected: n,
            got: d0.len(),
        });
    }
    let num_eq = nlp.equality(d0).len();
    let num_ineq = nlp.inequality(d0).len();

    let mut point = KktPoint::origin(d0.to_vec(), num_eq, num_ineq);
    let mut hessian = DMatrix::identity(n, n);
    let mut nu = 1.0;
    let mut trace: Vec<IterationRecord> = Vec::new();
    let mut best: Option<(f64, KktPoint, f64)> = None;

    for iteration in 0..options.max_iterations {
        let d = point.d.as_slice().to_vec();
        point.active_set = active_set(nlp, &d, options.activity_tolerance);
        let residual = kkt_residual(nlp, &point);
        let g_now = nlp.inequality(&d);
        let primal_violation = constraint_infeasibility(&nlp.equality(&d), &g_now);
        let complementarity = g_now
            .iter()
            .enumerate()
            .map(|(s, &gs)| (point.mu[s] * gs).abs())
            .fold(0.0f64, f64::max);
        let residual_norm = residual
            .amax()
            .max(primal_violation)
            .max(complementarity);
        let objective = nlp.objective(&d);

        if best.as_ref().is_none_or(|(r, _, _)| residual_norm < *r) {
            best = Some((residual_norm, point.clone(), objective));
        }

        if residual_norm <= options.tolerance {
            trace.push(IterationRecord {
                iteration,
                objective,
                residual_norm,
                step_norm: 0.0,
                step_scale: 0.0,
                merit: merit(nlp, &d, nu),
            });
            return Ok(SqpReport {
                solution: point,
                objective_value: objective,
                kkt_residual_norm: residual_norm,
                iterations: iteration,
                converged: true,
                trace,
            });
        }

        let qp = qp_subproblem(nlp, &point, &hessian, options.fd_step)?;
        let step = qp.step.clone();

        // penalty weight never drops and always covers the multipliers
        let mult_scale = qp
            .eq_multipliers
            .amax()
            .max(qp.ineq_multipliers.amax());
        nu = nu.max(1.5 * mult_scale + 0.1);

        let grad_f = DVector::from_vec(fd_gradient(
            &|x: &[f64]| nlp.objective(x),
            &d,
            options.fd_step,
        ));
        let theta = primal_violation;
        let mut directional = grad_f.dot(&step) - nu * theta;
        if directional >= 0.0 && theta > options.tolerance {
            nu += (grad_f.dot(&step).abs() + 1.0) / theta;
            directional = grad_f.dot(&step) - nu * theta;
        }

        let base_merit = merit(nlp, &d, nu);
        let mut alpha = 1.0f64;
        let mut trial = d.clone();
        for _ in 0..40 {
            for j in 0..n {
                trial[j] = d[j] + alpha * step[j];
            }
            let value = merit(nlp, &trial, nu);
            if value <= base_merit + 1e-4 * alpha * directional.min(0.0) {
                break;
            }
            alpha *= 0.5;
        }
        for j in 0..n {
            trial[j] = d[j] + alpha * step[j];
        }

        // BFGS secant pair measured at the new multipliers
        let mut probe = point.clone();
        probe.lambda = qp.eq_multipliers.clone();
        probe.mu = qp.ineq_multipliers.clone();
        let grad_old = lagrangian_gradient(nlp, &probe, &d, options.fd_step);
        let grad_new = lagrangian_gradient(nlp, &probe, &trial, options.fd_step);
        let s_vec = DVector::from_vec(
            trial
                .iter()
                .zip(&d)
                .map(|(t, o)| t - o)
                .collect::<Vec<f64>>(),
        );
        let y_vec = grad_new - grad_old;
        if s_vec.norm() > 0.0 {
            hessian = bfgs_update(&hessian, &s_vec, &y_vec);
        }

        trace.push(IterationRecord {
            iteration,
            objective,
            residual_norm,
            step_norm: (s_vec).norm(),
            step_scale: alpha,
            merit: base_merit,
        });

        point.d = DVector::from_vec(trial);
        point.lambda = qp.eq_multipliers;
        point.mu = qp.ineq_multipliers;
    }

    let (residual_norm, solution, objective_value) = best.expect("at least one iterate");
    Ok(SqpReport {
        solution,
        objective_value,
        kkt_residual_norm: residual_norm,
        iterations: options.max_iterations,
        converged: false,
        trace,
    })
}
