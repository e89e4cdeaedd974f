//! Finite-difference derivatives and the damped BFGS update.

use nalgebra::{DMatrix, DVector};

/// Central-difference gradient with a relative step per coordinate.
pub fn fd_gradient<F: Fn(&[f64]) -> f64 + ?Sized>(f: &F, d: &[f64], step: f64) -> Vec<f64> {
    let mut grad = vec![0.0; d.len()];
    let mut work = d.to_vec();
    for j in 0..d.len() {
        let h = step * (1.0 + d[j].abs());
        work[j] = d[j] + h;
        let fp = f(&work);
        work[j] = d[j] - h;
        let fm = f(&work);
        work[j] = d[j];
        grad[j] = (fp - fm) / (2.0 * h);
    }
    grad
}

/// Central-difference Jacobian of a vector-valued callback, one row per
/// output component.
pub fn fd_jacobian<F: Fn(&[f64]) -> Vec<f64> + ?Sized>(
    f: &F,
    d: &[f64],
    step: f64,
    rows: usize,
) -> DMatrix<f64> {
    let n = d.len();
    let mut jac = DMatrix::zeros(rows, n);
    let mut work = d.to_vec();
    for j in 0..n {
        let h = step * (1.0 + d[j].abs());
        work[j] = d[j] + h;
        let fp = f(&work);
        work[j] = d[j] - h;
        let fm = f(&work);
        work[j] = d[j];
        for i in 0..rows {
            jac[(i, j)] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    jac
}

/// Symmetric central-difference Hessian. The step is taken relative and
/// larger than the gradient step since second differences lose more digits.
pub fn fd_hessian<F: Fn(&[f64]) -> f64 + ?Sized>(f: &F, d: &[f64], step: f64) -> DMatrix<f64> {
    let n = d.len();
    let f0 = f(d);
    let mut hess = DMatrix::zeros(n, n);
    let mut work = d.to_vec();
    for i in 0..n {
        let hi = step * (1.0 + d[i].abs());
        work[i] = d[i] + hi;
        let fp = f(&work);
        work[i] = d[i] - hi;
        let fm = f(&work);
        work[i] = d[i];
        hess[(i, i)] = (fp - 2.0 * f0 + fm) / (hi * hi);
        for j in (i + 1)..n {
            let hj = step * (1.0 + d[j].abs());
            work[i] = d[i] + hi;
            work[j] = d[j] + hj;
            let fpp = f(&work);
            work[j] = d[j] - hj;
            let fpm = f(&work);
            work[i] = d[i] - hi;
            let fmm = f(&work);
            work[j] = d[j] + hj;
            let fmp = f(&work);
            work[i] = d[i];
            work[j] = d[j];
            let value = (fpp - fpm - fmp + fmm) / (4.0 * hi * hj);
            hess[(i, j)] = value;
            hess[(j, i)] = value;
        }
    }
    hess
}

/// Damped BFGS update of a symmetric positive definite Hessian
/// approximation. When the curvature condition `s'y >= 0.2 s'Hs` fails the
/// secant vector is blended toward `Hs` (Powell damping), which keeps the
/// result positive definite; a raw update is never applied.
pub fn bfgs_update(h: &DMatrix<f64>, s: &DVector<f64>, y: &DVector<f64>) -> DMatrix<f64> {
    let hs = h * s;
    let s_h_s = s.dot(&hs);
    if s_h_s <= 0.0 || !s_h_s.is_finite() || s.norm() == 0.0 {
        return h.clone();
    }
    let sy = s.dot(y);
    let r = if sy < 0.2 * s_h_s {
        let theta = 0.8 * s_h_s / (s_h_s - sy);
        y * theta + &hs * (1.0 - theta)
    } else {
        y.clone()
    };
    let sr = s.dot(&r);
    if sr <= 0.0 {
        return h.clone();
    }
    let mut next = h.clone();
    next -= &hs * hs.transpose() / s_h_s;
    next += &r * r.transpose() / sr;
    // enforce exact symmetry against roundoff drift
    let nt = next.transpose();
    (next + nt) * 0.5
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gradient_of_linear_function_is_exact() {
        let f = |d: &[f64]| 3.0 * d[0] - 2.0 * d[1] + 7.0;
        for step in [1e-3, 1e-6, 1e-8] {
            let g = fd_gradient(&f, &[0.4, -1.7], step);
            assert!((g[0] - 3.0).abs() < 1e-6);
            assert!((g[1] + 2.0).abs() < 1e-6);
        }
    }

    #[test]
    fn gradient_of_quadratic_matches_symbolic() {
        let f = |d: &[f64]| d.iter().map(|v| v * v).sum::<f64>();
        let d = [1.5, -0.3, 2.0];
        let g = fd_gradient(&f, &d, 1e-6);
        for (gj, dj) in g.iter().zip(&d) {
            assert!((gj - 2.0 * dj).abs() < 1e-8, "got {gj}, want {}", 2.0 * dj);
        }
    }

    #[test]
    fn hessian_cross_terms_match_symbolic() {
        let f = |d: &[f64]| d[0] * d[1];
        let h = fd_hessian(&f, &[0.7, -0.2], 1e-4);
        assert!((h[(0, 1)] - 1.0).abs() < 1e-5);
        assert!((h[(1, 0)] - 1.0).abs() < 1e-5);
        assert!(h[(0, 0)].abs() < 1e-5);
    }

    #[test]
    fn bfgs_recovers_quadratic_hessian_with_exact_line_search() {
        // minimize 1/2 d'Ad: quasi-Newton with exact line searches on an SPD
        // quadratic reproduces A after R independent updates
        let a = DMatrix::from_row_slice(3, 3, &[4.0, 1.0, 0.0, 1.0, 3.0, 0.5, 0.0, 0.5, 2.0]);
        let mut b = DMatrix::identity(3, 3);
        let mut d = DVector::from_vec(vec![1.0, -1.0, 2.0]);
        for _ in 0..3 {
            let grad = &a * &d;
            let p = -b.clone().lu().solve(&grad).unwrap();
            let alpha = -grad.dot(&p) / p.dot(&(&a * &p));
            let s = &p * alpha;
            let y = &a * &s;
            b = bfgs_update(&b, &s, &y);
            d += s;
        }
        let diff = (&b - &a).norm();
        assert!(diff < 1e-8, "BFGS mismatch norm {diff}");
    }

    #[test]
    fn bfgs_stays_positive_definite_under_damping() {
        // feed updates with negative curvature; damping must keep the
        // smallest eigenvalue positive
        let mut b = DMatrix::identity(2, 2);
        let pairs = [
            (vec![1.0, 0.0], vec![-0.5, 0.1]),
            (vec![0.0, 1.0], vec![0.2, -0.9]),
            (vec![0.7, 0.7], vec![-0.3, -0.3]),
        ];
        for (s, y) in pairs {
            b = bfgs_update(&b, &DVector::from_vec(s), &DVector::from_vec(y));
            let eigen = b.clone().symmetric_eigen();
            assert!(
                eigen.eigenvalues.iter().all(|&e| e > 0.0),
                "lost positive definiteness: {:?}",
                eigen.eigenvalues
            );
        }
    }
}
