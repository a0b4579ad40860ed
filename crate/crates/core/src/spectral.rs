//! Singular value decomposition of tall matrices by one-sided Jacobi.
//!
//! The columns of a working copy `W = A` are orthogonalized by plane
//! rotations applied in cyclic pair order, accumulating the same rotations in
//! `V`. At convergence `W = U diag(sigma)` and `A = U diag(sigma) V^T`.

use crate::error::{Error, Result};
use crate::linalg::{dot, norm, Matrix};
use serde::{Deserialize, Serialize};

pub const MAX_SWEEPS: usize = 30;
const OFF_DIAGONAL_TOL: f64 = 1e-12;

/// Thin SVD `A = sum_i sigma_i u_i v_i^T`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SvdResult {
    /// Descending.
    pub singular_values: Vec<f64>,
    /// `d x d`, columns `v_1 .. v_d`.
    pub right_vectors: Matrix,
    /// `m x d`, orthonormal columns `u_1 .. u_d`.
    pub left_vectors: Matrix,
}

impl SvdResult {
    pub fn sigma_min(&self) -> f64 {
        *self.singular_values.last().expect("nonempty spectrum")
    }

    pub fn sigma_max(&self) -> f64 {
        self.singular_values[0]
    }

    pub fn right_vector(&self, k: usize) -> Vec<f64> {
        self.right_vectors.column(k)
    }

    pub fn left_vector(&self, k: usize) -> Vec<f64> {
        self.left_vectors.column(k)
    }

    /// `sum_i sigma_i u_i v_i^T`.
    pub fn reconstruct(&self) -> Matrix {
        let (m, d) = (self.left_vectors.nrows(), self.right_vectors.nrows());
        Matrix::from_fn(m, d, |r, c| {
            (0..self.singular_values.len())
                .map(|k| self.singular_values[k] * self.left_vectors[(r, k)] * self.right_vectors[(c, k)])
                .sum()
        })
    }
}

/// Thin SVD of an `m x d` matrix with `m >= d`.
///
/// Each right singular vector is signed so that its first entry of largest
/// magnitude is nonnegative; the matching left vector flips with it.
pub fn svd(a: &Matrix) -> Result<SvdResult> {
    let (m, d) = (a.nrows(), a.ncols());
    if d == 0 || m < d {
        return Err(Error::InvalidInput(format!("svd needs m >= d >= 1, got {m} x {d}")));
    }
    if !a.is_finite() {
        return Err(Error::InvalidInput("svd input has non-finite entries".into()));
    }
    // Column-major working copies.
    let mut w: Vec<Vec<f64>> = (0..d).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<f64>> = (0..d).map(|j| (0..d).map(|i| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let fro2 = a.frobenius_norm().powi(2);
    let threshold = OFF_DIAGONAL_TOL * fro2;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut max_off = 0.0_f64;
        for p in 0..d {
            for q in p + 1..d {
                let gamma = dot(&w[p], &w[q]);
                max_off = max_off.max(gamma.abs());
                if gamma.abs() <= threshold {
                    continue;
                }
                let alpha = dot(&w[p], &w[p]);
                let beta = dot(&w[q], &w[q]);
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut w, p, q, c, s);
                rotate(&mut v, p, q, c, s);
            }
        }
        if max_off <= threshold {
            converged = true;
            break;
        }
    }
    if !converged {
        // The last sweep may have finished the job without a final check.
        let worst = (0..d)
            .flat_map(|p| (p + 1..d).map(move |q| (p, q)))
            .map(|(p, q)| dot(&w[p], &w[q]).abs())
            .fold(0.0, f64::max);
        if worst > threshold {
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }
    }

    let mut order: Vec<(f64, usize)> = w.iter().enumerate().map(|(j, col)| (norm(col), j)).collect();
    order.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)));
    let singular_values: Vec<f64> = order.iter().map(|(s, _)| *s).collect();

    let mut left: Vec<Vec<f64>> = Vec::with_capacity(d);
    let mut right: Vec<Vec<f64>> = Vec::with_capacity(d);
    let tiny = f64::EPSILON * fro2.sqrt() * (m as f64);
    for &(sigma, j) in &order {
        let mut vj = v[j].clone();
        let mut uj = if sigma > tiny { w[j].iter().map(|x| x / sigma).collect() } else { complete_basis(&left, m) };
        if sign_flip(&vj) {
            vj.iter_mut().for_each(|x| *x = -*x);
            uj.iter_mut().for_each(|x| *x = -*x);
        }
        left.push(uj);
        right.push(vj);
    }
    Ok(SvdResult {
        singular_values,
        right_vectors: Matrix::from_fn(d, d, |i, k| right[k][i]),
        left_vectors: Matrix::from_fn(m, d, |i, k| left[k][i]),
    })
}

fn rotate(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let (lo, hi) = cols.split_at_mut(q);
    let (cp, cq) = (&mut lo[p], &mut hi[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let (xp, xq) = (*x, *y);
        *x = c * xp - s * xq;
        *y = s * xp + c * xq;
    }
}

// True when the first entry of largest magnitude is negative.
fn sign_flip(v: &[f64]) -> bool {
    let max = v.iter().fold(0.0_f64, |a, x| a.max(x.abs()));
    v.iter().find(|x| x.abs() >= max * (1.0 - 1e-12)).is_some_and(|x| *x < 0.0)
}

// A unit vector orthogonal to `basis`, by Gram-Schmidt over standard vectors.
fn complete_basis(basis: &[Vec<f64>], m: usize) -> Vec<f64> {
    let mut best = vec![0.0; m];
    let mut best_norm = -1.0;
    for k in 0..m {
        let mut e = vec![0.0; m];
        e[k] = 1.0;
        for _ in 0..2 {
            for b in basis {
                let c = dot(&e, b);
                e.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let n = norm(&e);
        if n > best_norm {
            best_norm = n;
            best = e;
        }
        if n > 0.5 {
            break;
        }
    }
    best.iter().map(|x| x / best_norm).collect()
}

/// Smallest singular value of `a`.
///
/// For two columns the result is checked against the closed-form smallest
/// eigenvalue of the 2x2 Gram matrix.
pub fn sigma_min(a: &Matrix) -> Result<f64> {
    let s = svd(a)?.sigma_min();
    if a.ncols() == 2 {
        let lambda = gram_2x2_min_eigenvalue(a);
        let g = a.gram();
        let trace = g[(0, 0)] + g[(1, 1)];
        if (s * s - lambda).abs() > 1e-10 * (1.0 + trace) {
            return Err(Error::SpectralMismatch { jacobi: s, closed_form: lambda.max(0.0).sqrt() });
        }
    }
    Ok(s)
}

/// Smallest eigenvalue of `A^T A` for a two-column `A`, in closed form.
pub fn gram_2x2_min_eigenvalue(a: &Matrix) -> f64 {
    assert_eq!(a.ncols(), 2);
    let g = a.gram();
    let (p, q, r) = (g[(0, 0)], g[(0, 1)], g[(1, 1)]);
    let half_trace = 0.5 * (p + r);
    let disc = (0.25 * (p - r) * (p - r) + q * q).sqrt();
    half_trace - disc
}
