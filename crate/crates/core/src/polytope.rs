//! H-representation polytopes `{x : A x <= b}` with unit-norm rows.

use crate::error::{Error, Result};
use crate::linalg::{determinant, dot, norm, sub, Matrix};
use crate::lp::{solve_lp, LpProblem, LpStatus};
use crate::tol;
use serde::{Deserialize, Serialize};

/// A polyhedron `{x in R^d : a_i.x <= b_i, i = 1..m}` whose normals `a_i`
/// have unit Euclidean length.
///
/// Construction always goes through [`normalize`], so the unit-row invariant
/// holds for every value of this type. Boundedness is not checked at
/// construction; use [`is_bounded`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HPolytope {
    dim: usize,
    normals: Matrix,
    offsets: Vec<f64>,
}

impl HPolytope {
    /// Same as [`normalize`].
    pub fn new(normals: Matrix, offsets: Vec<f64>) -> Result<Self> {
        normalize(&normals, &offsets)
    }

    pub fn from_rows(normals: &[Vec<f64>], offsets: &[f64]) -> Result<Self> {
        let m = Matrix::from_rows(normals).ok_or_else(|| Error::InvalidInput("ragged normal rows".into()))?;
        normalize(&m, offsets)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_constraints(&self) -> usize {
        self.offsets.len()
    }

    pub fn normals(&self) -> &Matrix {
        &self.normals
    }

    pub fn normal(&self, i: usize) -> &[f64] {
        self.normals.row(i)
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    /// `b - A x`, the slack of every constraint at `x`.
    pub fn slacks(&self, x: &[f64]) -> Vec<f64> {
        self.normals.rows_iter().zip(&self.offsets).map(|(a, b)| b - dot(a, x)).collect()
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.slacks(x).iter().all(|&s| s >= -tol)
    }

    /// The polytope `P + t`.
    pub fn translated(&self, t: &[f64]) -> HPolytope {
        assert_eq!(t.len(), self.dim);
        let offsets = self.normals.rows_iter().zip(&self.offsets).map(|(a, b)| b + dot(a, t)).collect();
        HPolytope { dim: self.dim, normals: self.normals.clone(), offsets }
    }

    /// The polytope `Q P` for an orthogonal `Q`; rows become `Q a_i`.
    pub fn rotated(&self, q: &Matrix) -> HPolytope {
        assert_eq!(q.nrows(), self.dim);
        assert_eq!(q.ncols(), self.dim);
        let normals = self.normals.mul(&q.transpose());
        // Renormalize so rounding in Q cannot break the unit-row invariant.
        normalize(&normals, &self.offsets).expect("rotation of unit rows stays nonzero")
    }

    /// The polytope `s P` for `s > 0`.
    pub fn scaled(&self, s: f64) -> HPolytope {
        assert!(s > 0.0);
        HPolytope {
            dim: self.dim,
            normals: self.normals.clone(),
            offsets: self.offsets.iter().map(|b| s * b).collect(),
        }
    }

    /// Keeps only the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> HPolytope {
        let normals = Matrix::from_fn(rows.len(), self.dim, |i, j| self.normals[(rows[i], j)]);
        HPolytope { dim: self.dim, normals, offsets: rows.iter().map(|&i| self.offsets[i]).collect() }
    }
}

impl<'de> Deserialize<'de> for HPolytope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            dim: usize,
            normals: Matrix,
            offsets: Vec<f64>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.normals.ncols() != raw.dim {
            return Err(serde::de::Error::custom("normal rows do not match dim"));
        }
        normalize(&raw.normals, &raw.offsets).map_err(serde::de::Error::custom)
    }
}

/// Rescales every row of `(A, b)` to a unit normal. The feasible set is
/// unchanged.
pub fn normalize(raw_normals: &Matrix, raw_offsets: &[f64]) -> Result<HPolytope> {
    let (m, d) = (raw_normals.nrows(), raw_normals.ncols());
    if m == 0 || d == 0 {
        return Err(Error::InvalidInput("need at least one constraint and one dimension".into()));
    }
    if raw_offsets.len() != m {
        return Err(Error::InvalidInput(format!("{} offsets for {} rows", raw_offsets.len(), m)));
    }
    if !raw_normals.is_finite() || !raw_offsets.iter().all(|b| b.is_finite()) {
        return Err(Error::InvalidInput("non-finite entry".into()));
    }
    let mut normals = raw_normals.clone();
    let mut offsets = raw_offsets.to_vec();
    for i in 0..m {
        let n = norm(raw_normals.row(i));
        if n <= tol::MIN_ROW_NORM {
            return Err(Error::NearZeroRow(i));
        }
        // Leave rows that are already unit untouched so normalization is
        // idempotent bit for bit.
        if n != 1.0 {
            for v in normals.row_mut(i) {
                *v /= n;
            }
            offsets[i] /= n;
        }
    }
    Ok(HPolytope { dim: d, normals, offsets })
}

/// True iff `max +-x_k` over `P` is finite for every coordinate `k`.
pub fn is_bounded(p: &HPolytope) -> Result<bool> {
    let d = p.dim();
    for k in 0..d {
        for sign in [1.0, -1.0] {
            let mut c = vec![0.0; d];
            c[k] = sign;
            let sol = solve_lp(&LpProblem::new(c, p.normals().clone(), p.offsets().to_vec()))?;
            match sol.status {
                LpStatus::Infeasible => return Err(Error::InfeasibleSystem),
                LpStatus::Unbounded => return Ok(false),
                LpStatus::Optimal => {}
            }
        }
    }
    Ok(true)
}

/// Interiority of the origin, decided from the sign of the offsets.
///
/// With unit rows the origin is interior exactly when every `b_i` is
/// strictly positive; then the ball of radius `min_i b_i / 2` about the
/// origin lies inside `P`.
pub fn origin_interior(p: &HPolytope) -> bool {
    p.offsets().iter().all(|&b| b > tol::INTERIORITY)
}

/// Drops every row whose removal leaves the feasible set unchanged.
///
/// Row `i` is redundant when `max a_i.x` over the remaining rows does not
/// exceed `b_i`. Rows are tested from the highest index down against the rows
/// still kept, so among duplicates the lowest index survives.
pub fn remove_redundant(p: &HPolytope) -> Result<HPolytope> {
    let kept = irredundant_rows(p)?;
    Ok(p.select_rows(&kept))
}

/// Indices of the rows kept by [`remove_redundant`], ascending.
pub fn irredundant_rows(p: &HPolytope) -> Result<Vec<usize>> {
    let m = p.num_constraints();
    let feasibility = solve_lp(&LpProblem::new(vec![0.0; p.dim()], p.normals().clone(), p.offsets().to_vec()))?;
    if feasibility.status == LpStatus::Infeasible {
        return Err(Error::InfeasibleSystem);
    }
    let mut keep = vec![true; m];
    for i in (0..m).rev() {
        let others: Vec<usize> = (0..m).filter(|&j| j != i && keep[j]).collect();
        if others.is_empty() {
            continue;
        }
        let sub = p.select_rows(&others);
        let sol = solve_lp(&LpProblem::new(p.normal(i).to_vec(), sub.normals().clone(), sub.offsets().to_vec()))?;
        match sol.status {
            LpStatus::Optimal if sol.optimum <= p.offsets()[i] + tol::REDUNDANCY => keep[i] = false,
            LpStatus::Infeasible => return Err(Error::InfeasibleSystem),
            _ => {}
        }
    }
    Ok((0..m).filter(|&i| keep[i]).collect())
}

/// H-representation of the simplex with the given `d + 1` vertices.
///
/// Facet `k` passes through every vertex except vertex `k`, with its normal
/// oriented away from the omitted vertex.
pub fn simplex_from_vertices(vertices: &[Vec<f64>]) -> Result<HPolytope> {
    let n = vertices.len();
    if n < 2 {
        return Err(Error::InvalidInput("a simplex needs at least two vertices".into()));
    }
    let d = n - 1;
    if vertices.iter().any(|v| v.len() != d) {
        return Err(Error::InvalidInput(format!("a simplex in R^{d} needs {n} vertices of length {d}")));
    }
    if vertices.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("non-finite vertex coordinate".into()));
    }
    let extent = vertices
        .iter()
        .flat_map(|v| vertices.iter().map(move |w| crate::linalg::distance(v, w)))
        .fold(0.0_f64, f64::max);
    let mut normals = Vec::with_capacity(n);
    let mut offsets = Vec::with_capacity(n);
    for omit in 0..n {
        let face: Vec<&Vec<f64>> = vertices.iter().enumerate().filter(|(i, _)| *i != omit).map(|(_, v)| v).collect();
        let mut normal = hyperplane_normal(&face);
        let nn = norm(&normal);
        if nn <= tol::MIN_ROW_NORM * extent.powi(d as i32 - 1).max(1.0) {
            return Err(Error::InvalidInput("degenerate simplex: vertices are affinely dependent".into()));
        }
        normal.iter_mut().for_each(|c| *c /= nn);
        let offset = dot(&normal, face[0]);
        let side = dot(&normal, &vertices[omit]) - offset;
        if side.abs() <= 1e-12 * extent.max(1.0) {
            return Err(Error::InvalidInput("degenerate simplex: vertices are affinely dependent".into()));
        }
        if side > 0.0 {
            normal.iter_mut().for_each(|c| *c = -*c);
            normals.push(normal);
            offsets.push(-offset);
        } else {
            normals.push(normal);
            offsets.push(offset);
        }
    }
    HPolytope::from_rows(&normals, &offsets)
}

// Generalized cross product of the d-1 edge vectors of a face with d points.
fn hyperplane_normal(face: &[&Vec<f64>]) -> Vec<f64> {
    let d = face.len();
    if d == 1 {
        return vec![1.0];
    }
    let edges: Vec<Vec<f64>> = face[1..].iter().map(|v| sub(v, face[0])).collect();
    (0..d)
        .map(|k| {
            let minor = Matrix::from_fn(d - 1, d - 1, |i, j| edges[i][if j < k { j } else { j + 1 }]);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * determinant(&minor)
        })
        .collect()
}
