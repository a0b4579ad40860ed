//! Brute-force vertex enumeration and the polytope diameter.

use crate::error::{Error, Result};
use crate::linalg::{distance, solve, Matrix};
use crate::polytope::HPolytope;
use crate::tol;
use itertools::Itertools;
use serde::{Deserialize, Serialize};

/// Default cap on the number of constraints accepted by enumeration.
pub const ENUMERATION_CAP: usize = 40;
/// Largest dimension accepted by enumeration.
pub const MAX_ENUMERATION_DIM: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexSet {
    pub vertices: Vec<Vec<f64>>,
    /// For each vertex, the indices of the constraints tight there.
    pub active_sets: Vec<Vec<usize>>,
}

impl VertexSet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// All vertices of a bounded, full-dimensional polytope.
///
/// Every `d`-subset of constraints with a nonsingular normal block is solved
/// for its intersection point; feasible points are kept and near-duplicates
/// merged.
pub fn enumerate_vertices(p: &HPolytope) -> Result<VertexSet> {
    enumerate_vertices_with_cap(p, ENUMERATION_CAP)
}

pub fn enumerate_vertices_with_cap(p: &HPolytope, cap: usize) -> Result<VertexSet> {
    let vs = enumerate_points(p, cap)?;
    if vs.len() < p.dim() + 1 {
        return Err(Error::DegeneratePolytope { found: vs.len(), dim: p.dim() });
    }
    Ok(vs)
}

/// Like [`enumerate_vertices`] but without the `d + 1` vertex requirement, so
/// it also serves flat polytopes.
pub(crate) fn enumerate_points(p: &HPolytope, cap: usize) -> Result<VertexSet> {
    let (m, d) = (p.num_constraints(), p.dim());
    if m > cap || d > MAX_ENUMERATION_DIM {
        return Err(Error::TooManyConstraints { m, d, cap });
    }
    let dedupe = tol::vertex_dedupe(p.offsets());
    let mut vertices: Vec<Vec<f64>> = Vec::new();
    for subset in (0..m).combinations(d) {
        let block = Matrix::from_fn(d, d, |i, j| p.normals()[(subset[i], j)]);
        let rhs: Vec<f64> = subset.iter().map(|&i| p.offsets()[i]).collect();
        let Some(x) = solve(&block, &rhs, 1e-10) else {
            continue;
        };
        if !p.contains(&x, tol::FEASIBILITY) {
            continue;
        }
        if vertices.iter().any(|v| distance(v, &x) <= dedupe) {
            continue;
        }
        vertices.push(x);
    }
    let active_sets = vertices
        .iter()
        .map(|v| p.slacks(v).iter().enumerate().filter(|(_, &s)| s <= tol::TIGHTNESS).map(|(i, _)| i).collect())
        .collect();
    Ok(VertexSet { vertices, active_sets })
}

/// Largest pairwise Euclidean distance between vertices.
pub fn diameter(vs: &VertexSet) -> Result<f64> {
    diameter_of_points(&vs.vertices)
}

pub fn diameter_of_points(points: &[Vec<f64>]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::NotEnoughVertices);
    }
    Ok(points.iter().tuple_combinations().map(|(a, b)| distance(a, b)).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::simplex_from_vertices;

    fn cube(d: usize) -> HPolytope {
        let mut rows = Vec::new();
        for s in [1.0, -1.0] {
            for k in 0..d {
                let mut r = vec![0.0; d];
                r[k] = s;
                rows.push(r);
            }
        }
        HPolytope::from_rows(&rows, &vec![1.0; 2 * d]).unwrap()
    }

    #[test]
    fn square_has_four_vertices() {
        let vs = enumerate_vertices(&cube(2)).unwrap();
        assert_eq!(vs.len(), 4);
        for v in &vs.vertices {
            assert!(v.iter().all(|c| (c.abs() - 1.0).abs() < 1e-15));
        }
        assert!(vs.active_sets.iter().all(|a| a.len() == 2));
    }

    #[test]
    fn cube_has_eight_vertices() {
        let vs = enumerate_vertices(&cube(3)).unwrap();
        assert_eq!(vs.len(), 8);
    }

    #[test]
    fn triangle_vertices() {
        let s = 0.5_f64.sqrt();
        let p = HPolytope::from_rows(&[vec![-1.0, 0.0], vec![0.0, -1.0], vec![s, s]], &[0.0, 0.0, s]).unwrap();
        let mut vs = enumerate_vertices(&p).unwrap().vertices;
        vs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let expect = [[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]];
        for (v, e) in vs.iter().zip(expect) {
            assert!(distance(v, &e) < 1e-14);
        }
        assert!((diameter_of_points(&vs).unwrap() - 2.0_f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn cube_diameters() {
        for d in 1..=5 {
            let dia = diameter(&enumerate_vertices(&cube(d)).unwrap()).unwrap();
            assert!((dia - 2.0 * (d as f64).sqrt()).abs() < 1e-13, "d={d}");
        }
    }

    #[test]
    fn caps_enforced() {
        assert!(matches!(enumerate_vertices_with_cap(&cube(3), 5), Err(Error::TooManyConstraints { .. })));
        assert!(matches!(enumerate_vertices(&cube(9)), Err(Error::TooManyConstraints { .. })));
    }

    #[test]
    fn flat_input_is_degenerate() {
        // Segment [0,1] x {0} in R^2.
        let p = HPolytope::from_rows(
            &[vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]],
            &[1.0, 0.0, 0.0, 0.0],
        )
        .unwrap();
        assert!(matches!(enumerate_vertices(&p), Err(Error::DegeneratePolytope { found: 2, dim: 2 })));
    }

    #[test]
    fn diameter_needs_two_points() {
        assert_eq!(diameter_of_points(&[vec![0.0]]), Err(Error::NotEnoughVertices));
    }

    #[test]
    fn simplex_roundtrip_vertices() {
        let input = vec![vec![0.0, 0.0, 0.0], vec![2.0, 0.0, 0.0], vec![0.0, 3.0, 0.0], vec![0.0, 0.0, 1.0]];
        let p = simplex_from_vertices(&input).unwrap();
        let vs = enumerate_vertices(&p).unwrap();
        assert_eq!(vs.len(), 4);
        for v in &input {
            assert!(vs.vertices.iter().any(|w| distance(v, w) < 1e-12));
        }
    }
}
