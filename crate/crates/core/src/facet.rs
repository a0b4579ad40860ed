//! Facet surface measures and centroids in two and three dimensions.

use crate::error::{Error, Result};
use crate::linalg::{axpy, distance, dot, norm, scale, sub};
use crate::polytope::HPolytope;
use crate::tol;
use crate::vertices::VertexSet;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FacetGeometry {
    pub facet_index: usize,
    /// Facet vertices; for `d = 3` ordered counter-clockwise seen from outside.
    pub vertices: Vec<Vec<f64>>,
    /// Length (`d = 2`) or area (`d = 3`).
    pub measure: f64,
    pub centroid: Vec<f64>,
}

/// Geometry of the facet supported by constraint `i`.
pub fn facet_geometry(p: &HPolytope, vs: &VertexSet, i: usize) -> Result<FacetGeometry> {
    let d = p.dim();
    if d != 2 && d != 3 {
        return Err(Error::UnsupportedDimension(d));
    }
    if i >= p.num_constraints() {
        return Err(Error::NotAFacet(i));
    }
    let on_facet: Vec<Vec<f64>> = vs
        .vertices
        .iter()
        .filter(|v| (p.offsets()[i] - dot(p.normal(i), v)).abs() <= tol::TIGHTNESS)
        .cloned()
        .collect();
    if on_facet.len() < d {
        return Err(Error::NotAFacet(i));
    }
    let geom = if d == 2 { segment(i, on_facet) } else { polygon(p.normal(i), i, on_facet) };
    if geom.measure <= tol::FEASIBILITY {
        return Err(Error::NotAFacet(i));
    }
    Ok(geom)
}

fn segment(i: usize, pts: Vec<Vec<f64>>) -> FacetGeometry {
    // A facet of a polygon has exactly two vertices; with near-duplicates the
    // farthest pair spans the edge.
    let (mut a, mut b, mut best) = (0, 1, -1.0);
    for x in 0..pts.len() {
        for y in x + 1..pts.len() {
            let dxy = distance(&pts[x], &pts[y]);
            if dxy > best {
                (a, b, best) = (x, y, dxy);
            }
        }
    }
    let centroid = scale(0.5, &pts[a].iter().zip(&pts[b]).map(|(u, v)| u + v).collect::<Vec<_>>());
    FacetGeometry { facet_index: i, vertices: vec![pts[a].clone(), pts[b].clone()], measure: best, centroid }
}

/// Orthonormal basis of the plane orthogonal to the unit vector `a`, built by
/// Gram-Schmidt from the two standard basis vectors least aligned with `a`.
pub fn in_plane_basis(a: &[f64]) -> [Vec<f64>; 2] {
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|&x, &y| a[x].abs().total_cmp(&a[y].abs()).then(x.cmp(&y)));
    let unit = |k: usize| {
        let mut e = vec![0.0; 3];
        e[k] = 1.0;
        e
    };
    let mut u = unit(idx[0]);
    axpy(-dot(&u, a), a, &mut u);
    let nu = norm(&u);
    u.iter_mut().for_each(|c| *c /= nu);
    let mut w = unit(idx[1]);
    axpy(-dot(&w, a), a, &mut w);
    axpy(-dot(&w, &u), &u.clone(), &mut w);
    let nw = norm(&w);
    w.iter_mut().for_each(|c| *c /= nw);
    [u, w]
}

fn cross(a: &[f64], b: &[f64]) -> Vec<f64> {
    vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn polygon(normal: &[f64], i: usize, pts: Vec<Vec<f64>>) -> FacetGeometry {
    let n = pts.len() as f64;
    let mut mean = vec![0.0; 3];
    for v in &pts {
        axpy(1.0 / n, v, &mut mean);
    }
    let [u, w] = in_plane_basis(normal);
    let mut ordered: Vec<(f64, Vec<f64>)> = pts
        .into_iter()
        .map(|v| {
            let r = sub(&v, &mean);
            (dot(&r, &w).atan2(dot(&r, &u)), v)
        })
        .collect();
    ordered.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut vertices: Vec<Vec<f64>> = ordered.into_iter().map(|(_, v)| v).collect();
    // Keep the orientation counter-clockwise about the outer normal.
    if vertices.len() >= 3 {
        let turn = cross(&sub(&vertices[1], &vertices[0]), &sub(&vertices[2], &vertices[0]));
        let mut signed = 0.0;
        for k in 1..vertices.len() - 1 {
            signed += dot(&cross(&sub(&vertices[k], &vertices[0]), &sub(&vertices[k + 1], &vertices[0])), normal);
        }
        if signed < 0.0 || (signed == 0.0 && dot(&turn, normal) < 0.0) {
            vertices[1..].reverse();
        }
    }

    let mut area = 0.0;
    let mut centroid = vec![0.0; 3];
    let v0 = &vertices[0];
    for k in 1..vertices.len() - 1 {
        let t = 0.5 * norm(&cross(&sub(&vertices[k], v0), &sub(&vertices[k + 1], v0)));
        area += t;
        for c in 0..3 {
            centroid[c] += t * (v0[c] + vertices[k][c] + vertices[k + 1][c]) / 3.0;
        }
    }
    if area > 0.0 {
        centroid.iter_mut().for_each(|c| *c /= area);
    } else {
        centroid = mean;
    }
    FacetGeometry { facet_index: i, vertices, measure: area, centroid }
}

/// Geometry of every facet, in constraint order.
pub fn all_facets(p: &HPolytope, vs: &VertexSet) -> Result<Vec<FacetGeometry>> {
    (0..p.num_constraints()).map(|i| facet_geometry(p, vs, i)).collect()
}
