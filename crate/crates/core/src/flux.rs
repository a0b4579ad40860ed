//! Facet flux integrals and recovery of a constant field from them.
//!
//! For a field `J` on a polytope with facets `F_i` and outer unit normals
//! `a_i`, the flux through facet `i` is `phi_i = int_{F_i} J . a_i dsigma`.
//! A constant field satisfies `(J . a_i) sigma(F_i) = phi_i`, so dividing by
//! the facet measures gives the row system `A J = phi_hat`, solved in the
//! least-squares sense through the normal equations `A^T A J = A^T phi_hat`.

use crate::error::{Error, Result};
use crate::facet::{all_facets, FacetGeometry};
use crate::linalg::{axpy, cholesky, cholesky_solve, dot, norm, Matrix};
use crate::polytope::HPolytope;
use crate::spectral::svd;
use crate::tol;
use crate::vertices::enumerate_vertices;
use serde::{Deserialize, Serialize};
use std::fmt;

/// `sigma_min(A)` at or below this makes the Gram matrix singular.
pub const SINGULAR_TOL: f64 = 1e-10;

/// Abscissae of the 8-point Gauss-Legendre rule on `[-1, 1]` (positive half).
pub const GAUSS_LEGENDRE_8_NODES: [f64; 4] =
    [0.183_434_642_495_649_8, 0.525_532_409_916_329_0, 0.796_666_477_413_626_7, 0.960_289_856_497_536_3];
pub const GAUSS_LEGENDRE_8_WEIGHTS: [f64; 4] =
    [0.362_683_783_378_362_0, 0.313_706_645_877_887_3, 0.222_381_034_453_374_5, 0.101_228_536_290_376_3];

/// Degree-5, 7-point rule on a triangle, as barycentric coordinates and
/// weights summing to one.
pub fn triangle_rule_7() -> [([f64; 3], f64); 7] {
    let r15 = 15f64.sqrt();
    let a1 = (6.0 - r15) / 21.0;
    let a2 = (6.0 + r15) / 21.0;
    let w1 = (155.0 - r15) / 1200.0;
    let w2 = (155.0 + r15) / 1200.0;
    let (b1, b2) = (1.0 - 2.0 * a1, 1.0 - 2.0 * a2);
    [
        ([1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0], 9.0 / 40.0),
        ([a1, a1, b1], w1),
        ([a1, b1, a1], w1),
        ([b1, a1, a1], w1),
        ([a2, a2, b2], w2),
        ([a2, b2, a2], w2),
        ([b2, a2, a2], w2),
    ]
}

/// A vector field on the polytope.
pub enum FieldSpec<'a> {
    Constant(Vec<f64>),
    /// `J(y) = j0 + M y`
    Affine {
        j0: Vec<f64>,
        m: Matrix,
    },
    /// Arbitrary field evaluated pointwise and integrated by quadrature.
    Sampled(&'a (dyn Fn(&[f64]) -> Vec<f64> + Sync)),
}

impl fmt::Debug for FieldSpec<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Constant(j) => f.debug_tuple("Constant").field(j).finish(),
            FieldSpec::Affine { j0, m } => f.debug_struct("Affine").field("j0", j0).field("m", m).finish(),
            FieldSpec::Sampled(_) => f.write_str("Sampled(..)"),
        }
    }
}

impl FieldSpec<'_> {
    fn validate(&self, d: usize) -> Result<()> {
        let ok = match self {
            FieldSpec::Constant(j) => j.len() == d && j.iter().all(|x| x.is_finite()),
            FieldSpec::Affine { j0, m } => {
                j0.len() == d && j0.iter().all(|x| x.is_finite()) && m.nrows() == d && m.ncols() == d && m.is_finite()
            }
            FieldSpec::Sampled(_) => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("field parameters do not match dimension {d}")))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FluxData {
    pub phi: Vec<f64>,
    pub facet_measures: Vec<f64>,
    /// `phi_i / sigma(F_i)`
    pub phi_hat: Vec<f64>,
}

impl FluxData {
    pub fn new(phi: Vec<f64>, facet_measures: Vec<f64>) -> Result<Self> {
        if phi.len() != facet_measures.len() {
            return Err(Error::InvalidInput("phi and facet measures differ in length".into()));
        }
        if facet_measures.iter().any(|s| !(*s > 0.0)) || phi.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("facet measures must be positive and fluxes finite".into()));
        }
        let phi_hat = phi.iter().zip(&facet_measures).map(|(p, s)| p / s).collect();
        Ok(Self { phi, facet_measures, phi_hat })
    }
}

/// Flux of `field` through every facet of `p`, in constraint order.
pub fn facet_flux(p: &HPolytope, field: &FieldSpec<'_>) -> Result<FluxData> {
    let d = p.dim();
    if d != 2 && d != 3 {
        return Err(Error::UnsupportedDimension(d));
    }
    field.validate(d)?;
    let vs = enumerate_vertices(p)?;
    let facets = all_facets(p, &vs)?;
    let phi = facets
        .iter()
        .map(|f| {
            let a = p.normal(f.facet_index);
            match field {
                FieldSpec::Constant(j) => Ok(dot(j, a) * f.measure),
                FieldSpec::Affine { j0, m } => {
                    let mut j = j0.clone();
                    axpy(1.0, &m.mul_vec(&f.centroid), &mut j);
                    Ok(dot(&j, a) * f.measure)
                }
                FieldSpec::Sampled(eval) => integrate_normal_component(f, a, *eval),
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    FluxData::new(phi, facets.iter().map(|f| f.measure).collect())
}

fn integrate_normal_component(f: &FacetGeometry, a: &[f64], eval: &dyn Fn(&[f64]) -> Vec<f64>) -> Result<f64> {
    let sample = |y: &[f64]| -> Result<f64> {
        let j = eval(y);
        if j.len() != a.len() || j.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("sampled field returned a malformed vector".into()));
        }
        Ok(dot(&j, a))
    };
    if a.len() == 2 {
        let (p, q) = (&f.vertices[0], &f.vertices[1]);
        let mid: Vec<f64> = p.iter().zip(q).map(|(x, y)| 0.5 * (x + y)).collect();
        let half: Vec<f64> = p.iter().zip(q).map(|(x, y)| 0.5 * (y - x)).collect();
        let mut sum = 0.0;
        for (t, w) in GAUSS_LEGENDRE_8_NODES.iter().zip(GAUSS_LEGENDRE_8_WEIGHTS) {
            for s in [*t, -*t] {
                let y: Vec<f64> = mid.iter().zip(&half).map(|(m, h)| m + s * h).collect();
                sum += w * sample(&y)?;
            }
        }
        // The reference interval has length 2.
        Ok(sum * 0.5 * f.measure)
    } else {
        let rule = triangle_rule_7();
        let v0 = &f.vertices[0];
        let mut total = 0.0;
        for k in 1..f.vertices.len() - 1 {
            let (v1, v2) = (&f.vertices[k], &f.vertices[k + 1]);
            let e1: Vec<f64> = v1.iter().zip(v0).map(|(x, y)| x - y).collect();
            let e2: Vec<f64> = v2.iter().zip(v0).map(|(x, y)| x - y).collect();
            let cross = [e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2], e1[0] * e2[1] - e1[1] * e2[0]];
            let area = 0.5 * norm(&cross);
            let mut s = 0.0;
            for (bary, w) in &rule {
                let y: Vec<f64> = (0..3).map(|c| bary[0] * v0[c] + bary[1] * v1[c] + bary[2] * v2[c]).collect();
                s += w * sample(&y)?;
            }
            total += area * s;
        }
        Ok(total)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionResult {
    #[serde(rename = "J")]
    pub j_recovered: Vec<f64>,
    /// `|A J - phi_hat|`
    pub residual_norm: f64,
    /// `sigma_1^2 / sigma_d^2`
    pub gram_condition: f64,
}

/// Least-squares constant field from facet fluxes.
pub fn reconstruct(p: &HPolytope, data: &FluxData) -> Result<ReconstructionResult> {
    let a = p.normals();
    if data.phi_hat.len() != a.nrows() {
        return Err(Error::InvalidInput(format!("{} flux values for {} facets", data.phi_hat.len(), a.nrows())));
    }
    if a.nrows() < a.ncols() {
        return Err(Error::SingularGram(0.0));
    }
    let spectrum = svd(a)?;
    let smin = spectrum.sigma_min();
    if smin <= SINGULAR_TOL.max(tol::FLAT) {
        return Err(Error::SingularGram(smin));
    }
    let gram = a.gram();
    let l = cholesky(&gram).ok_or(Error::SingularGram(smin))?;
    let j = cholesky_solve(&l, &a.tr_mul_vec(&data.phi_hat));
    let fitted = a.mul_vec(&j);
    let residual_norm = fitted.iter().zip(&data.phi_hat).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
    Ok(ReconstructionResult { j_recovered: j, residual_norm, gram_condition: (spectrum.sigma_max() / smin).powi(2) })
}
