//! Degeneracy ratio, the singular value bound, and the bound's witness.
//!
//! For a bounded full-dimensional polytope `P = {x : A x <= b}` with unit
//! rows, the degeneracy ratio `delta = inradius / diameter` is strictly
//! smaller than the smallest singular value of `A`. [`analyze`] reports both
//! sides; [`extract_witness`] rebuilds the geometric argument behind the
//! inequality numerically, along the smallest right singular vector, and
//! records each intermediate relation as a [`ChainCheck`].

use crate::chebyshev::chebyshev;
use crate::error::{Error, Result};
use crate::linalg::{distance, dot, scale};
use crate::polytope::{irredundant_rows, is_bounded, HPolytope};
use crate::spectral::svd;
use crate::tol;
use crate::vertices::{diameter_of_points, enumerate_points, VertexSet, ENUMERATION_CAP};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundnessReport {
    pub inradius: f64,
    #[serde(rename = "center")]
    pub chebyshev_center: Vec<f64>,
    pub diameter: f64,
    pub delta: f64,
    pub sigma_min: f64,
    pub bound_margin: f64,
    pub full_dimensional: bool,
    pub num_constraints: usize,
    /// Spectrum of the rows as given, when it was requested or when
    /// redundant rows were dropped before analysis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw: Option<RawSpectrum>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RawSpectrum {
    pub num_constraints: usize,
    pub removed_rows: Vec<usize>,
    pub sigma_min: f64,
    pub bound_margin: f64,
}

impl RoundnessReport {
    /// `diameter / inradius`, infinite for flat polytopes.
    pub fn inverse_delta(&self) -> f64 {
        if self.full_dimensional {
            self.diameter / self.inradius
        } else {
            f64::INFINITY
        }
    }

    /// True when the singular value bound is satisfied (or vacuous because
    /// the polytope is flat).
    pub fn bound_holds(&self) -> bool {
        !self.full_dimensional || self.bound_margin > 0.0
    }
}

/// Degeneracy ratio and smallest singular value of an irredundant polytope.
pub fn analyze(p: &HPolytope) -> Result<RoundnessReport> {
    Ok(analyze_parts(p)?.0)
}

/// Drops redundant rows, then analyzes. The raw spectrum is attached when
/// `keep_redundant` is set or when any row was dropped.
pub fn analyze_polytope(p: &HPolytope, keep_redundant: bool) -> Result<RoundnessReport> {
    if !is_bounded(p)? {
        return Err(Error::Unbounded);
    }
    let kept = irredundant_rows(p)?;
    let reduced = p.select_rows(&kept);
    let mut report = analyze(&reduced)?;
    if keep_redundant || kept.len() != p.num_constraints() {
        let raw_sigma = svd(p.normals())?.sigma_min();
        report.raw = Some(RawSpectrum {
            num_constraints: p.num_constraints(),
            removed_rows: (0..p.num_constraints()).filter(|i| !kept.contains(i)).collect(),
            sigma_min: raw_sigma,
            bound_margin: raw_sigma - report.delta,
        });
    }
    Ok(report)
}

pub(crate) fn analyze_parts(p: &HPolytope) -> Result<(RoundnessReport, VertexSet)> {
    if p.num_constraints() < p.dim() {
        // A x <= b with fewer rows than columns cannot bound anything.
        return Err(Error::Unbounded);
    }
    if !is_bounded(p)? {
        return Err(Error::Unbounded);
    }
    let ball = chebyshev(p)?;
    let full_dimensional = ball.radius > tol::FLAT;
    let vs = enumerate_points(p, ENUMERATION_CAP)?;
    if full_dimensional && vs.len() < p.dim() + 1 {
        return Err(Error::DegeneratePolytope { found: vs.len(), dim: p.dim() });
    }
    let diameter = if vs.len() >= 2 { diameter_of_points(&vs.vertices)? } else { 0.0 };
    let sigma_min = svd(p.normals())?.sigma_min();
    let delta = if full_dimensional { ball.radius / diameter } else { 0.0 };
    let report = RoundnessReport {
        inradius: ball.radius,
        chebyshev_center: ball.center,
        diameter,
        delta,
        sigma_min,
        bound_margin: sigma_min - delta,
        full_dimensional,
        num_constraints: p.num_constraints(),
        raw: None,
    };
    Ok((report, vs))
}

/// One relation of the witness chain, evaluated numerically.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainCheck {
    pub name: String,
    pub lhs: f64,
    pub relation: String,
    pub rhs: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ChainCheck {
    fn greater(name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self { name: name.into(), lhs, relation: ">".into(), rhs, tolerance, pass: lhs > rhs - tolerance }
    }

    fn at_least(name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self { name: name.into(), lhs, relation: ">=".into(), rhs, tolerance, pass: lhs >= rhs - tolerance }
    }

    fn equal(name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self { name: name.into(), lhs, relation: "=".into(), rhs, tolerance, pass: (lhs - rhs).abs() <= tolerance }
    }
}

/// The objects of the singular value bound's proof, evaluated for one
/// polytope translated so that its Chebyshev center is the origin.
///
/// The line through the origin along `v_d` (the right singular vector of
/// `sigma_min`) meets the boundary at `f = lambda1 v_d` on facet `facet_i`
/// and `g = lambda2 v_d` on facet `facet_j`. The points `A f`, `A g` and
/// `b_prime` form a right triangle in `R^m` whose hypotenuse has length
/// `sigma_min |lambda1 - lambda2|`, which yields the chain
/// `lhs_chain > mid_chain > rhs_chain`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundWitness {
    pub center: Vec<f64>,
    /// Offsets after translating the Chebyshev center to the origin.
    pub offsets: Vec<f64>,
    pub sigma_min: f64,
    pub v_d: Vec<f64>,
    pub lambda1: f64,
    pub lambda2: f64,
    pub f: Vec<f64>,
    pub g: Vec<f64>,
    pub facet_i: usize,
    pub facet_j: usize,
    pub af: Vec<f64>,
    pub ag: Vec<f64>,
    pub b_prime: Vec<f64>,
    /// `|f - g|`
    pub segment_length: f64,
    /// `|A f - A g|`
    pub image_length: f64,
    /// `|A g - b'|`
    pub leg_length: f64,
    /// `sigma_min |lambda1 - lambda2|`
    pub lhs_chain: f64,
    /// `b_i (1 + |lambda2 / lambda1|)`
    pub mid_chain: f64,
    /// `b_i`
    pub rhs_chain: f64,
    pub diameter: f64,
    pub inradius: f64,
    pub checks: Vec<ChainCheck>,
}

impl BoundWitness {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ChainCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Rebuilds the witness for `sigma_min * diameter > inradius`.
pub fn extract_witness(p: &HPolytope) -> Result<BoundWitness> {
    let ball = chebyshev(p)?;
    if ball.radius <= tol::FLAT {
        return Err(Error::NotFullDimensional);
    }
    let centered = p.translated(&scale(-1.0, &ball.center));
    let (report, _) = analyze_parts(&centered)?;
    witness_for(&centered, ball.center, report.diameter, report.inradius)
}

fn witness_for(centered: &HPolytope, center: Vec<f64>, diameter: f64, inradius: f64) -> Result<BoundWitness> {
    let a = centered.normals();
    let b = centered.offsets();
    let d = centered.dim();
    let spectrum = svd(a)?;
    let sigma = spectrum.sigma_min();
    let v_d = spectrum.right_vector(d - 1);

    // First boundary hit along +v_d and along -v_d; lowest index wins ties.
    let mut forward: Option<(usize, f64)> = None;
    let mut backward: Option<(usize, f64)> = None;
    for i in 0..centered.num_constraints() {
        let proj = dot(a.row(i), &v_d);
        if proj > tol::DIRECTION {
            let t = b[i] / proj;
            if forward.is_none_or(|(_, best)| t < best) {
                forward = Some((i, t));
            }
        } else if proj < -tol::DIRECTION {
            let t = b[i] / -proj;
            if backward.is_none_or(|(_, best)| t < best) {
                backward = Some((i, t));
            }
        }
    }
    let (Some((facet_i, lambda1)), Some((facet_j, back))) = (forward, backward) else {
        return Err(Error::DegenerateDirection);
    };
    let lambda2 = -back;

    let f = scale(lambda1, &v_d);
    let g = scale(lambda2, &v_d);
    let af = a.mul_vec(&f);
    let ag = a.mul_vec(&g);
    let mut b_prime = ag.clone();
    b_prime[facet_i] = b[facet_i];

    let b_i = b[facet_i];
    let segment_length = distance(&f, &g);
    let image_length = distance(&af, &ag);
    let leg_length = distance(&ag, &b_prime);
    let lhs_chain = sigma * (lambda1 - lambda2).abs();
    let mid_chain = b_i * (1.0 + (lambda2 / lambda1).abs());
    let rhs_chain = b_i;
    let right_angle: f64 = (0..af.len()).map(|k| (af[k] - b_prime[k]) * (ag[k] - b_prime[k])).sum();

    let checks = vec![
        ChainCheck::greater("lambda1 > 0", lambda1, 0.0, 0.0),
        ChainCheck::greater("0 > lambda2", 0.0, lambda2, 0.0),
        ChainCheck {
            name: "facet_i != facet_j".into(),
            lhs: facet_i as f64,
            relation: "!=".into(),
            rhs: facet_j as f64,
            tolerance: 0.0,
            pass: facet_i != facet_j,
        },
        ChainCheck::equal("|f - g| = |lambda1 - lambda2|", segment_length, (lambda1 - lambda2).abs(), 1e-9),
        ChainCheck::equal("|Af - Ag| = sigma_min |f - g|", image_length, sigma * segment_length, 1e-8),
        ChainCheck::equal("(Af - b').(Ag - b') = 0", right_angle, 0.0, 1e-9 * (1.0 + image_length * image_length)),
        ChainCheck::equal("|Ag - b'| = b_i (1 + |lambda2/lambda1|)", leg_length, mid_chain, 1e-9 * (1.0 + mid_chain)),
        ChainCheck::greater("sigma_min |lambda1 - lambda2| > b_i (1 + |lambda2/lambda1|)", lhs_chain, mid_chain, 1e-9),
        ChainCheck::greater("b_i (1 + |lambda2/lambda1|) > b_i", mid_chain - 1e-9, rhs_chain - 1e-9, 0.0),
        ChainCheck::greater("sigma_min diam(P) > b_i", sigma * diameter, b_i, 0.0),
        ChainCheck::at_least("b_i >= inradius", b_i, inradius, 1e-9),
        ChainCheck::greater("sigma_min > delta", sigma, inradius / diameter, 0.0),
    ];

    Ok(BoundWitness {
        center,
        offsets: b.to_vec(),
        sigma_min: sigma,
        v_d,
        lambda1,
        lambda2,
        f,
        g,
        facet_i,
        facet_j,
        af,
        ag,
        b_prime,
        segment_length,
        image_length,
        leg_length,
        lhs_chain,
        mid_chain,
        rhs_chain,
        diameter,
        inradius,
        checks,
    })
}

/// Well-posedness of the constant-field reconstruction `A J = phi`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub delta_positive: bool,
    /// A lower bound on `sigma_min(A)`; the bound is strict when positive.
    pub sigma_min_lower_bound: f64,
}

impl Certificate {
    pub fn from_report(report: &RoundnessReport) -> Self {
        Self { delta_positive: report.delta > tol::FLAT, sigma_min_lower_bound: report.delta }
    }
}

/// When `delta > 0` the normal matrix has full column rank, so the normal
/// equations have a unique solution.
pub fn certify_reconstruction(p: &HPolytope) -> Result<Certificate> {
    Ok(Certificate::from_report(&analyze(p)?))
}
