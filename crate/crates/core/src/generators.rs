//! Seeded polytope families.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`).
//! Standard normals are produced by Box-Muller from pairs of uniforms drawn
//! from that stream, so a corpus is fully determined by `(family, dim, seed)`.

use crate::error::{Error, Result};
use crate::linalg::{dot, norm, Matrix};
use crate::polytope::{is_bounded, HPolytope};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

pub const MAX_ATTEMPTS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    Cube,
    #[serde(rename = "simplex")]
    RegularSimplex,
    Slab {
        epsilon: f64,
    },
    TangentBall {
        m: usize,
    },
    RotatedCube,
    PerturbedSimplex {
        noise: f64,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Cube => "cube",
            Family::RegularSimplex => "simplex",
            Family::Slab { .. } => "slab",
            Family::TangentBall { .. } => "tangent-ball",
            Family::RotatedCube => "rotated-cube",
            Family::PerturbedSimplex { .. } => "perturbed-simplex",
        }
    }
}

/// Family names as accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyName {
    Cube,
    Simplex,
    Slab,
    TangentBall,
    RotatedCube,
    PerturbedSimplex,
}

impl FromStr for FamilyName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "cube" => FamilyName::Cube,
            "simplex" => FamilyName::Simplex,
            "slab" => FamilyName::Slab,
            "tangent-ball" => FamilyName::TangentBall,
            "rotated-cube" => FamilyName::RotatedCube,
            "perturbed-simplex" => FamilyName::PerturbedSimplex,
            other => return Err(Error::InvalidInput(format!("unknown family {other:?}"))),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Slab { epsilon } => write!(f, "slab(eps={epsilon})"),
            Family::TangentBall { m } => write!(f, "tangent-ball(m={m})"),
            Family::PerturbedSimplex { noise } => write!(f, "perturbed-simplex(noise={noise})"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub family: Family,
    pub dim: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(family: Family, dim: usize, seed: u64) -> Self {
        Self { family, dim, seed }
    }

    fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidInput("dim must be at least 1".into()));
        }
        match self.family {
            Family::Slab { epsilon } if !(epsilon > 0.0 && epsilon.is_finite()) => {
                Err(Error::InvalidInput("slab epsilon must be positive".into()))
            }
            Family::TangentBall { m } if m < self.dim + 1 => {
                Err(Error::InvalidInput(format!("tangent-ball needs m >= {}", self.dim + 1)))
            }
            Family::PerturbedSimplex { noise } if !(noise >= 0.0 && noise.is_finite()) => {
                Err(Error::InvalidInput("noise must be nonnegative".into()))
            }
            _ => Ok(()),
        }
    }
}

/// Standard normal deviates by Box-Muller over a ChaCha8 stream.
pub struct GaussianStream {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl GaussianStream {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), spare: None }
    }

    pub fn next_gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        // u1 in (0, 1] keeps the logarithm finite.
        let u1 = 1.0 - self.rng.gen::<f64>();
        let u2: f64 = self.rng.gen();
        let radius = (-2.0 * u1.ln()).sqrt();
        self.spare = Some(radius * (TAU * u2).sin());
        radius * (TAU * u2).cos()
    }

    pub fn gaussian_vec(&mut self, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.next_gaussian()).collect()
    }

    /// Uniform point on the unit sphere in `R^n`.
    pub fn unit_vector(&mut self, n: usize) -> Vec<f64> {
        loop {
            let g = self.gaussian_vec(n);
            let r = norm(&g);
            if r > 1e-12 {
                return g.into_iter().map(|x| x / r).collect();
            }
        }
    }

    /// Random orthogonal matrix: Gram-Schmidt on Gaussian columns.
    pub fn orthogonal(&mut self, n: usize) -> Matrix {
        let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
        while cols.len() < n {
            let mut c = self.gaussian_vec(n);
            for _ in 0..2 {
                for q in &cols {
                    let p = dot(&c, q);
                    c.iter_mut().zip(q).for_each(|(x, y)| *x -= p * y);
                }
            }
            let r = norm(&c);
            if r > 1e-8 {
                cols.push(c.into_iter().map(|x| x / r).collect());
            }
        }
        Matrix::from_fn(n, n, |i, j| cols[j][i])
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.gen()
    }
}

fn cube_rows(d: usize) -> Vec<Vec<f64>> {
    let mut rows = Vec::with_capacity(2 * d);
    for s in [1.0, -1.0] {
        for k in 0..d {
            let mut r = vec![0.0; d];
            r[k] = s;
            rows.push(r);
        }
    }
    rows
}

/// `d + 1` unit vectors in `R^d` with pairwise inner product `-1/d`.
///
/// These are the centered standard basis vectors of `R^{d+1}` expressed in
/// an orthonormal (Helmert) basis of the sum-zero hyperplane.
pub fn regular_simplex_normals(d: usize) -> Vec<Vec<f64>> {
    let n = d + 1;
    let helmert: Vec<Vec<f64>> = (1..=d)
        .map(|k| {
            let s = ((k * (k + 1)) as f64).sqrt();
            (0..n)
                .map(|i| {
                    if i < k {
                        1.0 / s
                    } else if i == k {
                        -(k as f64) / s
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect();
    (0..n)
        .map(|i| {
            let mut e = vec![-1.0 / n as f64; n];
            e[i] += 1.0;
            let coords: Vec<f64> = helmert.iter().map(|h| dot(h, &e)).collect();
            let r = norm(&coords);
            coords.into_iter().map(|x| x / r).collect()
        })
        .collect()
}

/// Builds the polytope described by `spec`.
pub fn generate(spec: &GeneratorSpec) -> Result<HPolytope> {
    spec.validate()?;
    let d = spec.dim;
    let mut rng = GaussianStream::new(spec.seed);
    let p = match spec.family {
        Family::Cube => HPolytope::from_rows(&cube_rows(d), &vec![1.0; 2 * d])?,
        Family::RegularSimplex => HPolytope::from_rows(&regular_simplex_normals(d), &vec![1.0; d + 1])?,
        Family::Slab { epsilon } => {
            let mut b = vec![1.0; 2 * d];
            b[d - 1] = epsilon;
            b[2 * d - 1] = epsilon;
            HPolytope::from_rows(&cube_rows(d), &b)?
        }
        Family::RotatedCube => {
            let q = rng.orthogonal(d);
            HPolytope::from_rows(&cube_rows(d), &vec![1.0; 2 * d])?.rotated(&q)
        }
        Family::TangentBall { m } => {
            return retry(|| {
                let rows: Vec<Vec<f64>> = (0..m).map(|_| rng.unit_vector(d)).collect();
                HPolytope::from_rows(&rows, &vec![1.0; m])
            })
        }
        Family::PerturbedSimplex { noise } => {
            let base = regular_simplex_normals(d);
            return retry(|| {
                let rows: Vec<Vec<f64>> =
                    base.iter().map(|a| a.iter().map(|x| x + noise * rng.next_gaussian()).collect()).collect();
                HPolytope::from_rows(&rows, &vec![1.0; d + 1])
            });
        }
    };
    if !is_bounded(&p)? {
        return Err(Error::GenerationFailed(1));
    }
    Ok(p)
}

fn retry(mut draw: impl FnMut() -> Result<HPolytope>) -> Result<HPolytope> {
    for _ in 0..MAX_ATTEMPTS {
        match draw() {
            Ok(p) if is_bounded(&p)? => return Ok(p),
            Ok(_) | Err(Error::NearZeroRow(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenerationFailed(MAX_ATTEMPTS))
}
