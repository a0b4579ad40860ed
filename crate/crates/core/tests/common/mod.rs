#![allow(dead_code)]

use polyround::generators::{generate, Family, GaussianStream, GeneratorSpec};
use polyround::linalg::Matrix;
use polyround::HPolytope;

pub fn gen(family: Family, dim: usize, seed: u64) -> HPolytope {
    generate(&GeneratorSpec::new(family, dim, seed)).unwrap()
}

pub fn square() -> HPolytope {
    gen(Family::Cube, 2, 0)
}

/// A small mixed corpus: every family for d in 2..=max_dim.
pub fn corpus(max_dim: usize, seeds: u64) -> Vec<(String, HPolytope)> {
    let mut out = Vec::new();
    for d in 2..=max_dim {
        for seed in 0..seeds {
            let mut fams = vec![Family::RotatedCube, Family::PerturbedSimplex { noise: 0.15 }];
            for m in d + 1..=3 * d {
                fams.push(Family::TangentBall { m });
            }
            if seed == 0 {
                fams.extend([Family::Cube, Family::RegularSimplex, Family::Slab { epsilon: 0.01 }]);
            }
            for f in fams {
                out.push((format!("{f} d={d} seed={seed}"), gen(f, d, seed)));
            }
        }
    }
    out
}

pub fn orthogonal(d: usize, seed: u64) -> Matrix {
    GaussianStream::new(seed).orthogonal(d)
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}
