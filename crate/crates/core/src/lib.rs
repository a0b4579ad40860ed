//! Roundness of bounded convex polytopes.
//!
//! For `P = {x : A x <= b}` with unit-norm rows, this crate computes the
//! inradius (via the Chebyshev-center linear program), the diameter (via
//! vertex enumeration), the degeneracy ratio `delta(P) = inradius / diameter`
//! and the smallest singular value `sigma_min(A)`, and checks the bound
//! `delta(P) < sigma_min(A)`. The bound certifies that the constant field
//! behind a set of facet fluxes can be recovered uniquely, and underlies the
//! inscribed-ball regularity audit of mesh cells.
//!
//! ```
//! use polyround::generators::{generate, Family, GeneratorSpec};
//! use polyround::roundness::analyze;
//!
//! let cube = generate(&GeneratorSpec::new(Family::Cube, 3, 0)).unwrap();
//! let report = analyze(&cube).unwrap();
//! assert!((report.delta - 1.0 / (2.0 * 3f64.sqrt())).abs() < 1e-12);
//! assert!(report.delta < report.sigma_min);
//! ```

pub mod audit;
pub mod chebyshev;
pub mod error;
pub mod facet;
pub mod flux;
pub mod generators;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod roundness;
pub mod spectral;
pub mod tol;
pub mod vertices;

pub use error::{Error, Result};
pub use linalg::Matrix;
pub use polytope::HPolytope;

// Compile and run the guide's code listings as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polytopes.md")]
    mod polytopes {}
    #[doc = include_str!("../../../book/src/inradius.md")]
    mod inradius {}
    #[doc = include_str!("../../../book/src/spectrum.md")]
    mod spectrum {}
    #[doc = include_str!("../../../book/src/bound.md")]
    mod bound {}
    #[doc = include_str!("../../../book/src/flux.md")]
    mod flux {}
    #[doc = include_str!("../../../book/src/audit.md")]
    mod audit {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
