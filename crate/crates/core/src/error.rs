use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("row {0} has near-zero norm")]
    NearZeroRow(usize),
    #[error("the constraint system is infeasible")]
    InfeasibleSystem,
    #[error("the polytope is unbounded")]
    Unbounded,
    #[error("the Chebyshev radius is unbounded")]
    UnboundedRadius,
    #[error("{m} constraints exceed the enumeration cap of {cap} (or d = {d} exceeds 8)")]
    TooManyConstraints { m: usize, d: usize, cap: usize },
    #[error("only {found} vertices found, a full-dimensional polytope in R^{dim} needs at least {}", dim + 1)]
    DegeneratePolytope { found: usize, dim: usize },
    #[error("at least two vertices are required")]
    NotEnoughVertices,
    #[error("constraint {0} does not define a facet")]
    NotAFacet(usize),
    #[error("dimension {0} is not supported by this operation")]
    UnsupportedDimension(usize),
    #[error("simplex solver made no progress within {0} iterations")]
    NumericalStall(usize),
    #[error("Jacobi SVD did not converge within {0} sweeps")]
    NoConvergence(usize),
    #[error("singular value cross-check failed: jacobi {jacobi}, closed form {closed_form}")]
    SpectralMismatch { jacobi: f64, closed_form: f64 },
    #[error("no constraint has a nonzero component along the smallest right singular vector")]
    DegenerateDirection,
    #[error("the polytope is not full-dimensional")]
    NotFullDimensional,
    #[error("Gram matrix is singular (sigma_min = {0:e})")]
    SingularGram(f64),
    #[error("generation failed after {0} attempts")]
    GenerationFailed(usize),
}
