//! Largest inscribed ball via linear programming.
//!
//! With unit normals, `B(x, r)` lies in `P` exactly when `a_i.x + r <= b_i`
//! for every row, so the inradius is the optimum of
//!
//! ```text
//! maximize r  subject to  a_i.x + r <= b_i,  r >= 0,  x free.
//! ```

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::lp::{solve_lp, LpProblem, LpStatus, VarBound};
use crate::polytope::HPolytope;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChebyshevBall {
    pub center: Vec<f64>,
    pub radius: f64,
}

/// Chebyshev center and inradius of `p`.
pub fn chebyshev(p: &HPolytope) -> Result<ChebyshevBall> {
    let (m, d) = (p.num_constraints(), p.dim());
    let g = Matrix::from_fn(m, d + 1, |i, j| if j < d { p.normals()[(i, j)] } else { 1.0 });
    let mut c = vec![0.0; d + 1];
    c[d] = 1.0;
    let mut bounds = vec![VarBound::Free; d + 1];
    bounds[d] = VarBound::NonNegative;
    let sol = solve_lp(&LpProblem::new(c, g, p.offsets().to_vec()).with_bounds(bounds))?;
    match sol.status {
        LpStatus::Infeasible => Err(Error::InfeasibleSystem),
        LpStatus::Unbounded => Err(Error::UnboundedRadius),
        LpStatus::Optimal => {
            let mut center = sol.point;
            let radius = center.pop().unwrap_or(0.0).max(0.0);
            Ok(ChebyshevBall { center, radius })
        }
    }
}
