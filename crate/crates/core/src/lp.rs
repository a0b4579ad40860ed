//! Dense two-phase simplex for small linear programs.
//!
//! Problems are stated as `maximize c.x subject to G x <= h`, with each
//! variable either free or nonnegative. Free variables are split into a
//! positive and a negative part. Rows with a negative right-hand side are
//! flipped and receive an artificial variable, which phase one drives to zero.
//!
//! Pricing is Dantzig (largest reduced cost) until `3 (k + n)` degenerate
//! pivots have been taken, after which Bland's rule is used for the rest of
//! the solve. Both phases share one iteration budget of `50 (k + n)`.

use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix};
use serde::{Deserialize, Serialize};

/// Primal feasibility tolerance.
pub const PRIMAL_TOL: f64 = 1e-9;
/// Slack at or below which a row is reported tight.
pub const TIGHT_TOL: f64 = 1e-8;

const PIVOT_TOL: f64 = 1e-11;
const COST_TOL: f64 = 1e-11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VarBound {
    Free,
    NonNegative,
}

#[derive(Clone, Debug)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub constraints: Matrix,
    pub rhs: Vec<f64>,
    pub bounds: Vec<VarBound>,
}

impl LpProblem {
    /// All variables free.
    pub fn new(objective: Vec<f64>, constraints: Matrix, rhs: Vec<f64>) -> Self {
        let n = objective.len();
        Self { objective, constraints, rhs, bounds: vec![VarBound::Free; n] }
    }

    pub fn with_bounds(mut self, bounds: Vec<VarBound>) -> Self {
        self.bounds = bounds;
        self
    }

    fn validate(&self) -> Result<()> {
        let (k, n) = (self.constraints.nrows(), self.constraints.ncols());
        if k == 0 || n == 0 {
            return Err(Error::InvalidInput("LP needs at least one row and one column".into()));
        }
        if self.objective.len() != n || self.rhs.len() != k || self.bounds.len() != n {
            return Err(Error::InvalidInput("LP dimension mismatch".into()));
        }
        if !self.constraints.is_finite() || !self.objective.iter().chain(&self.rhs).all(|v| v.is_finite()) {
            return Err(Error::InvalidInput("LP has non-finite entries".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Unbounded,
    Infeasible,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    /// `c.x` at `point`; meaningful only when `Optimal`.
    pub optimum: f64,
    pub point: Vec<f64>,
    pub tight_rows: Vec<usize>,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

struct Tableau {
    // k rows of `ncols + 1` entries, the last entry is the right-hand side.
    t: Vec<Vec<f64>>,
    basis: Vec<usize>,
    ncols: usize,
    artificial_start: usize,
    iterations: usize,
    degenerate: usize,
    bland: bool,
    bland_after: usize,
    cap: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.t[i][self.ncols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.t[row][col];
        for v in self.t[row].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.t[row].clone();
        for (i, r) in self.t.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            let f = r[col];
            if f == 0.0 {
                continue;
            }
            for (v, pv) in r.iter_mut().zip(&pivot_row) {
                *v -= f * pv;
            }
            r[col] = 0.0;
        }
        self.basis[row] = col;
    }

    fn reduced_costs(&self, cost: &[f64], allowed: usize) -> Vec<f64> {
        (0..allowed)
            .map(|j| {
                let zj: f64 = self.basis.iter().enumerate().map(|(i, &b)| cost[b] * self.t[i][j]).sum();
                cost[j] - zj
            })
            .collect()
    }

    /// Maximizes `cost` over the current basis, only letting columns
    /// `< allowed` enter.
    fn optimize(&mut self, cost: &[f64], allowed: usize) -> Result<Outcome> {
        loop {
            if self.iterations >= self.cap {
                return Err(Error::NumericalStall(self.cap));
            }
            let rc = self.reduced_costs(cost, allowed);
            let entering = if self.bland {
                (0..allowed).find(|&j| rc[j] > COST_TOL)
            } else {
                (0..allowed).filter(|&j| rc[j] > COST_TOL).max_by(|&a, &b| rc[a].total_cmp(&rc[b]).then(b.cmp(&a)))
            };
            let Some(col) = entering else {
                return Ok(Outcome::Optimal);
            };

            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.t.len() {
                let a = self.t[i][col];
                if a <= PIVOT_TOL {
                    continue;
                }
                let ratio = self.rhs(i).max(0.0) / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        let better = if ratio < br - 1e-12 {
                            true
                        } else if ratio <= br + 1e-12 {
                            if self.bland {
                                self.basis[i] < self.basis[bi]
                            } else {
                                a > self.t[bi][col]
                            }
                        } else {
                            false
                        };
                        if better {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            let Some((row, ratio)) = leave else {
                return Ok(Outcome::Unbounded);
            };
            if ratio <= 1e-12 {
                self.degenerate += 1;
                if self.degenerate >= self.bland_after {
                    self.bland = true;
                }
            }
            self.pivot(row, col);
            self.iterations += 1;
        }
    }
}

/// Solves `problem` with the two-phase dense simplex method.
pub fn solve_lp(problem: &LpProblem) -> Result<LpSolution> {
    problem.validate()?;
    let g = &problem.constraints;
    let (k, n) = (g.nrows(), g.ncols());

    // Structural column layout: for each variable its positive part and, if
    // free, a negative part.
    let mut columns: Vec<(usize, f64)> = Vec::new();
    for (j, b) in problem.bounds.iter().enumerate() {
        columns.push((j, 1.0));
        if *b == VarBound::Free {
            columns.push((j, -1.0));
        }
    }
    let nstruct = columns.len();
    let slack_start = nstruct;
    let artificial_start = slack_start + k;
    let flipped: Vec<bool> = problem.rhs.iter().map(|&h| h < 0.0).collect();
    let nart = flipped.iter().filter(|&&f| f).count();
    let ncols = artificial_start + nart;

    let mut t = vec![vec![0.0; ncols + 1]; k];
    let mut basis = vec![0; k];
    let mut next_art = artificial_start;
    for i in 0..k {
        let sign = if flipped[i] { -1.0 } else { 1.0 };
        for (c, &(j, s)) in columns.iter().enumerate() {
            t[i][c] = sign * s * g[(i, j)];
        }
        t[i][slack_start + i] = sign;
        t[i][ncols] = sign * problem.rhs[i];
        if flipped[i] {
            t[i][next_art] = 1.0;
            basis[i] = next_art;
            next_art += 1;
        } else {
            basis[i] = slack_start + i;
        }
    }

    let mut tab = Tableau {
        t,
        basis,
        ncols,
        artificial_start,
        iterations: 0,
        degenerate: 0,
        bland: false,
        bland_after: 3 * (k + n),
        cap: 50 * (k + n),
    };

    if nart > 0 {
        let mut phase1 = vec![0.0; ncols];
        for c in phase1.iter_mut().skip(artificial_start) {
            *c = -1.0;
        }
        tab.optimize(&phase1, ncols)?;
        let infeasibility: f64 =
            tab.basis.iter().enumerate().filter(|(_, &b)| b >= artificial_start).map(|(i, _)| tab.rhs(i)).sum();
        let scale = problem.rhs.iter().fold(1.0_f64, |a, h| a.max(h.abs()));
        if infeasibility > PRIMAL_TOL * scale {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                optimum: f64::NAN,
                point: vec![f64::NAN; n],
                tight_rows: Vec::new(),
            });
        }
        // Drive remaining zero-level artificials out of the basis where a
        // structural or slack column can replace them.
        for i in 0..k {
            if tab.basis[i] < tab.artificial_start {
                continue;
            }
            if let Some(col) = (0..tab.artificial_start)
                .filter(|&j| tab.t[i][j].abs() > 1e-9)
                .max_by(|&a, &b| tab.t[i][a].abs().total_cmp(&tab.t[i][b].abs()))
            {
                tab.pivot(i, col);
            }
        }
    }

    let mut phase2 = vec![0.0; ncols];
    for (c, &(j, s)) in columns.iter().enumerate() {
        phase2[c] = s * problem.objective[j];
    }
    let outcome = tab.optimize(&phase2, artificial_start)?;

    let mut values = vec![0.0; ncols];
    for (i, &b) in tab.basis.iter().enumerate() {
        values[b] = tab.rhs(i);
    }
    let mut point = vec![0.0; n];
    for (c, &(j, s)) in columns.iter().enumerate() {
        point[j] += s * values[c];
    }

    match outcome {
        Outcome::Unbounded => {
            Ok(LpSolution { status: LpStatus::Unbounded, optimum: f64::INFINITY, point, tight_rows: Vec::new() })
        }
        Outcome::Optimal => {
            let activity = g.mul_vec(&point);
            let tight_rows = (0..k).filter(|&i| problem.rhs[i] - activity[i] <= TIGHT_TOL).collect();
            Ok(LpSolution { status: LpStatus::Optimal, optimum: dot(&problem.objective, &point), point, tight_rows })
        }
    }
}
