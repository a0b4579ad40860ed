//! Inscribed-ball regularity audit over a collection of mesh cells.
//!
//! A cell `K` is regular under constant `sigma_bar` and cap `h` when
//! `diam K / inrad K <= sigma_bar` and `diam K <= h`.

use crate::error::{Error, Result};
use crate::polytope::{simplex_from_vertices, HPolytope};
use crate::roundness::{analyze_polytope, RoundnessReport};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditConfig {
    pub sigma_bar: f64,
    pub diameter_cap: f64,
}

impl AuditConfig {
    /// `sigma_bar` below 2 is rejected: no set has `diam / inrad < 2`.
    pub fn new(sigma_bar: f64, diameter_cap: f64) -> Result<Self> {
        if !(sigma_bar >= 2.0 && sigma_bar.is_finite()) {
            return Err(Error::InvalidInput(format!("sigma_bar must be a finite value >= 2, got {sigma_bar}")));
        }
        if !(diameter_cap > 0.0) {
            return Err(Error::InvalidInput(format!("diameter_cap must be positive, got {diameter_cap}")));
        }
        Ok(Self { sigma_bar, diameter_cap })
    }
}

impl Default for AuditConfig {
    fn default() -> Self {
        Self { sigma_bar: 4.0, diameter_cap: 1.0 }
    }
}

/// A mesh cell as read from input.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Simplex { simplex_vertices: Vec<Vec<f64>> },
    HRep { normals: Vec<Vec<f64>>, offsets: Vec<f64> },
}

impl Cell {
    pub fn to_polytope(&self) -> Result<HPolytope> {
        match self {
            Cell::Simplex { simplex_vertices } => simplex_from_vertices(simplex_vertices),
            Cell::HRep { normals, offsets } => HPolytope::from_rows(normals, offsets),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellRecord {
    pub cell_id: usize,
    pub delta: f64,
    pub inverse_delta: f64,
    pub diameter: f64,
    pub sigma_min: f64,
    pub bound_margin: f64,
    pub regular: bool,
    /// Set when the cell could not be analyzed or failed the singular
    /// value self-check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditSummary {
    pub num_cells: usize,
    pub min_delta: f64,
    pub max_inverse_delta: f64,
    pub num_irregular: usize,
    pub num_errors: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeshAuditReport {
    pub config: AuditConfig,
    pub cells: Vec<CellRecord>,
    pub summary: AuditSummary,
}

impl MeshAuditReport {
    pub fn irregular_ids(&self) -> Vec<usize> {
        self.cells.iter().filter(|c| !c.regular).map(|c| c.cell_id).collect()
    }
}

fn record(cell_id: usize, report: &RoundnessReport, config: &AuditConfig) -> CellRecord {
    let inverse_delta = report.inverse_delta();
    let mut error = None;
    if !report.full_dimensional {
        error = Some("cell is not full-dimensional".to_string());
    } else if !(report.delta < report.sigma_min) {
        error = Some(format!("bound violated: delta {} >= sigma_min {}", report.delta, report.sigma_min));
    }
    CellRecord {
        cell_id,
        delta: report.delta,
        inverse_delta,
        diameter: report.diameter,
        sigma_min: report.sigma_min,
        bound_margin: report.bound_margin,
        regular: error.is_none() && inverse_delta <= config.sigma_bar && report.diameter <= config.diameter_cap,
        error,
    }
}

fn failed(cell_id: usize, err: Error) -> CellRecord {
    CellRecord {
        cell_id,
        delta: 0.0,
        inverse_delta: f64::INFINITY,
        diameter: f64::NAN,
        sigma_min: f64::NAN,
        bound_margin: f64::NAN,
        regular: false,
        error: Some(err.to_string()),
    }
}

pub fn audit_cell(cell_id: usize, p: &HPolytope, config: &AuditConfig) -> CellRecord {
    match analyze_polytope(p, false) {
        Ok(report) => record(cell_id, &report, config),
        Err(e) => failed(cell_id, e),
    }
}

/// Audits every cell; cells are analyzed in parallel and reported in input
/// order. Per-cell failures are recorded, never propagated.
pub fn audit_mesh(cells: &[Cell], config: &AuditConfig) -> MeshAuditReport {
    let records: Vec<CellRecord> = cells
        .par_iter()
        .enumerate()
        .map(|(id, cell)| match cell.to_polytope() {
            Ok(p) => audit_cell(id, &p, config),
            Err(e) => failed(id, e),
        })
        .collect();
    summarize(*config, records)
}

/// Same as [`audit_mesh`] for cells already in H-representation.
pub fn audit_polytopes(cells: &[HPolytope], config: &AuditConfig) -> MeshAuditReport {
    let records = cells.par_iter().enumerate().map(|(id, p)| audit_cell(id, p, config)).collect();
    summarize(*config, records)
}

fn summarize(config: AuditConfig, cells: Vec<CellRecord>) -> MeshAuditReport {
    let analyzed = cells.iter().filter(|c| c.error.is_none());
    let min_delta = analyzed.clone().map(|c| c.delta).fold(f64::INFINITY, f64::min);
    let max_inverse_delta = analyzed.map(|c| c.inverse_delta).fold(0.0, f64::max);
    let summary = AuditSummary {
        num_cells: cells.len(),
        min_delta: if min_delta.is_finite() { min_delta } else { 0.0 },
        max_inverse_delta,
        num_irregular: cells.iter().filter(|c| !c.regular).count(),
        num_errors: cells.iter().filter(|c| c.error.is_some()).count(),
    };
    MeshAuditReport { config, cells, summary }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn equilateral(offset: f64) -> Cell {
        let h = 3f64.sqrt() / 2.0;
        Cell::Simplex { simplex_vertices: vec![vec![offset, 0.0], vec![offset + 1.0, 0.0], vec![offset + 0.5, h]] }
    }

    #[test]
    fn config_validation() {
        assert!(AuditConfig::new(1.9, 1.0).is_err());
        assert!(AuditConfig::new(4.0, 0.0).is_err());
        assert!(AuditConfig::new(2.0, 1.0).is_ok());
    }

    #[test]
    fn two_equilateral_triangles_regular() {
        let cfg = AuditConfig::new(4.0, 2.0).unwrap();
        let report = audit_mesh(&[equilateral(0.0), equilateral(1.0)], &cfg);
        for c in &report.cells {
            assert!(c.regular);
            assert!((c.inverse_delta - 12f64.sqrt()).abs() < 1e-9);
        }
        assert_eq!(report.summary.num_irregular, 0);
    }

    #[test]
    fn empty_mesh() {
        let report = audit_mesh(&[], &AuditConfig::default());
        assert!(report.cells.is_empty());
        assert_eq!(report.summary.num_irregular, 0);
    }

    #[test]
    fn bad_cell_recorded_not_fatal() {
        let flat = Cell::Simplex { simplex_vertices: vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0]] };
        let report = audit_mesh(&[flat, equilateral(0.0)], &AuditConfig::new(4.0, 2.0).unwrap());
        assert!(report.cells[0].error.is_some() && !report.cells[0].regular);
        assert!(report.cells[1].regular);
        assert_eq!(report.summary.num_errors, 1);
    }

    #[test]
    fn diameter_cap_applies() {
        let report = audit_mesh(&[equilateral(0.0)], &AuditConfig::new(4.0, 0.5).unwrap());
        assert!(!report.cells[0].regular);
    }
}
