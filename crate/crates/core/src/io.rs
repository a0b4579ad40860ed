//! File formats: polytope, flux and mesh inputs; report outputs.
//!
//! All floating-point output is written with 17 significant digits in
//! scientific notation (`{:.16e}`), which round-trips every `f64` exactly and
//! does not depend on locale.

use crate::audit::{Cell, MeshAuditReport};
use crate::error::{Error, Result};
use crate::flux::{FieldSpec, FluxData, ReconstructionResult};
use crate::linalg::Matrix;
use crate::polytope::{simplex_from_vertices, HPolytope};
use crate::roundness::{BoundWitness, Certificate, RoundnessReport};
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};
use std::io;

/// Polytope input: either an H-representation (normalized on load) or the
/// `d + 1` vertices of a simplex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolytopeInput {
    HRep { dim: usize, normals: Vec<Vec<f64>>, offsets: Vec<f64> },
    Simplex { dim: usize, simplex_vertices: Vec<Vec<f64>> },
}

impl PolytopeInput {
    pub fn to_polytope(&self) -> Result<HPolytope> {
        match self {
            PolytopeInput::HRep { dim, normals, offsets } => {
                if normals.iter().any(|r| r.len() != *dim) {
                    return Err(Error::InvalidInput(format!("normal rows must have length dim = {dim}")));
                }
                HPolytope::from_rows(normals, offsets)
            }
            PolytopeInput::Simplex { dim, simplex_vertices } => {
                if simplex_vertices.len() != dim + 1 || simplex_vertices.iter().any(|v| v.len() != *dim) {
                    return Err(Error::InvalidInput(format!("a simplex in R^{dim} needs {} vertices", dim + 1)));
                }
                simplex_from_vertices(simplex_vertices)
            }
        }
    }
}

impl From<&HPolytope> for PolytopeInput {
    fn from(p: &HPolytope) -> Self {
        PolytopeInput::HRep { dim: p.dim(), normals: p.normals().to_rows(), offsets: p.offsets().to_vec() }
    }
}

pub fn parse_polytope(json: &str) -> Result<HPolytope> {
    let input: PolytopeInput = serde_json::from_str(json).map_err(|e| Error::InvalidInput(e.to_string()))?;
    input.to_polytope()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldInput {
    Constant {
        #[serde(rename = "J0", alias = "j0")]
        j0: Vec<f64>,
    },
    Affine {
        #[serde(rename = "J0", alias = "j0")]
        j0: Vec<f64>,
        #[serde(rename = "M", alias = "m")]
        m: Vec<Vec<f64>>,
    },
}

impl FieldInput {
    pub fn to_field(&self) -> Result<FieldSpec<'static>> {
        Ok(match self {
            FieldInput::Constant { j0 } => FieldSpec::Constant(j0.clone()),
            FieldInput::Affine { j0, m } => FieldSpec::Affine {
                j0: j0.clone(),
                m: Matrix::from_rows(m).ok_or_else(|| Error::InvalidInput("ragged field matrix".into()))?,
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FluxInput {
    pub polytope: PolytopeInput,
    pub field: FieldInput,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FluxOutput {
    pub phi: Vec<f64>,
    pub facet_measures: Vec<f64>,
    pub phi_hat: Vec<f64>,
    #[serde(rename = "J")]
    pub j: Vec<f64>,
    pub residual: f64,
    pub gram_condition: f64,
    pub certificate: Certificate,
}

impl FluxOutput {
    pub fn new(data: &FluxData, result: &ReconstructionResult, certificate: Certificate) -> Self {
        Self {
            certificate,
            phi: data.phi.clone(),
            facet_measures: data.facet_measures.clone(),
            phi_hat: data.phi_hat.clone(),
            j: result.j_recovered.clone(),
            residual: result.residual_norm,
            gram_condition: result.gram_condition,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeshInput {
    pub dim: usize,
    pub cells: Vec<Cell>,
}

impl MeshInput {
    pub fn validate(&self) -> Result<()> {
        for (k, cell) in self.cells.iter().enumerate() {
            let ok = match cell {
                Cell::Simplex { simplex_vertices } => {
                    simplex_vertices.len() == self.dim + 1 && simplex_vertices.iter().all(|v| v.len() == self.dim)
                }
                Cell::HRep { normals, .. } => normals.iter().all(|r| r.len() == self.dim),
            };
            if !ok {
                return Err(Error::InvalidInput(format!("cell {k} does not match dim = {}", self.dim)));
            }
        }
        Ok(())
    }
}

/// Output of the `analyze` command: the report plus the bound witness when
/// the polytope is full-dimensional.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisOutput {
    #[serde(flatten)]
    pub report: RoundnessReport,
    pub witness: Option<BoundWitness>,
}

/// Pretty JSON with every float printed at 17 significant digits.
pub struct FixedPrecision(PrettyFormatter<'static>);

impl Default for FixedPrecision {
    fn default() -> Self {
        Self(PrettyFormatter::new())
    }
}

fn write_float<W: ?Sized + io::Write>(w: &mut W, v: f64) -> io::Result<()> {
    write!(w, "{v:.16e}")
}

impl Formatter for FixedPrecision {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        write_float(w, v)
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        write_float(w, f64::from(v))
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Serializes `value` as pretty JSON with 17-significant-digit floats.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedPrecision::default());
    value.serialize(&mut ser).expect("serialization into memory cannot fail");
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

/// One row per cell: `id,delta,inverse_delta,sigma_min,margin,regular`.
pub fn audit_csv(report: &MeshAuditReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fmt = |v: f64| format!("{v:.16e}");
    w.write_record(["id", "delta", "inverse_delta", "sigma_min", "margin", "regular"]).expect("in-memory write");
    for c in &report.cells {
        w.write_record([
            c.cell_id.to_string(),
            fmt(c.delta),
            fmt(c.inverse_delta),
            fmt(c.sigma_min),
            fmt(c.bound_margin),
            c.regular.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv writes UTF-8")
}
