//! Fixed numerical tolerances.
//!
//! Rows are unit-normalized everywhere, so absolute tolerances stay meaningful
//! for desk-scale inputs.

/// Componentwise slack allowed when testing `Ax <= b`.
pub const FEASIBILITY: f64 = 1e-9;
/// A constraint is tight at `x` when `b_i - a_i.x <= TIGHTNESS`.
pub const TIGHTNESS: f64 = 1e-8;
/// `b_i` must exceed this for the origin to count as interior.
pub const INTERIORITY: f64 = 1e-10;
/// Minimum row norm accepted by normalization.
pub const MIN_ROW_NORM: f64 = 1e-12;
/// Inradius at or below this marks a polytope as flat.
pub const FLAT: f64 = 1e-9;
/// Projections `|a_i.v|` below this are treated as parallel to the facet.
pub const DIRECTION: f64 = 1e-12;
/// Redundancy slack for the LP test in `remove_redundant`.
pub const REDUNDANCY: f64 = 1e-9;

/// Distance under which two enumerated vertices are merged.
pub fn vertex_dedupe(offsets: &[f64]) -> f64 {
    let scale = offsets.iter().fold(0.0_f64, |acc, b| acc.max(b.abs()));
    1e-7 * (1.0 + scale)
}
