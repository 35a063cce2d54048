use hhs_coarse::{quasiconvexity_constant, set_distance, slim_constant, FiniteGraph, VertexSet};
use serde::{Deserialize, Serialize};

use crate::error::Result;

/// The union bound for quasiconvex sets in a hyperbolic graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionBound {
    pub qc_first: u32,
    pub qc_second: u32,
    /// The quasiconvexity constant fed to the bound.
    pub r: u32,
    /// Slim-triangle constant of the graph.
    pub delta: u32,
    pub distance: u32,
    /// `R + 2δ + d(Y, Y′) + 1`.
    pub bound: u32,
    pub measured: u32,
    pub holds: bool,
}

/// Measures the quasiconvexity of `Y ∪ Y′` against `R + 2δ + d(Y, Y′) + 1`,
/// with `R` the larger measured constant unless one is supplied.
pub fn union_qc_hyperbolic(g: &FiniteGraph, y: &VertexSet, y2: &VertexSet, r: Option<u32>) -> Result<UnionBound> {
    let qc_first = quasiconvexity_constant(g, y)?.constant;
    let qc_second = quasiconvexity_constant(g, y2)?.constant;
    let r = r.unwrap_or(qc_first.max(qc_second));
    let delta = slim_constant(g)?;
    let distance = set_distance(g, y, y2)?;
    let measured = quasiconvexity_constant(g, &y.union(y2))?.constant;
    let bound = r + 2 * delta + distance + 1;
    Ok(UnionBound { qc_first, qc_second, r, delta, distance, bound, measured, holds: measured <= bound })
}
