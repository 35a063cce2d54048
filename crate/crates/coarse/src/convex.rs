//! Quasiconvexity constants of vertex sets.
//!
//! A vertex `w` lies on some geodesic from `u` to `v` exactly when
//! `d(u, w) + d(w, v) = d(u, v)`, so the least `R` for which every geodesic
//! between members of a set stays `R`-close to it is a maximum over metric
//! intervals.  No geodesic is enumerated explicitly.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::FiniteGraph;
use crate::sets::VertexSet;

/// Default number of member pairs examined before sampling kicks in.
pub const DEFAULT_PAIR_BUDGET: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QcOutcome {
    /// Least valid constant over the pairs examined.
    pub constant: u32,
    /// False when the pair budget forced a deterministic sample; the constant
    /// is then a lower bound for the true value.
    pub exhaustive: bool,
    pub pairs_checked: usize,
    /// Endpoints and the far vertex realising `constant`, when positive.
    pub witness: Option<(u32, u32, u32)>,
}

/// Quasiconvexity constant of `s` in `g` with the default pair budget.
pub fn quasiconvexity_constant(g: &FiniteGraph, s: &VertexSet) -> Result<QcOutcome> {
    quasiconvexity_constant_budget(g, s, DEFAULT_PAIR_BUDGET)
}

/// Quasiconvexity constant with an explicit budget on member pairs.
///
/// Over budget, pairs are taken with a fixed stride through the list of
/// member pairs, so repeated calls examine the same sample.
pub fn quasiconvexity_constant_budget(g: &FiniteGraph, s: &VertexSet, budget: usize) -> Result<QcOutcome> {
    s.validate(g)?;
    let members = s.to_usizes();
    let m = members.len();
    if m == g.len() {
        let total = m * (m.saturating_sub(1)) / 2;
        return Ok(QcOutcome { constant: 0, exhaustive: true, pairs_checked: total, witness: None });
    }
    let to_s = g.distances_to_set(&members);
    let total = m * (m - 1) / 2;
    let stride = if total <= budget.max(1) { 1 } else { total.div_ceil(budget.max(1)) };
    let mut best = 0u32;
    let mut witness = None;
    let mut checked = 0usize;
    let mut index = 0usize;
    let mut row_cache: Option<(usize, Vec<u32>)> = None;
    for i in 0..m {
        for j in i + 1..m {
            let take = index % stride == 0;
            index += 1;
            if !take {
                continue;
            }
            checked += 1;
            let (u, v) = (members[i], members[j]);
            if row_cache.as_ref().map(|(k, _)| *k) != Some(u) {
                row_cache = Some((u, g.distances_from(u)));
            }
            let du = &row_cache.as_ref().expect("row cached").1;
            let dv = g.distances_from(v);
            let d = du[v];
            for w in 0..g.len() {
                if du[w] + dv[w] == d && to_s[w] > best {
                    best = to_s[w];
                    witness = Some((u as u32, v as u32, w as u32));
                }
            }
        }
    }
    Ok(QcOutcome { constant: best, exhaustive: stride == 1, pairs_checked: checked, witness })
}

/// Whether `s` is `r`-quasiconvex, computed exhaustively.
pub fn is_quasiconvex(g: &FiniteGraph, s: &VertexSet, r: u32) -> Result<bool> {
    Ok(quasiconvexity_constant_budget(g, s, usize::MAX)?.constant <= r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whole_graph_is_zero() {
        let g = FiniteGraph::cycle(7).unwrap();
        let q = quasiconvexity_constant(&g, &VertexSet::all(&g)).unwrap();
        assert_eq!(q.constant, 0);
        assert!(q.exhaustive);
    }

    #[test]
    fn antipodes_of_a_cycle() {
        let g = FiniteGraph::cycle(8).unwrap();
        let s = VertexSet::new(vec![0, 4]).unwrap();
        let q = quasiconvexity_constant(&g, &s).unwrap();
        assert_eq!(q.constant, 2);
    }

    #[test]
    fn sampling_is_flagged() {
        let g = FiniteGraph::path(30).unwrap();
        let s = VertexSet::new((0..30).step_by(3).collect()).unwrap();
        let q = quasiconvexity_constant_budget(&g, &s, 5).unwrap();
        assert!(!q.exhaustive);
        assert!(q.pairs_checked <= 6);
    }
}
