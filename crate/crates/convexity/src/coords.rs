//! Projections of vertex sets and the set-to-set quantities built on them.

use hhs_coarse::{FiniteGraph, VertexSet};
use hhs_model::HierarchicalModel;

/// `π_U(members)`, or `None` for an empty set.
pub(crate) fn image(m: &HierarchicalModel, u: usize, members: &[usize]) -> Option<VertexSet> {
    m.pi(u).image_of_set(members.iter().copied())
}

/// `max_{t ∈ target} d(t, dense)`: the least `R` with `target ⊆ N_R(dense)`.
pub(crate) fn density(g: &FiniteGraph, dense: &VertexSet, target: &VertexSet) -> u32 {
    let to_dense = g.distances_to_set(&dense.to_usizes());
    target.iter().map(|t| to_dense[t]).max().unwrap_or(0)
}

/// For each ambient point, `max_U d_U(x, π_U(members))` and the first domain
/// attaining it.
pub(crate) fn coordinate_defects(m: &HierarchicalModel, members: &[usize]) -> Vec<(u32, u32)> {
    let mut out = vec![(0u32, 0u32); m.ambient().len()];
    for u in 0..m.domain_count() {
        let Some(target) = image(m, u, members) else { continue };
        let to_target = m.class_distances_to(u, &target);
        for (x, slot) in out.iter_mut().enumerate() {
            let d = to_target[m.class(u, x)];
            if d > slot.0 {
                *slot = (d, u as u32);
            }
        }
    }
    out
}

/// Ordered pairs `(U, V)` of orthogonal domains.
pub(crate) fn orthogonal_pairs(m: &HierarchicalModel) -> Vec<(usize, usize)> {
    let d = m.domains();
    let mut out = Vec::new();
    for u in 0..d.len() {
        for v in d.orthogonal_to(u) {
            out.push((u, v));
        }
    }
    out.sort_unstable();
    out
}

pub(crate) fn label(m: &HierarchicalModel, x: usize) -> String {
    m.ambient().label(x).to_string()
}
