//! Coordinate balls inside a finite window, and the growth test that tells a
//! gauge growing with the window apart from one capped by truncation.
//!
//! Every verdict in this crate compares one measurement on two windows: the
//! full window, and the sub-window of points whose coordinates all lie within
//! half the window radius of a centre. A gauge that stays bounded in the
//! infinite space changes little between the two; one that is unbounded grows
//! roughly in proportion to the radius.

use hhs_coarse::FiniteGraph;
use hhs_model::HierarchicalModel;
use serde::{Deserialize, Serialize};

use crate::error::{ConvexityError, Result};

#[derive(Clone, Debug)]
pub struct Frame {
    center: usize,
    level: Vec<u32>,
    radius: u32,
}

/// The window data every report carries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowInfo {
    pub center: String,
    /// Largest coordinate distance from the centre.
    pub radius: u32,
    /// Radius of the comparison sub-window.
    pub half: u32,
}

impl Frame {
    /// `level(x) = max_U d_U(x, centre)`.
    pub fn new(m: &HierarchicalModel, center: usize) -> Result<Self> {
        if center >= m.ambient().len() {
            return Err(ConvexityError::Vertex(center));
        }
        let mut level = vec![0u32; m.ambient().len()];
        for u in 0..m.domain_count() {
            let to_center = m.class_distances_to(u, m.project_point(u, center));
            for (x, l) in level.iter_mut().enumerate() {
                *l = (*l).max(to_center[m.class(u, x)]);
            }
        }
        let radius = level.iter().copied().max().unwrap_or(0);
        Ok(Frame { center, level, radius })
    }

    /// Centred at [`central_vertex`] of the ambient graph.
    pub fn centered(m: &HierarchicalModel) -> Self {
        Frame::new(m, central_vertex(m.ambient())).expect("central vertex lies in the graph")
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn half(&self) -> u32 {
        self.radius / 2
    }

    /// The two comparison radii, half first.
    pub fn scales(&self) -> [u32; 2] {
        [self.half(), self.radius]
    }

    pub fn level(&self, x: usize) -> u32 {
        self.level[x]
    }

    pub fn levels(&self) -> &[u32] {
        &self.level
    }

    /// Membership mask of the sub-window of radius `r`.
    pub fn within(&self, r: u32) -> Vec<bool> {
        self.level.iter().map(|&l| l <= r).collect()
    }

    /// The members lying in the sub-window of radius `r`.
    pub fn restrict(&self, members: &[usize], r: u32) -> Vec<usize> {
        members.iter().copied().filter(|&x| self.level[x] <= r).collect()
    }

    pub fn info(&self, m: &HierarchicalModel) -> WindowInfo {
        WindowInfo { center: m.ambient().label(self.center).to_string(), radius: self.radius, half: self.half() }
    }

    /// Whether a gauge with values `half` and `full` on the two windows grows
    /// at slope at least 1/2 between them.
    pub fn grows(&self, half: u32, full: u32) -> bool {
        let span = self.radius - self.half();
        self.radius >= 2 && full.saturating_sub(half) >= span.div_ceil(2).max(1)
    }
}

/// A vertex of least eccentricity (least index on ties) when the metric is
/// tabulated; otherwise the midpoint of a double-sweep diametral geodesic.
pub fn central_vertex(g: &FiniteGraph) -> usize {
    if g.has_fast_metric() {
        return (0..g.len())
            .map(|v| (g.distances_from(v).into_iter().max().unwrap_or(0), v))
            .min()
            .map(|(_, v)| v)
            .unwrap_or(0);
    }
    let far = |d: Vec<u32>| d.iter().enumerate().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0))).map(|(v, _)| v).unwrap_or(0);
    let u = far(g.bfs(0));
    let v = far(g.bfs(u));
    let path = g.geodesic(u, v);
    path[path.len() / 2]
}
