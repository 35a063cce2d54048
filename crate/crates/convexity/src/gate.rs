//! Gates: the member of a set whose coordinates best match the closest-point
//! projections of a given point, domain by domain.

use std::collections::BTreeMap;

use hhs_coarse::sets::hausdorff_distance;
use hhs_coarse::VertexSet;
use hhs_model::HierarchicalModel;
use serde::{Deserialize, Serialize};

use crate::coords::label;
use crate::error::Result;
use crate::subset::SubsetSpec;

/// Per-domain data of one target set, reused across gate computations.
pub struct GateContext<'m> {
    m: &'m HierarchicalModel,
    members: Vec<usize>,
    /// Domains where the members meet more than one class: the image of the
    /// set, and for each class met the members in it.
    active: Vec<(usize, VertexSet, BTreeMap<usize, Vec<usize>>)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gate {
    pub point: usize,
    /// `max_U d_U(π_U(point), p_U(x))` with `p_U(x)` the closest points of
    /// `π_U(Y)` to `π_U(x)`.
    pub defect: u32,
}

impl<'m> GateContext<'m> {
    pub fn new(m: &'m HierarchicalModel, members: &[usize]) -> Self {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        let mut active = Vec::new();
        for u in 0..m.domain_count() {
            let mut by_class: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (i, &y) in members.iter().enumerate() {
                by_class.entry(m.class(u, y)).or_default().push(i);
            }
            if by_class.len() > 1 {
                let img = m.pi(u).image_of_set(members.iter().copied()).expect("members nonempty");
                active.push((u, img, by_class));
            }
        }
        GateContext { m, members, active }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// The minimiser of the coordinate defect.  `x` itself wins when it is a
    /// member; otherwise ties go to the least vertex id.
    pub fn gate(&self, x: usize) -> Gate {
        let mut defect = vec![0u32; self.members.len()];
        for (u, img, by_class) in &self.active {
            let g = self.m.coord(*u);
            let from_x = g.distances_to_set(&self.m.project_point(*u, x).to_usizes());
            let nearest = img.iter().map(|c| from_x[c]).min().unwrap_or(0);
            let closest: Vec<usize> = img.iter().filter(|&c| from_x[c] == nearest).collect();
            let to_closest = g.distances_to_set(&closest);
            let classes = self.m.pi(*u).classes();
            for (&c, idx) in by_class {
                let d = classes[c].iter().map(|v| to_closest[v]).min().unwrap_or(0);
                for &i in idx {
                    defect[i] = defect[i].max(d);
                }
            }
        }
        let best = defect.iter().copied().min().unwrap_or(0);
        if let Ok(i) = self.members.binary_search(&x) {
            if defect[i] == best {
                return Gate { point: x, defect: best };
            }
        }
        let i = defect.iter().position(|&d| d == best).expect("members nonempty");
        Gate { point: self.members[i], defect: best }
    }

    /// `𝔤_Y(S)`, sorted and deduplicated.
    pub fn image(&self, xs: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = xs.iter().map(|&x| self.gate(x).point).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// The gate of a single point.
pub fn gate(m: &HierarchicalModel, s: &SubsetSpec, x: usize) -> Result<Gate> {
    m.ambient().check_vertex(x)?;
    Ok(GateContext::new(m, &s.members.to_usizes()).gate(x))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateIntersection {
    /// `𝔤_B(A)`.
    pub gate_image: Vec<String>,
    pub intersection: Vec<String>,
    /// Hausdorff distance between the two; absent when `A ∩ B` is empty.
    pub hausdorff: Option<u32>,
}

/// Compares the gate of `A` onto `B` with `A ∩ B`.
pub fn gate_vs_intersection(m: &HierarchicalModel, a: &SubsetSpec, b: &SubsetSpec) -> Result<GateIntersection> {
    let ctx = GateContext::new(m, &b.members.to_usizes());
    let image = ctx.image(&a.members.to_usizes());
    let inter: Vec<usize> = a.members.iter().filter(|&x| b.contains(x)).collect();
    let hausdorff = if inter.is_empty() {
        None
    } else {
        let g = m.ambient();
        Some(hausdorff_distance(g, &VertexSet::from_usizes(image.iter().copied())?, &VertexSet::from_usizes(inter.iter().copied())?)?)
    };
    Ok(GateIntersection {
        gate_image: image.iter().map(|&x| label(m, x)).collect(),
        intersection: inter.iter().map(|&x| label(m, x)).collect(),
        hausdorff,
    })
}
