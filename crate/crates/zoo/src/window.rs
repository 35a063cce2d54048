//! Materialising a finite window of a closed-form hierarchy as a table model.

use std::collections::BTreeMap;
use std::hash::Hash;

use hhs_action::{GroupHierarchy, WindowIndex};
use hhs_coarse::sets::VertexSet;
use hhs_coarse::FiniteGraph;
use hhs_model::model::needs_rho_point;
use hhs_model::{DomainSet, HierarchicalModel, ProjectionTable, Relation};

use crate::error::{Result, ZooError};

/// `ρ^U_V(c)` for `V ⊊ U`, either a coordinate list or the whole of `𝒞V`.
pub enum RhoDown<C> {
    All,
    Coords(Vec<C>),
}

/// What a closed-form family supplies beyond the hierarchy and the action.
pub trait Tabulable: GroupHierarchy {
    fn point_label(&self, x: &Self::Point) -> String;
    fn domain_name(&self, u: &Self::Domain) -> String;
    fn coord_label(&self, u: &Self::Domain, c: &Self::Coord) -> String;
    /// Cayley-graph neighbours of a point in the whole space.
    fn neighbours(&self, x: &Self::Point) -> Vec<Self::Point>;
    /// Edges of `𝒞U` restricted to the given window coordinates.
    fn coord_edges(&self, u: &Self::Domain, coords: &[Self::Coord]) -> Vec<(usize, usize)>;
    fn rho_down(&self, u: &Self::Domain, v: &Self::Domain, c: &Self::Coord) -> RhoDown<Self::Coord>;
}

pub type Index<H> = WindowIndex<<H as hhs_model::Hierarchy>::Point, <H as hhs_model::Hierarchy>::Domain, <H as hhs_model::Hierarchy>::Coord>;

fn edges_within<P: Clone + Eq + Hash>(points: &[P], index: impl Fn(&P) -> Option<usize>, nb: impl Fn(&P) -> Vec<P>) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for q in nb(p) {
            if let Some(j) = index(&q) {
                if i < j {
                    edges.push((i, j));
                }
            }
        }
    }
    edges
}

/// Tabulates the window. Every projection of a window point and every
/// relative projection between window domains must land in the window.
pub fn tabulate_window<H>(
    h: &H,
    points: Vec<H::Point>,
    domains: Vec<H::Domain>,
    coords: Vec<Vec<H::Coord>>,
    e: u32,
) -> Result<(HierarchicalModel, Index<H>)>
where
    H: Tabulable,
    H::Point: Hash + Eq,
    H::Coord: Hash + Eq,
{
    let index = WindowIndex::new(points, domains, coords);
    let points = index.points();
    let domains = index.domains();
    let n = domains.len();

    let labels = points.iter().map(|x| h.point_label(x)).collect();
    let ambient = FiniteGraph::new(labels, &edges_within(points, |q| index.point_index(q), |p| h.neighbours(p)))?;

    let mut coord_graphs = Vec::with_capacity(n);
    for (u, d) in domains.iter().enumerate() {
        let cs = index.coords(u);
        let labels = cs.iter().map(|c| h.coord_label(d, c)).collect();
        coord_graphs.push(FiniteGraph::new(labels, &h.coord_edges(d, cs))?);
    }

    let names: Vec<String> = domains.iter().map(|d| h.domain_name(d)).collect();
    let mut nesting = Vec::new();
    let mut orth = Vec::new();
    for (u, du) in domains.iter().enumerate() {
        for (v, dv) in domains.iter().enumerate() {
            match h.relation(du, dv) {
                Relation::NestedIn => nesting.push((u, v)),
                Relation::Orthogonal if u < v => orth.push((u, v)),
                _ => {}
            }
        }
    }
    let dset = DomainSet::new(names, &nesting, &orth, &[])?;

    let to_set = |u: usize, cs: Vec<H::Coord>| -> Result<VertexSet> {
        let ids = cs
            .iter()
            .map(|c| {
                index.coord_index(u, c).ok_or_else(|| {
                    ZooError::Truncation(format!("coordinate {} of {} lies outside the window", h.coord_label(&domains[u], c), h.domain_name(&domains[u])))
                })
            })
            .collect::<Result<Vec<usize>>>()?;
        Ok(VertexSet::from_usizes(ids)?)
    };

    let mut pi = Vec::with_capacity(n);
    for (u, d) in domains.iter().enumerate() {
        let mut images = Vec::with_capacity(points.len());
        for x in points {
            let cs = h.project(d, x).ok_or_else(|| ZooError::Truncation(format!("no projection of {} to {}", h.point_label(x), h.domain_name(d))))?;
            images.push(to_set(u, cs)?);
        }
        pi.push(ProjectionTable::from_images(images));
    }

    let mut rho_point = BTreeMap::new();
    for (v, dv) in domains.iter().enumerate() {
        for (u, du) in domains.iter().enumerate() {
            if needs_rho_point(&dset, v, u) {
                let cs = h.rho(dv, du).ok_or_else(|| ZooError::Truncation(format!("ρ from {} to {} undefined", h.domain_name(dv), h.domain_name(du))))?;
                rho_point.insert((v, u), to_set(u, cs)?);
            }
        }
    }

    let mut rho_map = BTreeMap::new();
    for (u, du) in domains.iter().enumerate() {
        for v in dset.below(u) {
            let dv = &domains[v];
            let all = VertexSet::all(&coord_graphs[v]);
            let mut images = Vec::with_capacity(index.coords(u).len());
            for c in index.coords(u) {
                images.push(match h.rho_down(du, dv, c) {
                    RhoDown::All => all.clone(),
                    RhoDown::Coords(cs) => to_set(v, cs)?,
                });
            }
            rho_map.insert((u, v), ProjectionTable::from_images(images));
        }
    }

    let model = HierarchicalModel::new(ambient, dset, coord_graphs, pi, rho_point, rho_map, e)?;
    Ok((model, index))
}
