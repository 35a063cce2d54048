//! A read-only view of a hierarchical space, shared by explicit table models
//! and closed-form models too large to tabulate.

use std::fmt::Debug;
use std::hash::Hash;

use crate::relations::Relation;

pub trait Hierarchy {
    type Point: Clone + Debug;
    type Domain: Clone + Eq + Hash + Debug;
    type Coord: Clone + Debug;

    /// The declared hierarchical constant E.
    fn constant(&self) -> u32;

    fn relation(&self, u: &Self::Domain, v: &Self::Domain) -> Relation;

    /// `π_U(x)`, or `None` when `x` or `U` lies outside the represented window.
    fn project(&self, u: &Self::Domain, x: &Self::Point) -> Option<Vec<Self::Coord>>;

    /// `ρ^from_to`, defined when `from ⊊ to` or `from ⋔ to`.
    fn rho(&self, from: &Self::Domain, to: &Self::Domain) -> Option<Vec<Self::Coord>>;

    /// Distance in `𝒞U`, or `None` outside the window.
    fn coord_distance(&self, u: &Self::Domain, a: &Self::Coord, b: &Self::Coord) -> Option<u32>;

    /// Set distance in `𝒞U`.
    fn coord_set_distance(&self, u: &Self::Domain, a: &[Self::Coord], b: &[Self::Coord]) -> Option<u32> {
        let mut best: Option<u32> = None;
        for x in a {
            for y in b {
                let d = self.coord_distance(u, x, y)?;
                best = Some(best.map_or(d, |b| b.min(d)));
            }
        }
        best
    }

    /// Diameter of a coordinate set.
    fn coord_diameter(&self, u: &Self::Domain, a: &[Self::Coord]) -> Option<u32> {
        let mut best = 0;
        for (i, x) in a.iter().enumerate() {
            for y in &a[i + 1..] {
                best = best.max(self.coord_distance(u, x, y)?);
            }
        }
        Some(best)
    }

    /// `d_U(x, y)` as a set distance between projections.
    fn domain_distance(&self, u: &Self::Domain, x: &Self::Point, y: &Self::Point) -> Option<u32> {
        let a = self.project(u, x)?;
        let b = self.project(u, y)?;
        self.coord_set_distance(u, &a, &b)
    }

    /// `d_U(V, W)`: the distance between `ρ^V_U` and `ρ^W_U`.
    fn rho_distance(&self, u: &Self::Domain, v: &Self::Domain, w: &Self::Domain) -> Option<u32> {
        let a = self.rho(v, u)?;
        let b = self.rho(w, u)?;
        self.coord_set_distance(u, &a, &b)
    }
}
