//! Groups acting on hierarchical spaces by automorphisms.
//!
//! A [`GroupHierarchy`] is a closed-form hierarchy together with a group acting
//! on points, domains and coordinate spaces. A finite window of such a space is
//! materialised as a table model; [`automorphism::tabulate`] then turns a group
//! element into partial tables over that window, which can be checked square by
//! square with [`automorphism::verify_automorphism`].

pub mod automorphism;
pub mod error;
pub mod word;

use std::fmt::Debug;
use std::hash::Hash;

use hhs_model::Hierarchy;

pub use automorphism::{tabulate, verify_automorphism, Automorphism, AutomorphismCheck, WindowIndex};
pub use error::{ActionError, Result};
pub use word::{orbit_ball, orbit_in_window, GroupSpec, OrbitEntry, Syllable, Word};

/// A hierarchy with a group acting on it by automorphisms.
///
/// All maps are total: the closed form describes the whole (infinite) space.
/// Truncation to a window happens only when tabulating.
pub trait GroupHierarchy: Hierarchy {
    type Element: Clone + Eq + Hash + Ord + Debug;

    fn identity(&self) -> Self::Element;
    fn multiply(&self, g: &Self::Element, h: &Self::Element) -> Self::Element;
    fn inverse(&self, g: &Self::Element) -> Self::Element;

    fn act_point(&self, g: &Self::Element, x: &Self::Point) -> Self::Point;
    /// `g♯U`.
    fn act_domain(&self, g: &Self::Element, u: &Self::Domain) -> Self::Domain;
    /// `g◇(U)`, an isometry `𝒞U → 𝒞(g♯U)`.
    fn act_coord(&self, g: &Self::Element, u: &Self::Domain, c: &Self::Coord) -> Self::Coord;

    /// The basepoint `x₀` whose orbit is the usual embedding of the group.
    fn basepoint(&self) -> Self::Point;

    fn orbit_point(&self, g: &Self::Element) -> Self::Point {
        self.act_point(g, &self.basepoint())
    }

    /// Human-readable names used in reports; the defaults fall back to `Debug`.
    fn describe_element(&self, g: &Self::Element) -> String {
        format!("{g:?}")
    }

    fn describe_point(&self, x: &Self::Point) -> String {
        format!("{x:?}")
    }

    fn describe_domain(&self, u: &Self::Domain) -> String {
        format!("{u:?}")
    }

    fn power(&self, g: &Self::Element, k: i64) -> Self::Element {
        let base = if k < 0 { self.inverse(g) } else { g.clone() };
        let mut out = self.identity();
        for _ in 0..k.unsigned_abs() {
            out = self.multiply(&out, &base);
        }
        out
    }
}
