//! Nonempty vertex sets and the set-level distances used throughout.

use serde::{Deserialize, Serialize};

use crate::error::{CoarseError, Result};
use crate::graph::FiniteGraph;

/// A nonempty set of vertices of some graph, stored sorted and deduplicated.
///
/// The set does not hold a reference to its graph; operations take the
/// graph explicitly and validate membership where it matters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct VertexSet(Vec<u32>);

impl TryFrom<Vec<u32>> for VertexSet {
    type Error = CoarseError;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        VertexSet::new(v)
    }
}

impl From<VertexSet> for Vec<u32> {
    fn from(s: VertexSet) -> Self {
        s.0
    }
}

impl VertexSet {
    pub fn new(mut members: Vec<u32>) -> Result<Self> {
        if members.is_empty() {
            return Err(CoarseError::EmptySet);
        }
        members.sort_unstable();
        members.dedup();
        Ok(VertexSet(members))
    }

    pub fn from_usizes(members: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(members.into_iter().map(|v| v as u32).collect())
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(vec![v as u32])
    }

    /// Every vertex of `g`.
    pub fn all(g: &FiniteGraph) -> Self {
        VertexSet((0..g.len() as u32).collect())
    }

    /// Checks that every member is a vertex of `g`.
    pub fn validate(&self, g: &FiniteGraph) -> Result<()> {
        match self.0.last() {
            Some(&v) if (v as usize) >= g.len() => Err(CoarseError::UnknownVertex(v as usize)),
            _ => Ok(()),
        }
    }

    pub fn members(&self) -> &[u32] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&v| v as usize)
    }

    pub fn to_usizes(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for API symmetry with collections.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> usize {
        self.0[0] as usize
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&(v as u32)).is_ok()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&v| other.0.binary_search(&v).is_ok())
    }
}

/// Largest pairwise distance in `s`; zero for singletons.
pub fn set_diameter(g: &FiniteGraph, s: &VertexSet) -> Result<u32> {
    s.validate(g)?;
    Ok(diameter_unchecked(g, s.members()))
}

/// Diameter of a nonempty slice of vertices.  Panics on out-of-range members.
pub fn diameter_unchecked(g: &FiniteGraph, s: &[u32]) -> u32 {
    let mut best = 0;
    for (i, &u) in s.iter().enumerate() {
        for &v in &s[i + 1..] {
            best = best.max(g.dist(u as usize, v as usize));
        }
    }
    best
}

/// Distance between two sets: the least distance between a member of each.
pub fn set_distance(g: &FiniteGraph, a: &VertexSet, b: &VertexSet) -> Result<u32> {
    a.validate(g)?;
    b.validate(g)?;
    Ok(distance_unchecked(g, a.members(), b.members()))
}

/// Set distance on raw slices.  Panics on out-of-range members.
pub fn distance_unchecked(g: &FiniteGraph, a: &[u32], b: &[u32]) -> u32 {
    let mut best = u32::MAX;
    for &u in a {
        for &v in b {
            best = best.min(g.dist(u as usize, v as usize));
            if best == 0 {
                return 0;
            }
        }
    }
    best
}

/// Diameter of the union of two sets.
pub fn union_diameter_unchecked(g: &FiniteGraph, a: &[u32], b: &[u32]) -> u32 {
    let mut all: Vec<u32> = a.iter().chain(b).copied().collect();
    all.sort_unstable();
    all.dedup();
    diameter_unchecked(g, &all)
}

/// Least `r` such that every vertex of `g` lies within `r` of `s`.
pub fn density_defect(g: &FiniteGraph, s: &VertexSet) -> Result<u32> {
    s.validate(g)?;
    Ok(g.distances_to_set(&s.to_usizes()).into_iter().max().unwrap_or(0))
}

/// Hausdorff distance between two sets in `g`.
pub fn hausdorff_distance(g: &FiniteGraph, a: &VertexSet, b: &VertexSet) -> Result<u32> {
    a.validate(g)?;
    b.validate(g)?;
    let to_b = g.distances_to_set(&b.to_usizes());
    let to_a = g.distances_to_set(&a.to_usizes());
    let ab = a.iter().map(|v| to_b[v]).max().unwrap_or(0);
    let ba = b.iter().map(|v| to_a[v]).max().unwrap_or(0);
    Ok(ab.max(ba))
}
