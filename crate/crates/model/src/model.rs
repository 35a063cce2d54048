//! Explicit finite hierarchical models.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use hhs_coarse::sets::{distance_unchecked, VertexSet};
use hhs_coarse::FiniteGraph;
use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::hierarchy::Hierarchy;
use crate::relations::{DomainSet, Relation};

/// A set-valued map from the vertices of one graph to vertex sets of another,
/// stored as a list of distinct images plus an image index per source vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionTable {
    classes: Vec<VertexSet>,
    class_of: Vec<u32>,
}

impl ProjectionTable {
    pub fn new(classes: Vec<VertexSet>, class_of: Vec<u32>) -> Result<Self> {
        if let Some(&c) = class_of.iter().find(|&&c| c as usize >= classes.len()) {
            return Err(ModelError::Malformed(format!("image index {c} out of range ({} images)", classes.len())));
        }
        Ok(ProjectionTable { classes, class_of })
    }

    /// Builds a table from one image per source vertex, merging equal images.
    /// Images are numbered in order of first appearance.
    pub fn from_images(images: Vec<VertexSet>) -> Self {
        let mut index: std::collections::HashMap<VertexSet, u32> = std::collections::HashMap::new();
        let mut classes = Vec::new();
        let mut class_of = Vec::with_capacity(images.len());
        for img in images {
            let next = classes.len() as u32;
            let c = *index.entry(img.clone()).or_insert_with(|| {
                classes.push(img);
                next
            });
            class_of.push(c);
        }
        ProjectionTable { classes, class_of }
    }

    /// Every source vertex maps to the same image.
    pub fn constant(sources: usize, image: VertexSet) -> Self {
        ProjectionTable { classes: vec![image], class_of: vec![0; sources] }
    }

    pub fn sources(&self) -> usize {
        self.class_of.len()
    }

    pub fn classes(&self) -> &[VertexSet] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v] as usize
    }

    pub fn class_indices(&self) -> &[u32] {
        &self.class_of
    }

    pub fn image(&self, v: usize) -> &VertexSet {
        &self.classes[self.class_of[v] as usize]
    }

    /// Union of the images of the given source vertices.
    pub fn image_of_set(&self, vs: impl IntoIterator<Item = usize>) -> Option<VertexSet> {
        let mut all: Vec<u32> = Vec::new();
        for v in vs {
            all.extend_from_slice(self.image(v).members());
        }
        VertexSet::new(all).ok()
    }

    /// Replaces the image of one source vertex.
    pub fn set_image(&mut self, v: usize, image: VertexSet) {
        match self.classes.iter().position(|c| *c == image) {
            Some(c) => self.class_of[v] = c as u32,
            None => {
                self.classes.push(image);
                self.class_of[v] = (self.classes.len() - 1) as u32;
            }
        }
    }

    fn validate(&self, sources: usize, target: &FiniteGraph, what: &str) -> Result<()> {
        if self.class_of.len() != sources {
            return Err(ModelError::Malformed(format!("{what}: {} source entries, expected {sources}", self.class_of.len())));
        }
        for c in &self.classes {
            c.validate(target).map_err(|e| ModelError::Malformed(format!("{what}: {e}")))?;
        }
        Ok(())
    }
}

/// Per-domain summary used to skip points whose projection is the most common one.
#[derive(Clone, Debug)]
pub struct DomainProfile {
    /// The image class with the most preimages (least index on ties).
    pub dominant: u32,
    /// Ambient vertices outside the dominant class, sorted.
    pub support: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct Profiles {
    pub domains: Vec<DomainProfile>,
    /// For each ambient vertex, the `(domain, class)` pairs of the domains
    /// whose support contains it, sorted by domain.
    pub at_point: Vec<Vec<(u32, u32)>>,
}

/// A finite hierarchical space given by explicit tables.
#[derive(Clone, Debug)]
pub struct HierarchicalModel {
    ambient: FiniteGraph,
    domains: DomainSet,
    coords: Vec<FiniteGraph>,
    pi: Vec<ProjectionTable>,
    /// Indexed by `v * n + u`: `ρ^V_U ⊆ 𝒞U`.
    rho_point: Vec<Option<VertexSet>>,
    /// Keyed by `(U, V)` with `V ⊊ U`: `ρ^U_V : 𝒞U → 2^{𝒞V}`.
    rho_map: BTreeMap<(u32, u32), ProjectionTable>,
    e: u32,
    /// Domains flagged as ⊑-minimal with hyperbolicity left unchecked.
    unchecked_minimal: Vec<bool>,
    profiles: OnceLock<Profiles>,
    class_dist: OnceLock<Vec<OnceLock<Option<Vec<u16>>>>>,
}

impl PartialEq for HierarchicalModel {
    fn eq(&self, o: &Self) -> bool {
        self.ambient == o.ambient
            && self.domains == o.domains
            && self.coords == o.coords
            && self.pi == o.pi
            && self.rho_point == o.rho_point
            && self.rho_map == o.rho_map
            && self.e == o.e
            && self.unchecked_minimal == o.unchecked_minimal
    }
}

/// Class-distance matrices are cached for domains with at most this many classes.
const CLASS_MATRIX_LIMIT: usize = 2048;

/// Whether the relation of `v` to `u` calls for `ρ^V_U`.
pub fn needs_rho_point(d: &DomainSet, v: usize, u: usize) -> bool {
    matches!(d.relation(v, u), Relation::NestedIn | Relation::Transverse)
}

impl HierarchicalModel {
    pub fn new(
        ambient: FiniteGraph,
        domains: DomainSet,
        coords: Vec<FiniteGraph>,
        pi: Vec<ProjectionTable>,
        rho_point: BTreeMap<(usize, usize), VertexSet>,
        rho_map: BTreeMap<(usize, usize), ProjectionTable>,
        e: u32,
    ) -> Result<Self> {
        let n = domains.len();
        let mut dense = vec![None; n * n];
        for ((v, u), s) in rho_point {
            if v >= n {
                return Err(ModelError::DomainIndex(v));
            }
            if u >= n {
                return Err(ModelError::DomainIndex(u));
            }
            dense[v * n + u] = Some(s);
        }
        let rho_map = rho_map.into_iter().map(|((u, v), t)| ((u as u32, v as u32), t)).collect();
        let m = HierarchicalModel {
            ambient,
            domains,
            coords,
            pi,
            rho_point: dense,
            rho_map,
            e,
            unchecked_minimal: vec![false; n],
            profiles: OnceLock::new(),
            class_dist: OnceLock::new(),
        };
        m.validate()?;
        Ok(m)
    }

    /// Checks table shapes and that ρ is defined exactly where the relations require.
    pub fn validate(&self) -> Result<()> {
        let n = self.domains.len();
        if self.e == 0 {
            return Err(ModelError::Malformed("declared constant E must be positive".into()));
        }
        if self.coords.len() != n || self.pi.len() != n {
            return Err(ModelError::Malformed(format!(
                "{} domains but {} coordinate spaces and {} projections",
                n,
                self.coords.len(),
                self.pi.len()
            )));
        }
        if self.unchecked_minimal.len() != n {
            return Err(ModelError::Malformed("minimal-domain flags do not match the domain count".into()));
        }
        if self.rho_point.len() != n * n {
            return Err(ModelError::Malformed("relative projection table has the wrong size".into()));
        }
        for u in 0..n {
            self.pi[u].validate(self.ambient.len(), &self.coords[u], &format!("projection to {}", self.domains.name(u)))?;
        }
        for v in 0..n {
            for u in 0..n {
                let need = needs_rho_point(&self.domains, v, u);
                let from = || self.domains.name(v).to_string();
                let to = || self.domains.name(u).to_string();
                match (&self.rho_point[v * n + u], need) {
                    (None, true) => return Err(ModelError::MissingRho { from: from(), to: to() }),
                    (Some(_), false) => return Err(ModelError::UnexpectedRho { from: from(), to: to() }),
                    (Some(s), true) => s.validate(&self.coords[u]).map_err(|e| {
                        ModelError::Malformed(format!("ρ from {} to {}: {e}", from(), to()))
                    })?,
                    (None, false) => {}
                }
                // ρ^U_V for V ⊊ U, keyed (U, V) = (u, v) here.
                let need_map = self.domains.is_nested(v, u);
                match (self.rho_map.get(&(u as u32, v as u32)), need_map) {
                    (None, true) => return Err(ModelError::MissingRho { from: to(), to: from() }),
                    (Some(_), false) => return Err(ModelError::UnexpectedRho { from: to(), to: from() }),
                    (Some(t), true) => t.validate(self.coords[u].len(), &self.coords[v], &format!("ρ map from {} to {}", to(), from()))?,
                    (None, false) => {}
                }
            }
        }
        for key in self.rho_map.keys() {
            if key.0 as usize >= n || key.1 as usize >= n {
                return Err(ModelError::DomainIndex(key.0.max(key.1) as usize));
            }
        }
        Ok(())
    }

    pub fn ambient(&self) -> &FiniteGraph {
        &self.ambient
    }

    pub fn domains(&self) -> &DomainSet {
        &self.domains
    }

    pub fn domain_count(&self) -> usize {
        self.domains.len()
    }

    pub fn coord(&self, u: usize) -> &FiniteGraph {
        &self.coords[u]
    }

    pub fn coords(&self) -> &[FiniteGraph] {
        &self.coords
    }

    pub fn pi(&self, u: usize) -> &ProjectionTable {
        &self.pi[u]
    }

    pub fn project_point(&self, u: usize, x: usize) -> &VertexSet {
        self.pi[u].image(x)
    }

    /// `ρ^V_U`, when defined.
    pub fn rho_point(&self, v: usize, u: usize) -> Option<&VertexSet> {
        self.rho_point[v * self.domains.len() + u].as_ref()
    }

    /// `ρ^U_V` for `V ⊊ U`, when defined.
    pub fn rho_map(&self, u: usize, v: usize) -> Option<&ProjectionTable> {
        self.rho_map.get(&(u as u32, v as u32))
    }

    pub fn rho_maps(&self) -> impl Iterator<Item = ((usize, usize), &ProjectionTable)> {
        self.rho_map.iter().map(|(&(u, v), t)| ((u as usize, v as usize), t))
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn set_e(&mut self, e: u32) -> Result<()> {
        if e == 0 {
            return Err(ModelError::Malformed("declared constant E must be positive".into()));
        }
        self.e = e;
        Ok(())
    }

    pub fn is_unchecked_minimal(&self, u: usize) -> bool {
        self.unchecked_minimal[u]
    }

    /// Flags a ⊑-minimal domain whose coordinate space need not be hyperbolic.
    pub fn mark_unchecked_minimal(&mut self, u: usize) -> Result<()> {
        if self.domains.below(u).next().is_some() {
            return Err(ModelError::Malformed(format!("{} is not ⊑-minimal", self.domains.name(u))));
        }
        self.unchecked_minimal[u] = true;
        Ok(())
    }

    fn invalidate(&mut self) {
        self.profiles = OnceLock::new();
        self.class_dist = OnceLock::new();
    }

    /// Overwrites `ρ^V_U`.  The relation must call for it.
    pub fn set_rho_point(&mut self, v: usize, u: usize, set: VertexSet) -> Result<()> {
        let n = self.domains.len();
        if !needs_rho_point(&self.domains, v, u) {
            return Err(ModelError::UndefinedRho { from: self.domains.name(v).into(), to: self.domains.name(u).into() });
        }
        set.validate(&self.coords[u])?;
        self.rho_point[v * n + u] = Some(set);
        self.invalidate();
        Ok(())
    }

    /// Overwrites `ρ^U_V(c)` for a single vertex `c` of `𝒞U`.
    pub fn set_rho_map_entry(&mut self, u: usize, v: usize, c: usize, set: VertexSet) -> Result<()> {
        set.validate(&self.coords[v])?;
        let name = (self.domains.name(u).to_string(), self.domains.name(v).to_string());
        let t = self
            .rho_map
            .get_mut(&(u as u32, v as u32))
            .ok_or(ModelError::UndefinedRho { from: name.0, to: name.1 })?;
        if c >= t.sources() {
            return Err(hhs_coarse::CoarseError::UnknownVertex(c).into());
        }
        t.set_image(c, set);
        self.invalidate();
        Ok(())
    }

    /// Overwrites `π_U(x)`.
    pub fn set_projection(&mut self, u: usize, x: usize, set: VertexSet) -> Result<()> {
        set.validate(&self.coords[u])?;
        self.ambient.check_vertex(x)?;
        self.pi[u].set_image(x, set);
        self.invalidate();
        Ok(())
    }

    /// Support profiles, computed on first use.
    pub fn profiles(&self) -> &Profiles {
        self.profiles.get_or_init(|| {
            let nx = self.ambient.len();
            let mut domains = Vec::with_capacity(self.domains.len());
            let mut at_point: Vec<Vec<(u32, u32)>> = vec![Vec::new(); nx];
            for (u, table) in self.pi.iter().enumerate() {
                let mut counts = vec![0usize; table.class_count()];
                for &c in table.class_indices() {
                    counts[c as usize] += 1;
                }
                let dominant = counts
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
                    .map(|(c, _)| c as u32)
                    .unwrap_or(0);
                let mut support = Vec::new();
                for (x, &c) in table.class_indices().iter().enumerate() {
                    if c != dominant {
                        support.push(x as u32);
                        at_point[x].push((u as u32, c));
                    }
                }
                domains.push(DomainProfile { dominant, support });
            }
            Profiles { domains, at_point }
        })
    }

    /// Class of `x` in domain `u`.
    pub fn class(&self, u: usize, x: usize) -> usize {
        self.pi[u].class_of(x)
    }

    /// Set distance in `𝒞U` between the images of two classes.
    pub fn class_distance(&self, u: usize, c1: usize, c2: usize) -> u32 {
        if c1 == c2 {
            return 0;
        }
        let cells = self.class_dist.get_or_init(|| (0..self.domains.len()).map(|_| OnceLock::new()).collect());
        let matrix = cells[u].get_or_init(|| {
            let k = self.pi[u].class_count();
            if k > CLASS_MATRIX_LIMIT || !self.coords[u].has_fast_metric() {
                return None;
            }
            let cls = self.pi[u].classes();
            let mut m = vec![0u16; k * k];
            for i in 0..k {
                for j in i + 1..k {
                    let d = distance_unchecked(&self.coords[u], cls[i].members(), cls[j].members()).min(u16::MAX as u32) as u16;
                    m[i * k + j] = d;
                    m[j * k + i] = d;
                }
            }
            Some(m)
        });
        match matrix {
            Some(m) => m[c1 * self.pi[u].class_count() + c2] as u32,
            None => {
                let cls = self.pi[u].classes();
                distance_unchecked(&self.coords[u], cls[c1].members(), cls[c2].members())
            }
        }
    }

    /// `d_U(x, y)`.
    pub fn point_distance(&self, u: usize, x: usize, y: usize) -> u32 {
        self.class_distance(u, self.class(u, x), self.class(u, y))
    }

    /// Distance in `𝒞U` from each projection class to a coordinate set.
    pub fn class_distances_to(&self, u: usize, target: &VertexSet) -> Vec<u32> {
        let to = self.coords[u].distances_to_set(&target.to_usizes());
        self.pi[u].classes().iter().map(|c| c.iter().map(|v| to[v]).min().unwrap_or(u32::MAX)).collect()
    }

    /// Ambient vertices grouped by their class in domain `u`.
    pub fn class_members(&self, u: usize) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.pi[u].class_count()];
        for (x, &c) in self.pi[u].class_indices().iter().enumerate() {
            out[c as usize].push(x as u32);
        }
        out
    }

    /// The coordinate tuple of an ambient point.
    pub fn coordinates_of(&self, x: usize) -> Vec<VertexSet> {
        (0..self.domains.len()).map(|u| self.pi[u].image(x).clone()).collect()
    }
}

impl Hierarchy for HierarchicalModel {
    type Point = usize;
    type Domain = usize;
    type Coord = usize;

    fn constant(&self) -> u32 {
        self.e
    }

    fn relation(&self, u: &usize, v: &usize) -> Relation {
        self.domains.relation(*u, *v)
    }

    fn project(&self, u: &usize, x: &usize) -> Option<Vec<usize>> {
        (*u < self.domains.len() && *x < self.ambient.len()).then(|| self.pi[*u].image(*x).to_usizes())
    }

    fn rho(&self, from: &usize, to: &usize) -> Option<Vec<usize>> {
        if *from >= self.domains.len() || *to >= self.domains.len() {
            return None;
        }
        self.rho_point(*from, *to).map(VertexSet::to_usizes)
    }

    fn coord_distance(&self, u: &usize, a: &usize, b: &usize) -> Option<u32> {
        self.coords.get(*u)?.distance(*a, *b).ok()
    }
}
