//! Automorphisms of a finite window as partial tables.
//!
//! A group element moves part of a finite window out of range, so every table
//! entry is optional. A square compares the image of a coordinate set with the
//! target set, both cut down to the part of the target window that the partial
//! isometry reaches; squares with nothing left after the cut, or whose point or
//! domain has no image, are counted as skipped.

use std::collections::HashMap;
use std::hash::Hash;

use hhs_coarse::sets::VertexSet;
use hhs_model::HierarchicalModel;
use serde::{Deserialize, Serialize};

use crate::error::{ActionError, Result};
use crate::GroupHierarchy;

/// The vertices of a table model, labelled by closed-form objects.
#[derive(Clone, Debug)]
pub struct WindowIndex<P, D, C> {
    points: Vec<P>,
    domains: Vec<D>,
    coords: Vec<Vec<C>>,
    point_ix: HashMap<P, u32>,
    domain_ix: HashMap<D, u32>,
    coord_ix: Vec<HashMap<C, u32>>,
}

impl<P: Clone + Eq + Hash, D: Clone + Eq + Hash, C: Clone + Eq + Hash> WindowIndex<P, D, C> {
    pub fn new(points: Vec<P>, domains: Vec<D>, coords: Vec<Vec<C>>) -> Self {
        let point_ix = points.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let domain_ix = domains.iter().enumerate().map(|(i, d)| (d.clone(), i as u32)).collect();
        let coord_ix = coords
            .iter()
            .map(|cs| cs.iter().enumerate().map(|(i, c)| (c.clone(), i as u32)).collect())
            .collect();
        WindowIndex { points, domains, coords, point_ix, domain_ix, coord_ix }
    }

    pub fn points(&self) -> &[P] {
        &self.points
    }

    pub fn domains(&self) -> &[D] {
        &self.domains
    }

    pub fn coords(&self, u: usize) -> &[C] {
        &self.coords[u]
    }

    pub fn point_index(&self, p: &P) -> Option<usize> {
        self.point_ix.get(p).map(|&i| i as usize)
    }

    pub fn domain_index(&self, d: &D) -> Option<usize> {
        self.domain_ix.get(d).map(|&i| i as usize)
    }

    pub fn coord_index(&self, u: usize, c: &C) -> Option<usize> {
        self.coord_ix[u].get(c).map(|&i| i as usize)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Automorphism {
    pub x_map: Vec<Option<u32>>,
    pub domain_map: Vec<Option<u32>>,
    /// `coord_isos[u][c]` is the image of coordinate `c` of `U` in `𝒞(g♯U)`.
    pub coord_isos: Vec<Vec<Option<u32>>>,
}

impl Automorphism {
    pub fn identity(m: &HierarchicalModel) -> Self {
        Automorphism {
            x_map: (0..m.ambient().len() as u32).map(Some).collect(),
            domain_map: (0..m.domain_count() as u32).map(Some).collect(),
            coord_isos: m.coords().iter().map(|g| (0..g.len() as u32).map(Some).collect()).collect(),
        }
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &Automorphism) -> Automorphism {
        let x_map = first.x_map.iter().map(|x| x.and_then(|y| self.x_map[y as usize])).collect();
        let domain_map = first.domain_map.iter().map(|u| u.and_then(|v| self.domain_map[v as usize])).collect();
        let coord_isos = first
            .coord_isos
            .iter()
            .enumerate()
            .map(|(u, iso)| match first.domain_map[u] {
                None => vec![None; iso.len()],
                Some(v) => {
                    let second = &self.coord_isos[v as usize];
                    iso.iter().map(|c| c.and_then(|c| second[c as usize])).collect()
                }
            })
            .collect();
        Automorphism { x_map, domain_map, coord_isos }
    }

    /// Equality of the domain and coordinate tables; the point map is ignored.
    pub fn equivalent(&self, other: &Automorphism) -> bool {
        self.domain_map == other.domain_map && self.coord_isos == other.coord_isos
    }

    /// Agreement wherever both tables are defined.
    pub fn agrees_with(&self, other: &Automorphism) -> bool {
        fn agree(a: &[Option<u32>], b: &[Option<u32>]) -> bool {
            a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.is_none() || y.is_none() || x == y)
        }
        agree(&self.x_map, &other.x_map)
            && agree(&self.domain_map, &other.domain_map)
            && self.coord_isos.len() == other.coord_isos.len()
            && self.coord_isos.iter().zip(&other.coord_isos).enumerate().all(|(u, (a, b))| {
                self.domain_map[u].is_none() || other.domain_map[u].is_none() || agree(a, b)
            })
    }

    /// Number of points with an image, and the number of points.
    pub fn point_coverage(&self) -> (usize, usize) {
        (self.x_map.iter().filter(|x| x.is_some()).count(), self.x_map.len())
    }

    pub fn check_shape(&self, m: &HierarchicalModel) -> Result<()> {
        let n = m.ambient().len();
        let d = m.domain_count();
        let bad = |what: String| Err(ActionError::Shape(what));
        if self.x_map.len() != n || self.x_map.iter().flatten().any(|&y| y as usize >= n) {
            return bad("point map does not match the ambient space".into());
        }
        if self.domain_map.len() != d || self.domain_map.iter().flatten().any(|&v| v as usize >= d) {
            return bad("domain map does not match the domain set".into());
        }
        if self.coord_isos.len() != d {
            return bad("one coordinate map per domain is required".into());
        }
        for (u, iso) in self.coord_isos.iter().enumerate() {
            if iso.len() != m.coord(u).len() {
                return bad(format!("coordinate map of {} has the wrong length", m.domains().name(u)));
            }
            match self.domain_map[u] {
                Some(v) => {
                    let len = m.coord(v as usize).len();
                    if iso.iter().flatten().any(|&c| c as usize >= len) {
                        return bad(format!("coordinate map of {} leaves its target", m.domains().name(u)));
                    }
                }
                None if iso.iter().any(Option::is_some) => {
                    return bad(format!("coordinate map of {} given for an unmapped domain", m.domains().name(u)));
                }
                None => {}
            }
        }
        Ok(())
    }
}

/// The partial tables of `g` acting on a window.
pub fn tabulate<H>(h: &H, w: &WindowIndex<H::Point, H::Domain, H::Coord>, g: &H::Element) -> Automorphism
where
    H: GroupHierarchy,
    H::Point: Eq + Hash,
    H::Coord: Eq + Hash,
{
    let x_map = w.points().iter().map(|x| w.point_index(&h.act_point(g, x)).map(|i| i as u32)).collect();
    let mut domain_map = Vec::with_capacity(w.domains().len());
    let mut coord_isos = Vec::with_capacity(w.domains().len());
    for (u, d) in w.domains().iter().enumerate() {
        let gd = h.act_domain(g, d);
        let target = w.domain_index(&gd);
        domain_map.push(target.map(|t| t as u32));
        coord_isos.push(match target {
            Some(t) => {
                w.coords(u).iter().map(|c| w.coord_index(t, &h.act_coord(g, d, c)).map(|i| i as u32)).collect()
            }
            None => vec![None; w.coords(u).len()],
        });
    }
    Automorphism { x_map, domain_map, coord_isos }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismCheck {
    pub holds: bool,
    /// Descriptions of the first few failing squares.
    pub failures: Vec<String>,
    pub squares_checked: u64,
    pub squares_skipped: u64,
    pub points_mapped: usize,
    pub points_total: usize,
}

impl AutomorphismCheck {
    pub fn coverage_percent(&self) -> f64 {
        if self.points_total == 0 {
            100.0
        } else {
            100.0 * self.points_mapped as f64 / self.points_total as f64
        }
    }
}

const FAILURES_KEPT: usize = 5;

struct Tally {
    failures: Vec<String>,
    failed: bool,
    checked: u64,
    skipped: u64,
}

impl Tally {
    fn fail(&mut self, what: impl FnOnce() -> String) {
        self.failed = true;
        if self.failures.len() < FAILURES_KEPT {
            self.failures.push(what());
        }
    }

    fn square(&mut self, outcome: Option<bool>, what: impl FnOnce() -> String) {
        match outcome {
            None => self.skipped += 1,
            Some(ok) => {
                self.checked += 1;
                if !ok {
                    self.fail(what);
                }
            }
        }
    }
}

/// One coordinate isometry with its range, for comparing sets on the part of
/// the target window that the partial map reaches.
struct Iso<'a> {
    map: &'a [Option<u32>],
    range: Vec<bool>,
}

impl<'a> Iso<'a> {
    fn new(map: &'a [Option<u32>], target_len: usize) -> Self {
        let mut range = vec![false; target_len];
        for c in map.iter().flatten() {
            range[*c as usize] = true;
        }
        Iso { map, range }
    }

    /// Compares `g◇(source)` with `target`, both cut down to where the map is
    /// defined. `None` when nothing of either set survives the cut.
    fn square(&self, source: &VertexSet, target: &VertexSet) -> Option<bool> {
        let mut img: Vec<u32> = source.iter().filter_map(|c| self.map[c]).collect();
        img.sort_unstable();
        img.dedup();
        let cut: Vec<u32> = target.members().iter().copied().filter(|&c| self.range[c as usize]).collect();
        if img.is_empty() && cut.is_empty() {
            return None;
        }
        Some(img == cut)
    }
}

/// Checks that the tables commute with projections and relative projections,
/// preserve the relations and act isometrically on coordinate spaces, wherever
/// they are defined.
pub fn verify_automorphism(m: &HierarchicalModel, a: &Automorphism) -> Result<AutomorphismCheck> {
    a.check_shape(m)?;
    let d = m.domains();
    let n = m.domain_count();
    let mut t = Tally { failures: Vec::new(), failed: false, checked: 0, skipped: 0 };

    let mut hit = vec![None; n];
    for (u, v) in a.domain_map.iter().enumerate() {
        if let Some(v) = v {
            if let Some(prev) = hit[*v as usize].replace(u) {
                t.fail(|| format!("domains {} and {} have the same image", d.name(prev), d.name(u)));
            }
        }
    }
    for u in 0..n {
        for v in 0..n {
            if let (Some(gu), Some(gv)) = (a.domain_map[u], a.domain_map[v]) {
                let ok = d.relation(u, v) == d.relation(gu as usize, gv as usize);
                t.square(Some(ok), || format!("relation between {} and {} is not preserved", d.name(u), d.name(v)));
            }
        }
    }

    for u in 0..n {
        let Some(gu) = a.domain_map[u] else { continue };
        let (src, dst) = (m.coord(u), m.coord(gu as usize));
        let iso = &a.coord_isos[u];
        for c1 in 0..src.len() {
            let Some(i1) = iso[c1] else { continue };
            for c2 in c1 + 1..src.len() {
                let Some(i2) = iso[c2] else { continue };
                let ok = src.dist(c1, c2) == dst.dist(i1 as usize, i2 as usize);
                t.square(Some(ok), || {
                    format!("coordinate map of {} is not isometric at {}, {}", d.name(u), src.label(c1), src.label(c2))
                });
            }
        }
    }

    let isos: Vec<Option<Iso>> = (0..n)
        .map(|u| a.domain_map[u].map(|gu| Iso::new(&a.coord_isos[u], m.coord(gu as usize).len())))
        .collect();

    for u in 0..n {
        let (Some(gu), Some(iso)) = (a.domain_map[u], &isos[u]) else {
            t.skipped += m.ambient().len() as u64;
            continue;
        };
        let (table, target) = (m.pi(u), m.pi(gu as usize));
        for x in 0..m.ambient().len() {
            let outcome = a.x_map[x].and_then(|gx| iso.square(table.image(x), target.image(gx as usize)));
            t.square(outcome, || format!("projection square fails at {} in {}", m.ambient().label(x), d.name(u)));
        }
    }

    for v in 0..n {
        for u in 0..n {
            let Some(rho) = m.rho_point(v, u) else { continue };
            let outcome = match (a.domain_map[v], a.domain_map[u], &isos[u]) {
                (Some(gv), Some(gu), Some(iso)) => match m.rho_point(gv as usize, gu as usize) {
                    Some(target) => iso.square(rho, target),
                    None => Some(false),
                },
                _ => None,
            };
            t.square(outcome, || format!("relative projection from {} to {} is not equivariant", d.name(v), d.name(u)));
        }
    }

    for ((u, v), table) in m.rho_maps() {
        let (Some(gu), Some(gv), Some(iso_v)) = (a.domain_map[u], a.domain_map[v], &isos[v]) else {
            t.skipped += table.sources() as u64;
            continue;
        };
        let target = m.rho_map(gu as usize, gv as usize);
        for c in 0..table.sources() {
            let outcome = match (a.coord_isos[u][c], target) {
                (Some(gc), Some(tt)) => iso_v.square(table.image(c), tt.image(gc as usize)),
                (Some(_), None) => Some(false),
                (None, _) => None,
            };
            t.square(outcome, || {
                format!("relative projection map from {} to {} fails at {}", d.name(u), d.name(v), m.coord(u).label(c))
            });
        }
    }

    let (points_mapped, points_total) = a.point_coverage();
    Ok(AutomorphismCheck {
        holds: !t.failed,
        failures: t.failures,
        squares_checked: t.checked,
        squares_skipped: t.skipped,
        points_mapped,
        points_total,
    })
}
