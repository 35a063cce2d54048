//! Axiom audit of explicit models.
//!
//! Each check measures the least constant for which its clause holds on the
//! model and keeps the instance realising it.  Most quantifiers over ambient
//! points are collapsed using support profiles: a point outside the support of
//! a domain projects to that domain's dominant class, so only supports and one
//! representative outside them need to be visited.

mod bgi;
mod consistency;
mod large_links;
mod projection;
mod realisation;
mod uniqueness;

use hhs_coarse::sets::{diameter_unchecked, distance_unchecked};
use hhs_coarse::{hyperbolicity_delta, CoarseError};

use crate::model::HierarchicalModel;
use crate::relations::audit_relations;
use crate::report::{AxiomEntry, AxiomReport, Bound, UniquenessSample, Witness};

pub use uniqueness::uniqueness_thetas;

/// Budgets and switches for [`audit`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditOptions {
    /// Member pairs examined per quasiconvexity measurement.
    pub qc_pair_budget: usize,
    /// Ordered signature pairs examined per domain and candidate constant.
    pub large_links_pair_budget: usize,
    /// Coordinate tuples examined per orthogonal family.
    pub realisation_tuple_budget: usize,
    /// Ambient point pairs examined for the uniqueness function.
    pub uniqueness_pair_budget: usize,
    /// Values of κ at which θ_u(κ) is tabulated; empty skips the table.
    pub kappas: Vec<u32>,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            qc_pair_budget: hhs_coarse::convex::DEFAULT_PAIR_BUDGET,
            large_links_pair_budget: 50_000_000,
            realisation_tuple_budget: 2_000_000,
            uniqueness_pair_budget: 200_000_000,
            kappas: vec![1, 2, 3, 4, 6, 8],
        }
    }
}

pub(crate) fn dn(m: &HierarchicalModel, u: usize) -> String {
    m.domains().name(u).to_string()
}

pub(crate) fn pn(m: &HierarchicalModel, x: usize) -> String {
    m.ambient().label(x).to_string()
}

pub(crate) fn cn(m: &HierarchicalModel, u: usize, c: usize) -> String {
    format!("{}:{}", m.domains().name(u), m.coord(u).label(c))
}

pub(crate) fn witness(domains: Vec<String>, points: Vec<String>, value: u32, detail: impl Into<String>) -> Witness {
    Witness { domains, points, coords: Vec::new(), value: Bound::Finite(value), detail: detail.into() }
}

/// Visits every ambient point in the union of the supports of `u` and `v`,
/// plus one point outside both when there is one, passing its classes.
pub(crate) fn for_each_joint(m: &HierarchicalModel, u: usize, v: usize, mut f: impl FnMut(usize, usize, usize)) {
    let prof = m.profiles();
    let nx = m.ambient().len();
    let (a, b) = (&prof.domains[u].support, &prof.domains[v].support);
    let (mut i, mut j) = (0, 0);
    let mut gap = None;
    let mut expect = 0usize;
    loop {
        let x = match (a.get(i), b.get(j)) {
            (Some(&p), Some(&q)) if p < q => {
                i += 1;
                p
            }
            (Some(&p), Some(&q)) if q < p => {
                j += 1;
                q
            }
            (Some(&p), Some(_)) => {
                i += 1;
                j += 1;
                p
            }
            (Some(&p), None) => {
                i += 1;
                p
            }
            (None, Some(&q)) => {
                j += 1;
                q
            }
            (None, None) => break,
        } as usize;
        if gap.is_none() && x > expect {
            gap = Some(expect);
        }
        expect = x + 1;
        f(x, m.class(u, x), m.class(v, x));
    }
    if gap.is_none() && expect < nx {
        gap = Some(expect);
    }
    if let Some(g) = gap {
        f(g, m.class(u, g), m.class(v, g));
    }
}

/// Classes of domain `u` that are the image of at least one ambient point.
pub(crate) fn used_classes(m: &HierarchicalModel, u: usize) -> Vec<bool> {
    let mut used = vec![false; m.pi(u).class_count()];
    for &c in m.pi(u).class_indices() {
        used[c as usize] = true;
    }
    used
}

/// Largest distance in `𝒞U` between two projected points.
pub(crate) fn projection_spread(m: &HierarchicalModel, u: usize) -> u32 {
    let used = used_classes(m, u);
    let k = used.len();
    let mut best = 0;
    for i in 0..k {
        if !used[i] {
            continue;
        }
        for j in i + 1..k {
            if used[j] {
                best = best.max(m.class_distance(u, i, j));
            }
        }
    }
    best
}

fn rho_diameter(m: &HierarchicalModel) -> AxiomEntry {
    let n = m.domain_count();
    let mut best = 0;
    let mut wit = None;
    for v in 0..n {
        for u in 0..n {
            if let Some(s) = m.rho_point(v, u) {
                let d = diameter_unchecked(m.coord(u), s.members());
                if d > best || (wit.is_none() && d == best && best > 0) {
                    best = d;
                    wit = Some(witness(vec![dn(m, v), dn(m, u)], vec![], d, "diameter of the relative projection"));
                }
            }
        }
    }
    AxiomEntry::new("rho_diameter", Bound::Finite(best), m.e(), wit)
}

fn orthogonal_rho_proximity(m: &HierarchicalModel) -> AxiomEntry {
    let d = m.domains();
    let n = d.len();
    let mut raw = 0;
    let mut wit = None;
    for u in 0..n {
        for v in d.orthogonal_to(u).filter(|&v| v > u) {
            for w in 0..n {
                if let (Some(a), Some(b)) = (m.rho_point(u, w), m.rho_point(v, w)) {
                    let dist = distance_unchecked(m.coord(w), a.members(), b.members());
                    if dist > raw {
                        raw = dist;
                        wit = Some(witness(
                            vec![dn(m, u), dn(m, v), dn(m, w)],
                            vec![],
                            dist,
                            "distance between the projections of two orthogonal domains",
                        ));
                    }
                }
            }
        }
    }
    AxiomEntry::new("orthogonal_rho_proximity", Bound::Finite(raw.div_ceil(2)), m.e(), wit)
        .with_note(format!("largest distance {raw}, checked against 2E"))
}

fn hyperbolicity(m: &HierarchicalModel) -> AxiomEntry {
    let mut best = 0;
    let mut wit = None;
    let mut partial = false;
    let mut skipped = Vec::new();
    for u in 0..m.domain_count() {
        if m.is_unchecked_minimal(u) {
            skipped.push(dn(m, u));
            continue;
        }
        match hyperbolicity_delta(m.coord(u)) {
            Ok(delta) => {
                let c = (delta.numer() + delta.denom() - 1) / delta.denom();
                let c = c.max(0) as u32;
                if c > best {
                    best = c;
                    wit = Some(witness(vec![dn(m, u)], vec![], c, format!("four-point constant {delta}")));
                }
            }
            Err(CoarseError::TooLarge { .. }) => {
                partial = true;
                skipped.push(dn(m, u));
            }
            Err(_) => partial = true,
        }
    }
    let mut entry = AxiomEntry::new("hyperbolicity", Bound::Finite(best), m.e(), wit).with_partial(partial);
    if !skipped.is_empty() {
        entry = entry.with_note(format!("not measured: {}", skipped.join(", ")));
    }
    entry
}

/// Runs every check and collects the report.
pub fn audit(m: &HierarchicalModel, opts: &AuditOptions) -> AxiomReport {
    let relations = audit_relations(m.domains());
    let complexity = m.domains().complexity();
    let mut entries = vec![projection::check(m, opts), rho_diameter(m), consistency::behrstock(m)];
    entries.push(consistency::nested_consistency(m));
    entries.push(consistency::rho_composition(m));
    entries.push(large_links::check(m, opts));
    entries.push(bgi::bgi(m));
    entries.push(bgi::bgi_variant(m));
    entries.push(realisation::check(m, opts));
    entries.push(orthogonal_rho_proximity(m));
    entries.push(hyperbolicity(m));
    let (uniqueness, uniqueness_partial) = uniqueness_thetas(m, &opts.kappas, opts.uniqueness_pair_budget);
    let audited_e = if entries.iter().any(|e| e.minimal_constant == Bound::Infinite) {
        None
    } else {
        Some(entries.iter().filter_map(|e| e.minimal_constant.finite()).max().unwrap_or(0).max(1))
    };
    let mut notes = Vec::new();
    if let Some(c) = complexity {
        notes.push(format!("complexity {c}"));
    }
    notes.push(
        "large links: the list length allowed for points at distance N in the top domain is E·N + E".to_string(),
    );
    AxiomReport {
        declared_e: m.e(),
        audited_e,
        relations,
        complexity,
        entries,
        uniqueness: uniqueness.into_iter().map(|(kappa, theta)| UniquenessSample { kappa, theta }).collect(),
        uniqueness_partial,
        notes,
    }
}

/// The least constant at which every measured clause holds, or `None`.
pub fn audited_constant(m: &HierarchicalModel, opts: &AuditOptions) -> Option<u32> {
    audit(m, opts).audited_e
}
