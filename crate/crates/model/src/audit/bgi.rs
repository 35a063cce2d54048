//! Bounded geodesic image, in both forms.

use std::collections::{BTreeMap, HashMap, VecDeque};

use hhs_coarse::sets::diameter_unchecked;
use hhs_coarse::FiniteGraph;

use super::{dn, pn, witness};
use crate::model::{HierarchicalModel, ProjectionTable};
use crate::report::{AxiomEntry, Bound, Witness};

/// A geodesic in `𝒞U` that avoids `N_E(ρ^V_U)` but whose image under
/// `ρ^U_V` has diameter above `E`, returned as its two endpoints.
///
/// Such a geodesic exists exactly when two vertices `s`, `t` of one component
/// of the complement of the neighbourhood have the same distance inside the
/// component as in `𝒞U`, with `diam(ρ(s) ∪ ρ(t)) > E`: any two vertices of a
/// violating geodesic bound a violating subsegment.
fn violation(g: &FiniteGraph, gv: &FiniteGraph, map: &ProjectionTable, to_rho: &[u32], e: u32) -> Option<(usize, usize, u32)> {
    let n = g.len();
    let mut comp = vec![u32::MAX; n];
    let mut next = 0u32;
    for start in 0..n {
        if to_rho[start] <= e || comp[start] != u32::MAX {
            continue;
        }
        let mut members = vec![start];
        comp[start] = next;
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &y in g.neighbours(x) {
                let y = y as usize;
                if to_rho[y] > e && comp[y] == u32::MAX {
                    comp[y] = next;
                    members.push(y);
                }
            }
        }
        let mut image: Vec<u32> = members.iter().flat_map(|&x| map.image(x).members().iter().copied()).collect();
        image.sort_unstable();
        image.dedup();
        if diameter_unchecked(gv, &image) > e {
            if let Some(w) = exact_violation(g, gv, map, &comp, next, &members, e) {
                return Some(w);
            }
        }
        next += 1;
    }
    None
}

fn exact_violation(
    g: &FiniteGraph,
    gv: &FiniteGraph,
    map: &ProjectionTable,
    comp: &[u32],
    id: u32,
    members: &[usize],
    e: u32,
) -> Option<(usize, usize, u32)> {
    let mut inside = vec![u32::MAX; g.len()];
    let mut queue = VecDeque::new();
    for &s in members {
        let full = g.distances_from(s);
        for &t in members {
            inside[t] = u32::MAX;
        }
        inside[s] = 0;
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbours(x) {
                let y = y as usize;
                if comp[y] == id && inside[y] == u32::MAX {
                    inside[y] = inside[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        for &t in members {
            if t < s || inside[t] != full[t] {
                continue;
            }
            let mut all: Vec<u32> = map.image(s).members().iter().chain(map.image(t).members()).copied().collect();
            all.sort_unstable();
            all.dedup();
            let diam = diameter_unchecked(gv, &all);
            if diam > e {
                return Some((s, t, diam));
            }
        }
    }
    None
}

pub(crate) fn bgi(m: &HierarchicalModel) -> AxiomEntry {
    let d = m.domains();
    let mut best = 0;
    let mut wit: Option<Witness> = None;
    for u in 0..d.len() {
        let g = m.coord(u);
        if g.len() <= 1 {
            continue;
        }
        for v in d.below(u) {
            let (Some(rho), Some(map)) = (m.rho_point(v, u), m.rho_map(u, v)) else { continue };
            let to_rho = g.distances_to_set(&rho.to_usizes());
            let mut e = best;
            let mut found = None;
            while let Some(w) = violation(g, m.coord(v), map, &to_rho, e) {
                found = Some(w);
                e += 1;
            }
            if let Some((s, t, diam)) = found {
                best = e;
                wit = Some(witness(
                    vec![dn(m, u), dn(m, v)],
                    vec![],
                    e,
                    format!(
                        "geodesic from {} to {} avoids the {}-neighbourhood of ρ with image diameter {diam}",
                        g.label(s),
                        g.label(t),
                        e - 1
                    ),
                ));
            }
        }
    }
    AxiomEntry::new("bgi", Bound::Finite(best), m.e(), wit)
}

/// Largest distance to `target` along a worst geodesic from `p` to `q`.
struct FarFrom<'a> {
    g: &'a FiniteGraph,
    to_target: Vec<u32>,
    tree: bool,
    target: Vec<usize>,
    rows: HashMap<usize, Vec<u32>>,
}

impl<'a> FarFrom<'a> {
    fn new(g: &'a FiniteGraph, target: Vec<usize>) -> Self {
        let to_target = g.distances_to_set(&target);
        FarFrom { g, to_target, tree: g.is_tree(), target, rows: HashMap::new() }
    }

    fn far(&mut self, p: usize, q: usize) -> u32 {
        if self.tree {
            // The unique geodesic [p, q] is at distance (d(r,p) + d(r,q) - d(p,q)) / 2 from r.
            let g = self.g;
            let dpq = g.dist(p, q);
            return self.target.iter().map(|&r| (g.dist(r, p) + g.dist(r, q) - dpq) / 2).min().unwrap_or(0);
        }
        let (g, to_target) = (self.g, &self.to_target);
        let row = self.rows.entry(q).or_insert_with(|| {
            // F(v) = min(d(v, target), max over steps towards q of F(next)).
            let dq = g.distances_from(q);
            let mut order: Vec<usize> = (0..g.len()).collect();
            order.sort_by_key(|&v| dq[v]);
            let mut f = vec![0u32; g.len()];
            for v in order {
                let onward = g
                    .neighbours(v)
                    .iter()
                    .map(|&w| w as usize)
                    .filter(|&w| dq[w] + 1 == dq[v])
                    .map(|w| f[w])
                    .max();
                f[v] = match onward {
                    Some(o) => to_target[v].min(o),
                    None => to_target[v],
                };
            }
            f
        });
        row[p]
    }
}

/// For `V ⊊ U` and points `x`, `y`: either `d_V(x, y) ≤ E` or every geodesic
/// from `π_U(x)` to `π_U(y)` passes within `E` of `ρ^V_U`.
pub(crate) fn bgi_variant(m: &HierarchicalModel) -> AxiomEntry {
    let d = m.domains();
    let prof = m.profiles();
    let nx = m.ambient().len();
    let mut best = 0;
    let mut wit: Option<Witness> = None;
    for h in 0..d.len() {
        let gh = m.coord(h);
        if gh.len() <= 1 {
            continue;
        }
        for l in d.below(h) {
            let Some(rho) = m.rho_point(l, h) else { continue };
            // Joint classes (class in l, class in h) with a representative point.
            let mut joint: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            super::for_each_joint(m, l, h, |x, cl, ch| {
                joint.entry((cl, ch)).or_insert(x);
            });
            let dom_l = prof.domains[l].dominant as usize;
            if prof.domains[l].support.is_empty() || nx == 0 {
                continue;
            }
            let mut by_l: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
            for (&(cl, ch), &x) in &joint {
                by_l.entry(cl).or_default().push((ch, x));
            }
            let groups: Vec<(usize, Vec<(usize, usize)>)> = by_l.into_iter().collect();
            let mut far = FarFrom::new(gh, rho.to_usizes());
            let hclasses = m.pi(h).classes();
            for i in 0..groups.len() {
                for j in i..groups.len() {
                    let (c1, c2) = (groups[i].0, groups[j].0);
                    if c1 == dom_l && c2 == dom_l {
                        continue;
                    }
                    let dl = m.class_distance(l, c1, c2);
                    if dl <= best {
                        continue;
                    }
                    for &(h1, x) in &groups[i].1 {
                        for &(h2, y) in &groups[j].1 {
                            let mut worst = 0;
                            'outer: for p in hclasses[h1].iter() {
                                for q in hclasses[h2].iter() {
                                    worst = worst.max(far.far(p, q));
                                    if worst >= dl {
                                        break 'outer;
                                    }
                                }
                            }
                            let val = dl.min(worst);
                            if val > best {
                                best = val;
                                wit = Some(witness(
                                    vec![dn(m, l), dn(m, h)],
                                    vec![pn(m, x), pn(m, y)],
                                    val,
                                    format!("far in the smaller domain ({dl}) and a geodesic stays {worst} from ρ"),
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    AxiomEntry::new("bgi_variant", Bound::Finite(best), m.e(), wit)
}
