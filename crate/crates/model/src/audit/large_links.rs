//! Large links.
//!
//! For `z, z'` with `N = d_U(z, z')`, the domains `T ⊊ U` with
//! `d_T(z, z') ≥ E` must all nest into at most `⌊E·N + E⌋` domains
//! `T_i ⊊ U` with `d_U(π_U(z), ρ^{T_i}_U) ≤ E·N + E`.

use std::collections::HashMap;

use super::{dn, pn, projection_spread, witness, AuditOptions};
use crate::model::HierarchicalModel;
use crate::report::{AxiomEntry, Bound, Witness};

enum Outcome {
    Pass,
    Fail(Witness),
    OverBudget,
}

struct Ctx<'a> {
    m: &'a HierarchicalModel,
    u: usize,
    subs: Vec<usize>,
    /// Position of a domain in `subs`, if nested in `u`.
    slot: Vec<Option<usize>>,
    spread: Vec<u32>,
    /// Per sub-domain, distance from each class of `u` to its `ρ` in `𝒞U`.
    rho_dist: Vec<Vec<u32>>,
    /// Per sub-domain, the sub-domains it contains (itself included), as slots.
    covers: Vec<Vec<usize>>,
    budget: usize,
}

type Signature = (u32, Vec<(u32, u32)>);

impl<'a> Ctx<'a> {
    fn new(m: &'a HierarchicalModel, u: usize, spread: &[u32], budget: usize) -> Self {
        let d = m.domains();
        let subs: Vec<usize> = d.below(u).collect();
        let mut slot = vec![None; d.len()];
        for (i, &t) in subs.iter().enumerate() {
            slot[t] = Some(i);
        }
        let rho_dist = subs
            .iter()
            .map(|&t| m.rho_point(t, u).map(|r| m.class_distances_to(u, r)).unwrap_or_else(|| vec![u32::MAX; m.pi(u).class_count()]))
            .collect();
        let covers = subs
            .iter()
            .map(|&c| subs.iter().enumerate().filter(|(_, &t)| d.is_nested_or_equal(t, c)).map(|(i, _)| i).collect())
            .collect();
        let spread = subs.iter().map(|&t| spread[t]).collect();
        Ctx { m, u, subs, slot, spread, rho_dist, covers, budget }
    }

    fn signatures(&self) -> Vec<(Signature, usize)> {
        let m = self.m;
        let prof = m.profiles();
        let mut seen: HashMap<Signature, usize> = HashMap::new();
        let mut out = Vec::new();
        for x in 0..m.ambient().len() {
            let parts: Vec<(u32, u32)> = prof.at_point[x]
                .iter()
                .filter_map(|&(t, c)| self.slot[t as usize].map(|s| (s as u32, c)))
                .collect();
            let sig = (m.class(self.u, x) as u32, parts);
            if !seen.contains_key(&sig) {
                seen.insert(sig.clone(), x);
                out.push((sig, x));
            }
        }
        out
    }

    /// Whether `targets` can be covered by at most `limit` of `candidates`.
    fn coverable(&self, targets: &[usize], candidates: &[usize], limit: usize) -> bool {
        let k = targets.len();
        let pos: HashMap<usize, usize> = targets.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let sets: Vec<Vec<usize>> = candidates
            .iter()
            .map(|&c| self.covers[c].iter().filter_map(|t| pos.get(t).copied()).collect())
            .collect();
        let mut covered = vec![false; k];
        let mut left = k;
        let mut used = 0;
        while left > 0 && used <= limit {
            let best = sets
                .iter()
                .enumerate()
                .map(|(i, s)| (s.iter().filter(|&&t| !covered[t]).count(), std::cmp::Reverse(i)))
                .max();
            match best {
                Some((gain, std::cmp::Reverse(i))) if gain > 0 => {
                    for &t in &sets[i] {
                        if !covered[t] {
                            covered[t] = true;
                            left -= 1;
                        }
                    }
                    used += 1;
                }
                _ => return false,
            }
        }
        if used <= limit && left == 0 {
            return true;
        }
        let mut covered = vec![0u32; k];
        let mut nodes = 0usize;
        exact_cover(&sets, &mut covered, limit, &mut nodes)
    }

    fn check_at(&self, e: u32, shortcut: bool) -> Outcome {
        let m = self.m;
        let far: Vec<usize> = (0..self.subs.len()).filter(|&i| self.spread[i] >= e).collect();
        if far.is_empty() {
            return Outcome::Pass;
        }
        if shortcut {
            let good: Vec<usize> = (0..self.subs.len())
                .filter(|&i| self.rho_dist[i].iter().all(|&dd| dd <= e))
                .collect();
            if self.coverable(&far, &good, e as usize) {
                return Outcome::Pass;
            }
        }
        let prof = m.profiles();
        let dom: Vec<u32> = self.subs.iter().map(|&t| prof.domains[t].dominant).collect();
        let sigs = self.signatures();
        let mut pairs = 0usize;
        for (a, (s1, x1)) in sigs.iter().enumerate() {
            for (b, (s2, x2)) in sigs.iter().enumerate() {
                if a == b {
                    continue;
                }
                pairs += 1;
                if pairs > self.budget {
                    return Outcome::OverBudget;
                }
                let big = self.big_set(&s1.1, &s2.1, &dom, e);
                if big.is_empty() {
                    continue;
                }
                let n_dist = m.class_distance(self.u, s1.0 as usize, s2.0 as usize) as u64;
                let allowance = (e as u64) * n_dist + e as u64;
                let c1 = s1.0 as usize;
                let candidates: Vec<usize> = (0..self.subs.len())
                    .filter(|&c| (self.rho_dist[c][c1] as u64) <= allowance)
                    .filter(|&c| big.iter().any(|t| self.covers[c].contains(t)))
                    .collect();
                let limit = allowance.min(usize::MAX as u64 / 2) as usize;
                if !self.coverable(&big, &candidates, limit) {
                    let names: Vec<String> = big.iter().map(|&t| dn(m, self.subs[t])).collect();
                    let mut domains = vec![dn(m, self.u)];
                    domains.extend(names);
                    return Outcome::Fail(witness(
                        domains,
                        vec![pn(m, *x1), pn(m, *x2)],
                        e,
                        format!(
                            "{} domains far apart at distance {n_dist} in the top domain, not coverable by {allowance} admissible domains",
                            big.len()
                        ),
                    ));
                }
            }
        }
        Outcome::Pass
    }

    /// Sub-domain slots where the two signatures are at least `e` apart.
    fn big_set(&self, a: &[(u32, u32)], b: &[(u32, u32)], dom: &[u32], e: u32) -> Vec<usize> {
        let m = self.m;
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        loop {
            let (t, c1, c2) = match (a.get(i), b.get(j)) {
                (Some(&(ta, ca)), Some(&(tb, cb))) => {
                    if ta < tb {
                        i += 1;
                        (ta, ca, dom[ta as usize])
                    } else if tb < ta {
                        j += 1;
                        (tb, dom[tb as usize], cb)
                    } else {
                        i += 1;
                        j += 1;
                        (ta, ca, cb)
                    }
                }
                (Some(&(ta, ca)), None) => {
                    i += 1;
                    (ta, ca, dom[ta as usize])
                }
                (None, Some(&(tb, cb))) => {
                    j += 1;
                    (tb, dom[tb as usize], cb)
                }
                (None, None) => break,
            };
            let t = t as usize;
            if self.spread[t] >= e && m.class_distance(self.subs[t], c1 as usize, c2 as usize) >= e {
                out.push(t);
            }
        }
        out
    }
}

const EXACT_COVER_NODES: usize = 200_000;

fn exact_cover(sets: &[Vec<usize>], covered: &mut [u32], limit: usize, nodes: &mut usize) -> bool {
    let Some(first) = covered.iter().position(|&c| c == 0) else { return true };
    if limit == 0 || *nodes > EXACT_COVER_NODES {
        return false;
    }
    *nodes += 1;
    for s in sets.iter().filter(|s| s.contains(&first)) {
        for &t in s {
            covered[t] += 1;
        }
        let ok = exact_cover(sets, covered, limit - 1, nodes);
        for &t in s {
            covered[t] -= 1;
        }
        if ok {
            return true;
        }
    }
    false
}

pub(crate) fn check(m: &HierarchicalModel, opts: &AuditOptions) -> AxiomEntry {
    let n = m.domain_count();
    let spread: Vec<u32> = (0..n).map(|u| projection_spread(m, u)).collect();
    let mut best = 0;
    let mut wit = None;
    let mut partial = false;
    for u in 0..n {
        if m.domains().below(u).next().is_none() {
            continue;
        }
        let ctx = Ctx::new(m, u, &spread, opts.large_links_pair_budget);
        let cap = ctx.spread.iter().copied().max().unwrap_or(0) + 1;
        let mut e = best.max(1);
        while e < cap {
            match ctx.check_at(e, true) {
                Outcome::Pass => break,
                Outcome::Fail(w) => {
                    wit = Some(w);
                    e += 1;
                }
                Outcome::OverBudget => {
                    partial = true;
                    break;
                }
            }
        }
        if e > best {
            best = e;
        }
    }
    AxiomEntry::new("large_links", Bound::Finite(best), m.e(), wit).with_partial(partial)
}
