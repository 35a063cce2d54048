//! Hierarchy paths: ambient (λ, λ)-quasigeodesics whose every coordinate
//! shadow is an unparametrised (λ, λ)-quasigeodesic, found by depth-first
//! search over simple edge paths.

use std::collections::BTreeSet;

use hhs_coarse::quasigeodesic::is_unparametrized_quasigeodesic_sets;
use hhs_coarse::{is_quasigeodesic, Rational64};
use hhs_model::HierarchicalModel;
use serde::{Deserialize, Serialize};

use crate::coords::label;
use crate::error::{ConvexityError, Result};
use crate::frame::{Frame, WindowInfo};
use crate::gauge::{GaugeKind, GaugeTable};
use crate::metric::{Lam, Rows};
use crate::subset::SubsetSpec;
use crate::Budgets;

/// Paths are only searched for λ up to this value.
pub const MAX_LAMBDA: i64 = 3;

/// Candidate values tried when measuring `λ₀`.
pub fn lambda_candidates() -> Vec<Rational64> {
    [(1, 1), (3, 2), (2, 1), (5, 2), (3, 1)].iter().map(|&(p, q)| Rational64::new(p, q)).collect()
}

/// Default scales of the path gauge, `λ = 1` and `λ = 3/2`.  At `λ = 2` a
/// path may already climb six steps up a line and come back, more than half
/// of the windows the zoo can afford.
pub fn default_path_lambdas() -> Vec<Rational64> {
    vec![Rational64::from_integer(1), Rational64::new(3, 2)]
}

/// Domains on which a sequence of points moves, that is, meets more than one
/// projection class.
fn moving_domains(m: &HierarchicalModel, points: &[usize]) -> BTreeSet<usize> {
    let at = &m.profiles().at_point;
    let mut out = BTreeSet::new();
    for &p in points {
        out.extend(at[p].iter().map(|&(u, _)| u as usize));
    }
    out.retain(|&u| points.windows(2).any(|w| m.class(u, w[0]) != m.class(u, w[1])));
    out
}

/// Whether the shadow of `points` in `𝒞U` is an unparametrised (λ, λ)-quasigeodesic.
fn shadow_ok(m: &HierarchicalModel, u: usize, points: &[usize], lambda: Rational64) -> Result<bool> {
    let mut classes: Vec<usize> = Vec::with_capacity(points.len());
    for &p in points {
        let c = m.class(u, p);
        if classes.last() != Some(&c) {
            classes.push(c);
        }
    }
    if classes.len() <= 2 {
        return Ok(true);
    }
    let table = m.pi(u).classes();
    let sets: Vec<&[u32]> = classes.iter().map(|&c| table[c].members()).collect();
    Ok(is_unparametrized_quasigeodesic_sets(m.coord(u), &sets, lambda)?)
}

/// Whether a sequence of ambient vertices is a λ-hierarchy path.  Consecutive
/// points must be equal or adjacent.
pub fn is_hierarchy_path(m: &HierarchicalModel, points: &[usize], lambda: Rational64) -> Result<bool> {
    let g = m.ambient();
    for &p in points {
        g.check_vertex(p)?;
    }
    if points.windows(2).any(|w| w[0] != w[1] && !g.is_edge(w[0], w[1])) {
        return Ok(false);
    }
    if !is_quasigeodesic(g, points, lambda)? {
        return Ok(false);
    }
    for u in moving_domains(m, points) {
        if !shadow_ok(m, u, points, lambda)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) enum Visit {
    Continue,
    Stop,
}

/// Depth-first search over simple edge paths from `x` to `y` that stay
/// (λ, λ)-quasigeodesic with hierarchy-path shadows at every prefix.
pub(crate) struct PathSearch<'m> {
    m: &'m HierarchicalModel,
    lambda: Rational64,
    lam: Lam,
    rows: Rows<'m>,
    budget: usize,
    pub(crate) expansions: usize,
    pub(crate) partial: bool,
}

impl<'m> PathSearch<'m> {
    pub(crate) fn new(m: &'m HierarchicalModel, lambda: Rational64, budget: usize, rows: usize) -> Result<Self> {
        Ok(PathSearch {
            m,
            lambda,
            lam: Lam::new(lambda, MAX_LAMBDA)?,
            rows: Rows::new(m.ambient(), rows),
            budget,
            expansions: 0,
            partial: false,
        })
    }

    pub(crate) fn reset_budget(&mut self, budget: usize) {
        self.budget = budget;
        self.expansions = 0;
    }

    /// Runs the search.  Neighbours are tried by increasing `key`, then by
    /// vertex id.  Vertices with `allowed[v] == false` are never entered.
    pub(crate) fn run(
        &mut self,
        x: usize,
        y: usize,
        allowed: Option<&[bool]>,
        key: &dyn Fn(usize) -> i64,
        visit: &mut dyn FnMut(&[usize]) -> Visit,
    ) -> Result<()> {
        let g = self.m.ambient();
        g.check_vertex(x)?;
        g.check_vertex(y)?;
        let to_y = g.distances_from(y);
        let lmax = self.lam.max_length(to_y[x]);
        let mut path = vec![x];
        let mut on_path = vec![false; g.len()];
        on_path[x] = true;
        self.dfs(y, &to_y, lmax, allowed, key, visit, &mut path, &mut on_path)?;
        if self.rows.exhausted {
            self.partial = true;
        }
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &mut self,
        y: usize,
        to_y: &[u32],
        lmax: usize,
        allowed: Option<&[bool]>,
        key: &dyn Fn(usize) -> i64,
        visit: &mut dyn FnMut(&[usize]) -> Visit,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
    ) -> Result<Visit> {
        let v = *path.last().expect("path starts at x");
        if v == y {
            return Ok(visit(path));
        }
        if self.expansions >= self.budget {
            self.partial = true;
            return Ok(Visit::Stop);
        }
        self.expansions += 1;
        let j = path.len();
        let mut next: Vec<usize> = self
            .m
            .ambient()
            .neighbours(v)
            .iter()
            .map(|&w| w as usize)
            .filter(|&w| !on_path[w] && allowed.is_none_or(|a| a[w]) && j + to_y[w] as usize <= lmax)
            .collect();
        next.sort_by_key(|&w| (key(w), w));
        for w in next {
            if !self.ambient_ok(path, w) {
                continue;
            }
            path.push(w);
            on_path[w] = true;
            let keep = self.shadows_ok(path)?;
            let outcome = if keep { self.dfs(y, to_y, lmax, allowed, key, visit, path, on_path)? } else { Visit::Continue };
            path.pop();
            on_path[w] = false;
            if let Visit::Stop = outcome {
                return Ok(Visit::Stop);
            }
        }
        Ok(Visit::Continue)
    }

    fn ambient_ok(&mut self, path: &[usize], w: usize) -> bool {
        let j = path.len();
        for (i, &p) in path.iter().enumerate() {
            if !self.lam.binding(j - i) {
                break;
            }
            match self.rows.dist(p, w) {
                Some(d) if self.lam.lower_ok(d, j - i) => {}
                _ => return false,
            }
        }
        true
    }

    /// Checks the domains in which the last step changes class.
    fn shadows_ok(&self, path: &[usize]) -> Result<bool> {
        let (w, prev) = (path[path.len() - 1], path[path.len() - 2]);
        let at = &self.m.profiles().at_point;
        let mut domains: Vec<usize> = at[w].iter().chain(&at[prev]).map(|&(u, _)| u as usize).collect();
        domains.sort_unstable();
        domains.dedup();
        for u in domains {
            if self.m.class(u, w) != self.m.class(u, prev) && !shadow_ok(self.m, u, path, self.lambda)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSet {
    pub paths: Vec<Vec<usize>>,
    /// The expansion budget ran out; more paths may exist.
    pub partial: bool,
    pub expansions: usize,
}

/// All λ-hierarchy paths from `x` to `y` along simple edge paths, up to an
/// expansion budget.
pub fn enumerate_hierarchy_paths(m: &HierarchicalModel, x: usize, y: usize, lambda: Rational64, budget: usize) -> Result<PathSet> {
    let mut search = PathSearch::new(m, lambda, budget, Budgets::default().distance_rows)?;
    let mut paths = Vec::new();
    search.run(x, y, None, &|_| 0, &mut |p| {
        paths.push(p.to_vec());
        Visit::Continue
    })?;
    Ok(PathSet { paths, partial: search.partial, expansions: search.expansions })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lambda0Attempt {
    #[serde(with = "hhs_coarse::rational")]
    pub lambda: Rational64,
    pub connected: usize,
    pub pairs: usize,
    pub partial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lambda0Report {
    /// Least candidate connecting every sampled pair.
    #[serde(with = "option_rational")]
    pub lambda0: Option<Rational64>,
    pub attempts: Vec<Lambda0Attempt>,
}

mod option_rational {
    use hhs_coarse::Rational64;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational64>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational64>, D::Error> {
        let text: Option<String> = Option::deserialize(d)?;
        text.map(|t| hhs_coarse::rational::parse(&t).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{t}`"))))
            .transpose()
    }
}

/// The least `λ` among [`lambda_candidates`] for which every sampled pair is
/// joined by a λ-hierarchy path.  The search heads towards the target first.
pub fn measure_lambda0(m: &HierarchicalModel, pairs: &[(usize, usize)], budget: usize) -> Result<Lambda0Report> {
    let mut attempts = Vec::new();
    let mut lambda0 = None;
    for lambda in lambda_candidates() {
        let mut search = PathSearch::new(m, lambda, budget, Budgets::default().distance_rows)?;
        let (mut connected, mut partial) = (0, false);
        for &(x, y) in pairs {
            search.reset_budget(budget);
            search.partial = false;
            let to_y = m.ambient().distances_from(y);
            let mut found = false;
            search.run(x, y, None, &|w| to_y[w] as i64, &mut |_| {
                found = true;
                Visit::Stop
            })?;
            connected += found as usize;
            partial |= !found && search.partial;
        }
        attempts.push(Lambda0Attempt { lambda, connected, pairs: pairs.len(), partial });
        if connected == pairs.len() {
            lambda0 = Some(lambda);
            break;
        }
    }
    Ok(Lambda0Report { lambda0, attempts })
}

/// Member pairs `x < y`, thinned by a fixed stride to at most `limit`.
pub(crate) fn sampled_pairs(members: &[usize], limit: usize) -> Vec<(usize, usize)> {
    let n = members.len();
    let total = n * n.saturating_sub(1) / 2;
    let stride = total.div_ceil(limit.max(1)).max(1);
    let mut out = Vec::new();
    let mut index = 0;
    for i in 0..n {
        for j in i + 1..n {
            if index % stride == 0 {
                out.push((members[i], members[j]));
            }
            index += 1;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathGaugeReport {
    pub subset: String,
    pub window: WindowInfo,
    pub lambda: GaugeTable,
    pub passes: bool,
}

/// `Λ(λ)`: the farthest any λ-hierarchy path between members strays from the
/// set, on the half and full windows.  Each pair's search tries the neighbour
/// farthest from the set first and keeps inside the window.
pub fn hqc_via_paths(m: &HierarchicalModel, s: &SubsetSpec, lambdas: &[Rational64], frame: &Frame, budgets: &Budgets) -> Result<PathGaugeReport> {
    let members = s.members.to_usizes();
    let mut raw = Vec::new();
    let mut partial = false;
    for &lambda in lambdas {
        let mut values: [(u32, Option<String>); 2] = [(0, None), (0, None)];
        for (slot, r) in values.iter_mut().zip(frame.scales()) {
            let sub = frame.restrict(&members, r);
            if sub.is_empty() {
                continue;
            }
            let allowed = frame.within(r);
            let to_s = m.ambient().distances_to_set(&sub);
            let mut search = PathSearch::new(m, lambda, budgets.path_expansions, budgets.distance_rows)?;
            let lam = Lam::new(lambda, MAX_LAMBDA)?;
            for (x, y) in sampled_pairs(&sub, budgets.path_pairs) {
                let ceiling = (lam.max_length(m.ambient().dist(x, y)) / 2) as u32;
                if ceiling <= slot.0 {
                    continue;
                }
                search.reset_budget(budgets.path_expansions);
                let mut best = slot.clone();
                search.run(x, y, Some(&allowed), &|w| -(to_s[w] as i64), &mut |p| {
                    let (far, at) = p.iter().map(|&v| (to_s[v], v)).max_by_key(|&(d, v)| (d, std::cmp::Reverse(v))).expect("nonempty path");
                    if far > best.0 {
                        best = (far, Some(label(m, at)));
                    }
                    if best.0 >= ceiling {
                        Visit::Stop
                    } else {
                        Visit::Continue
                    }
                })?;
                *slot = best;
            }
            partial |= search.partial;
        }
        raw.push((lambda, values[0].0, values[1].0, values[1].1.clone()));
    }
    let table = GaugeTable::new(GaugeKind::Lambda, frame, raw, partial);
    Ok(PathGaugeReport { subset: s.name.clone(), window: frame.info(m), passes: table.bounded(), lambda: table })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullReport {
    pub members: Vec<usize>,
    pub iterations: usize,
    pub contains_seed: bool,
    pub partial: bool,
}

impl HullReport {
    pub fn to_subset(&self, m: &HierarchicalModel, name: &str) -> Result<SubsetSpec> {
        SubsetSpec::new(m, name, crate::subset::Provenance::Arbitrary, self.members.iter().copied())
    }
}

/// `P^n_λ(Z)`: `n` rounds of replacing a set by the union of all λ-hierarchy
/// paths between its members.
pub fn hull(m: &HierarchicalModel, z: &SubsetSpec, lambda: Rational64, n: usize, budgets: &Budgets) -> Result<HullReport> {
    if n == 0 {
        return Err(ConvexityError::Invalid("hull needs at least one round".into()));
    }
    let mut current: BTreeSet<usize> = z.members.iter().collect();
    let mut partial = false;
    for _ in 0..n {
        let members: Vec<usize> = current.iter().copied().collect();
        let mut next = current.clone();
        let mut search = PathSearch::new(m, lambda, budgets.path_expansions, budgets.distance_rows)?;
        let pairs = sampled_pairs(&members, budgets.path_pairs);
        partial |= pairs.len() < members.len() * members.len().saturating_sub(1) / 2;
        for (x, y) in pairs {
            search.reset_budget(budgets.path_expansions);
            search.run(x, y, None, &|_| 0, &mut |p| {
                next.extend(p.iter().copied());
                Visit::Continue
            })?;
        }
        partial |= search.partial;
        if next == current {
            break;
        }
        current = next;
    }
    let members: Vec<usize> = current.into_iter().collect();
    let contains_seed = z.members.iter().all(|v| members.binary_search(&v).is_ok());
    Ok(HullReport { members, iterations: n, contains_seed, partial })
}
