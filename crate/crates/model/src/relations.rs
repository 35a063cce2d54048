//! Domain sets with nesting and orthogonality, and their relational audit.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};

/// How an ordered pair of domains `(U, V)` relate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    /// `U ⊊ V`.
    NestedIn,
    /// `V ⊊ U`.
    Contains,
    Orthogonal,
    Transverse,
}

/// A finite index set of domains with declared strict nesting and orthogonality.
///
/// Nesting is stored exactly as declared; no closure is taken, so the audit
/// can report a non-transitive declaration.  Orthogonality is symmetrised on
/// construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DomainSetRepr", into = "DomainSetRepr")]
pub struct DomainSet {
    names: Vec<String>,
    nested: Vec<bool>,
    orth: Vec<bool>,
    up: Vec<Vec<u32>>,
    down: Vec<Vec<u32>>,
    orth_list: Vec<Vec<u32>>,
    containers: BTreeMap<(u32, u32), u32>,
    index: HashMap<String, u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DomainSetRepr {
    pub domains: Vec<String>,
    /// Pairs `[U, V]` meaning `U ⊊ V`.
    pub nesting: Vec<(String, String)>,
    pub orthogonal: Vec<(String, String)>,
    /// Triples `[T, U, W]`: `W` is the declared container for `U` inside `T`.
    #[serde(default)]
    pub containers: Vec<(String, String, String)>,
}

impl TryFrom<DomainSetRepr> for DomainSet {
    type Error = ModelError;
    fn try_from(r: DomainSetRepr) -> Result<Self> {
        let index: HashMap<&str, usize> = r.domains.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let look = |n: &str| index.get(n).copied().ok_or_else(|| ModelError::UnknownDomain(n.to_string()));
        let nesting = r.nesting.iter().map(|(a, b)| Ok((look(a)?, look(b)?))).collect::<Result<Vec<_>>>()?;
        let orth = r.orthogonal.iter().map(|(a, b)| Ok((look(a)?, look(b)?))).collect::<Result<Vec<_>>>()?;
        let cont = r.containers.iter().map(|(t, u, w)| Ok((look(t)?, look(u)?, look(w)?))).collect::<Result<Vec<_>>>()?;
        DomainSet::new(r.domains.clone(), &nesting, &orth, &cont)
    }
}

impl From<DomainSet> for DomainSetRepr {
    fn from(d: DomainSet) -> Self {
        let n = d.len();
        let mut nesting = Vec::new();
        let mut orthogonal = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if d.nested[u * n + v] {
                    nesting.push((d.names[u].clone(), d.names[v].clone()));
                }
                if u <= v && d.orth[u * n + v] {
                    orthogonal.push((d.names[u].clone(), d.names[v].clone()));
                }
            }
        }
        let containers = d
            .containers
            .iter()
            .map(|(&(t, u), &w)| (d.names[t as usize].clone(), d.names[u as usize].clone(), d.names[w as usize].clone()))
            .collect();
        DomainSetRepr { domains: d.names, nesting, orthogonal, containers }
    }
}

/// Adds every pair implied by transitivity to a list of strict nesting pairs.
pub fn close_nesting(n: usize, pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut reach = vec![false; n * n];
    for &(u, v) in pairs {
        reach[u * n + v] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i * n + k] {
                for j in 0..n {
                    if reach[k * n + j] {
                        reach[i * n + j] = true;
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if reach[u * n + v] {
                out.push((u, v));
            }
        }
    }
    out
}

impl DomainSet {
    pub fn new(
        names: Vec<String>,
        nesting: &[(usize, usize)],
        orthogonal: &[(usize, usize)],
        containers: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(ModelError::Malformed("domain set is empty".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(ModelError::Malformed(format!("invalid domain name `{name}`")));
            }
            if index.insert(name.clone(), i as u32).is_some() {
                return Err(ModelError::DuplicateDomain(name.clone()));
            }
        }
        let check = |i: usize| if i < n { Ok(()) } else { Err(ModelError::DomainIndex(i)) };
        let mut nested = vec![false; n * n];
        let mut orth = vec![false; n * n];
        for &(u, v) in nesting {
            check(u)?;
            check(v)?;
            nested[u * n + v] = true;
        }
        for &(u, v) in orthogonal {
            check(u)?;
            check(v)?;
            orth[u * n + v] = true;
            orth[v * n + u] = true;
        }
        let mut cmap = BTreeMap::new();
        for &(t, u, w) in containers {
            check(t)?;
            check(u)?;
            check(w)?;
            cmap.insert((t as u32, u as u32), w as u32);
        }
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        let mut orth_list = vec![Vec::new(); n];
        for u in 0..n {
            for v in 0..n {
                if nested[u * n + v] {
                    up[u].push(v as u32);
                    down[v].push(u as u32);
                }
                if orth[u * n + v] {
                    orth_list[u].push(v as u32);
                }
            }
        }
        Ok(DomainSet { names, nested, orth, up, down, orth_list, containers: cmap, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, u: usize) -> &str {
        &self.names[u]
    }

    pub fn id(&self, name: &str) -> Result<usize> {
        self.index.get(name).map(|&i| i as usize).ok_or_else(|| ModelError::UnknownDomain(name.to_string()))
    }

    /// Declared `u ⊊ v`.
    pub fn is_nested(&self, u: usize, v: usize) -> bool {
        self.nested[u * self.len() + v]
    }

    /// `u ⊑ v`.
    pub fn is_nested_or_equal(&self, u: usize, v: usize) -> bool {
        u == v || self.is_nested(u, v)
    }

    pub fn is_orthogonal(&self, u: usize, v: usize) -> bool {
        self.orth[u * self.len() + v]
    }

    pub fn relation(&self, u: usize, v: usize) -> Relation {
        if u == v {
            Relation::Equal
        } else if self.is_nested(u, v) {
            Relation::NestedIn
        } else if self.is_nested(v, u) {
            Relation::Contains
        } else if self.is_orthogonal(u, v) {
            Relation::Orthogonal
        } else {
            Relation::Transverse
        }
    }

    pub fn is_transverse(&self, u: usize, v: usize) -> bool {
        self.relation(u, v) == Relation::Transverse
    }

    /// Domains strictly containing `u`.
    pub fn above(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.up[u].iter().map(|&v| v as usize)
    }

    /// Domains strictly nested in `u`.
    pub fn below(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.down[u].iter().map(|&v| v as usize)
    }

    pub fn orthogonal_to(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.orth_list[u].iter().map(|&v| v as usize)
    }

    pub fn declared_container(&self, t: usize, u: usize) -> Option<usize> {
        self.containers.get(&(t as u32, u as u32)).map(|&w| w as usize)
    }

    /// The unique domain containing every other, if there is one.
    pub fn maximum(&self) -> Option<usize> {
        let n = self.len();
        let tops: Vec<usize> = (0..n).filter(|&u| self.up[u].is_empty()).collect();
        match tops.as_slice() {
            [s] if self.down[*s].len() == n - 1 => Some(*s),
            _ => None,
        }
    }

    /// Length of the longest ⊊-chain, or `None` if nesting has a cycle.
    pub fn complexity(&self) -> Option<usize> {
        let n = self.len();
        // Longest chain ending at each domain, by repeated relaxation in
        // topological order (Kahn's algorithm over the declared pairs).
        let mut indeg: Vec<usize> = (0..n).map(|u| self.down[u].len()).collect();
        let mut queue: Vec<usize> = (0..n).filter(|&u| indeg[u] == 0).collect();
        let mut depth = vec![1usize; n];
        let mut seen = 0;
        while let Some(u) = queue.pop() {
            seen += 1;
            for v in self.above(u) {
                depth[v] = depth[v].max(depth[u] + 1);
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push(v);
                }
            }
        }
        (seen == n).then(|| depth.into_iter().max().unwrap_or(0))
    }

    /// Maximal families of pairwise orthogonal domains, each sorted, in
    /// lexicographic order.  Domains orthogonal to nothing appear as singletons.
    pub fn maximal_orthogonal_families(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut out = Vec::new();
        let all: Vec<usize> = (0..n).collect();
        self.bron_kerbosch(Vec::new(), all, Vec::new(), &mut out);
        for c in &mut out {
            c.sort_unstable();
        }
        out.sort();
        out
    }

    fn bron_kerbosch(&self, r: Vec<usize>, mut p: Vec<usize>, mut x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r);
            }
            return;
        }
        let pivot = *p.iter().chain(x.iter()).max_by_key(|&&u| p.iter().filter(|&&v| self.is_orthogonal(u, v)).count()).expect("nonempty");
        let candidates: Vec<usize> = p.iter().copied().filter(|&v| !self.is_orthogonal(pivot, v)).collect();
        for v in candidates {
            let mut r2 = r.clone();
            r2.push(v);
            let p2 = p.iter().copied().filter(|&w| self.is_orthogonal(v, w)).collect();
            let x2 = x.iter().copied().filter(|&w| self.is_orthogonal(v, w)).collect();
            self.bron_kerbosch(r2, p2, x2, out);
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
}

/// Outcome of one relational clause.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseResult {
    pub clause: String,
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationAudit {
    pub clauses: Vec<ClauseResult>,
    pub complexity: Option<usize>,
}

impl RelationAudit {
    pub fn holds(&self) -> bool {
        self.clauses.iter().all(|c| c.holds)
    }

    pub fn first_failure(&self) -> Option<&ClauseResult> {
        self.clauses.iter().find(|c| !c.holds)
    }
}

fn clause(name: &str, witness: Option<String>) -> ClauseResult {
    ClauseResult { clause: name.to_string(), holds: witness.is_none(), witness }
}

/// Checks the relational axioms: partial order, unique maximum, orthogonality
/// closure and non-comparability, and the container clause.
pub fn audit_relations(d: &DomainSet) -> RelationAudit {
    let n = d.len();
    let nm = |u: usize| d.name(u).to_string();

    let irreflexive = (0..n).find(|&u| d.is_nested(u, u)).map(|u| format!("{} ⊊ {}", nm(u), nm(u)));
    let antisymmetric = (0..n)
        .flat_map(|u| d.above(u).map(move |v| (u, v)))
        .find(|&(u, v)| u != v && d.is_nested(v, u))
        .map(|(u, v)| format!("{} ⊊ {} and {} ⊊ {}", nm(u), nm(v), nm(v), nm(u)));
    let mut transitive = None;
    'outer: for u in 0..n {
        for v in d.above(u) {
            for w in d.above(v) {
                if w != u && !d.is_nested(u, w) {
                    transitive = Some(format!("{} ⊊ {} ⊊ {} but {} ⋢ {}", nm(u), nm(v), nm(w), nm(u), nm(w)));
                    break 'outer;
                }
            }
        }
    }
    let unique_max = match d.maximum() {
        Some(_) => None,
        None => {
            let tops: Vec<String> = (0..n).filter(|&u| d.up[u].is_empty()).map(nm).collect();
            Some(format!("⊑-maximal domains: [{}]", tops.join(", ")))
        }
    };
    let orth_irreflexive = (0..n).find(|&u| d.is_orthogonal(u, u)).map(|u| format!("{} ⊥ {}", nm(u), nm(u)));
    let mut closure = None;
    'outer2: for u in 0..n {
        for w in d.orthogonal_to(u) {
            for v in d.below(u) {
                if !d.is_orthogonal(v, w) {
                    closure = Some(format!("{} ⊑ {} and {} ⊥ {} but {} not ⊥ {}", nm(v), nm(u), nm(u), nm(w), nm(v), nm(w)));
                    break 'outer2;
                }
            }
        }
    }
    let comparable = (0..n)
        .flat_map(|u| d.orthogonal_to(u).map(move |v| (u, v)))
        .find(|&(u, v)| d.is_nested(u, v) || d.is_nested(v, u))
        .map(|(u, v)| format!("{} ⊥ {} but they are ⊑-comparable", nm(u), nm(v)));

    let mut container = None;
    'outer3: for t in 0..n {
        let in_t: Vec<usize> = std::iter::once(t).chain(d.below(t)).collect();
        for &u in &in_t {
            let orth_in_t: Vec<usize> = in_t.iter().copied().filter(|&v| d.is_orthogonal(u, v)).collect();
            if orth_in_t.is_empty() {
                continue;
            }
            let covers = |w: usize| d.is_nested(w, t) && orth_in_t.iter().all(|&v| d.is_nested_or_equal(v, w));
            let ok = match d.declared_container(t, u) {
                Some(w) => covers(w),
                None => d.below(t).any(covers),
            };
            if !ok {
                let what = match d.declared_container(t, u) {
                    Some(w) => format!("declared container {} for {} inside {} does not contain every domain orthogonal to {}", nm(w), nm(u), nm(t), nm(u)),
                    None => format!("no container for {} inside {}", nm(u), nm(t)),
                };
                container = Some(what);
                break 'outer3;
            }
        }
    }

    RelationAudit {
        clauses: vec![
            clause("nesting_irreflexive", irreflexive),
            clause("nesting_antisymmetric", antisymmetric),
            clause("nesting_transitive", transitive),
            clause("unique_maximum", unique_max),
            clause("orthogonality_irreflexive", orth_irreflexive),
            clause("orthogonality_closed_under_nesting", closure),
            clause("orthogonal_not_comparable", comparable),
            clause("container", container),
        ],
        complexity: d.complexity(),
    }
}
