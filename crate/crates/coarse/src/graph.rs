//! Finite connected graphs with a breadth-first (or explicitly supplied) metric.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{CoarseError, Result};

/// Distance value used for unreachable vertices inside BFS buffers.
pub const UNREACHABLE: u32 = u32::MAX;

/// Graphs up to this many vertices cache an all-pairs distance table on first use.
pub const APSP_CACHE_LIMIT: usize = 2048;

/// Exact metrics on graphs up to this size are validated with the full
/// triangle inequality; larger ones get the edge-Lipschitz check only.
const TRIANGLE_CHECK_LIMIT: usize = 400;

/// A finite connected simple graph.
///
/// Vertices are addressed by dense indices `0..n`; each carries an opaque
/// label used for interchange and reporting.  When `exact_metric` is present
/// it overrides the BFS metric.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct FiniteGraph {
    labels: Vec<String>,
    offsets: Vec<u32>,
    targets: Vec<u32>,
    exact_metric: Option<Vec<u32>>,
    index: OnceLock<HashMap<String, u32>>,
    apsp: OnceLock<Vec<u16>>,
}

/// Serialized form of a [`FiniteGraph`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphRepr {
    pub vertices: Vec<String>,
    pub edges: Vec<(u32, u32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_metric: Option<Vec<u32>>,
}

impl TryFrom<GraphRepr> for FiniteGraph {
    type Error = CoarseError;

    fn try_from(r: GraphRepr) -> Result<Self> {
        let edges: Vec<(usize, usize)> = r.edges.iter().map(|&(u, v)| (u as usize, v as usize)).collect();
        let g = FiniteGraph::new(r.vertices, &edges)?;
        match r.exact_metric {
            Some(m) => g.with_exact_metric(m),
            None => Ok(g),
        }
    }
}

impl From<FiniteGraph> for GraphRepr {
    fn from(g: FiniteGraph) -> Self {
        GraphRepr { vertices: g.labels.clone(), edges: g.edge_list(), exact_metric: g.exact_metric.clone() }
    }
}

impl PartialEq for FiniteGraph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.offsets == other.offsets
            && self.targets == other.targets
            && self.exact_metric == other.exact_metric
    }
}

impl Eq for FiniteGraph {}

fn valid_label(label: &str) -> bool {
    !label.is_empty() && !label.chars().any(char::is_whitespace)
}

impl FiniteGraph {
    /// Builds a graph from labels and an undirected edge list.  Duplicate
    /// edges are merged; the graph must be connected.
    pub fn new(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(CoarseError::EmptyGraph);
        }
        let mut seen = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if !valid_label(l) {
                return Err(CoarseError::InvalidLabel(l.clone()));
            }
            if seen.insert(l.clone(), i as u32).is_some() {
                return Err(CoarseError::DuplicateLabel(l.clone()));
            }
        }
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(CoarseError::UnknownVertex(u));
            }
            if v >= n {
                return Err(CoarseError::UnknownVertex(v));
            }
            if u == v {
                return Err(CoarseError::SelfLoop(u));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::new();
        offsets.push(0u32);
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            targets.extend_from_slice(list);
            offsets.push(targets.len() as u32);
        }
        let g = FiniteGraph {
            labels,
            offsets,
            targets,
            exact_metric: None,
            index: OnceLock::new(),
            apsp: OnceLock::new(),
        };
        let d = g.bfs(0);
        if let Some(v) = d.iter().position(|&x| x == UNREACHABLE) {
            return Err(CoarseError::Disconnected(g.labels[v].clone()));
        }
        let _ = g.index.set(seen);
        Ok(g)
    }

    /// Builds a graph whose labels are the decimal indices `0..n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    /// Attaches an exact metric (row-major `n × n`).  The table must be a
    /// metric that agrees with adjacency: distance 1 exactly on edges.
    pub fn with_exact_metric(mut self, metric: Vec<u32>) -> Result<Self> {
        let n = self.len();
        if metric.len() != n * n {
            return Err(CoarseError::MetricMismatch(format!("expected {} entries, got {}", n * n, metric.len())));
        }
        for u in 0..n {
            if metric[u * n + u] != 0 {
                return Err(CoarseError::MetricMismatch(format!("d({0},{0}) is not zero", self.labels[u])));
            }
            let nbrs = self.neighbours(u);
            for v in 0..n {
                let d = metric[u * n + v];
                if d != metric[v * n + u] {
                    return Err(CoarseError::MetricMismatch(format!(
                        "asymmetric at ({}, {})",
                        self.labels[u], self.labels[v]
                    )));
                }
                if u != v && d == 0 {
                    return Err(CoarseError::MetricMismatch(format!(
                        "zero distance between distinct vertices {} and {}",
                        self.labels[u], self.labels[v]
                    )));
                }
                let adjacent = nbrs.binary_search(&(v as u32)).is_ok();
                if adjacent != (d == 1) {
                    return Err(CoarseError::MetricMismatch(format!(
                        "distance {} between {} and {} disagrees with adjacency",
                        d, self.labels[u], self.labels[v]
                    )));
                }
            }
        }
        if n <= TRIANGLE_CHECK_LIMIT {
            for u in 0..n {
                for v in 0..n {
                    let duv = metric[u * n + v];
                    for w in 0..n {
                        if metric[u * n + w] > duv + metric[v * n + w] {
                            return Err(CoarseError::MetricMismatch(format!(
                                "triangle inequality fails at ({}, {}, {})",
                                self.labels[u], self.labels[v], self.labels[w]
                            )));
                        }
                    }
                }
            }
        } else {
            for u in 0..n {
                for &v in self.neighbours(u) {
                    let v = v as usize;
                    for w in 0..n {
                        if metric[u * n + w].abs_diff(metric[v * n + w]) > 1 {
                            return Err(CoarseError::MetricMismatch(format!(
                                "edge ({}, {}) changes the distance to {} by more than one",
                                self.labels[u], self.labels[v], self.labels[w]
                            )));
                        }
                    }
                }
            }
        }
        self.exact_metric = Some(metric);
        self.apsp = OnceLock::new();
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn has_exact_metric(&self) -> bool {
        self.exact_metric.is_some()
    }

    pub fn exact_metric(&self) -> Option<&[u32]> {
        self.exact_metric.as_deref()
    }

    /// Looks a vertex up by label.
    pub fn vertex(&self, label: &str) -> Result<usize> {
        let index = self.index.get_or_init(|| {
            self.labels.iter().enumerate().map(|(i, l)| (l.clone(), i as u32)).collect()
        });
        index.get(label).map(|&i| i as usize).ok_or_else(|| CoarseError::UnknownLabel(label.to_string()))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.len() {
            Ok(())
        } else {
            Err(CoarseError::UnknownVertex(v))
        }
    }

    pub fn neighbours(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    pub fn is_edge(&self, u: usize, v: usize) -> bool {
        self.neighbours(u).binary_search(&(v as u32)).is_ok()
    }

    /// Undirected edges as sorted pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edge_list(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.len() {
            for &v in self.neighbours(u) {
                if (u as u32) < v {
                    out.push((u as u32, v));
                }
            }
        }
        out
    }

    /// Breadth-first distances from one source along the adjacency.
    pub fn bfs(&self, source: usize) -> Vec<u32> {
        self.bfs_multi(&[source])
    }

    /// Breadth-first distances to the nearest of several sources.
    pub fn bfs_multi(&self, sources: &[usize]) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.len()];
        let mut queue = VecDeque::with_capacity(self.len());
        for &s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s as u32);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize] + 1;
            for &v in self.neighbours(u as usize) {
                if dist[v as usize] == UNREACHABLE {
                    dist[v as usize] = du;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Distances from `source` to every vertex, honouring the exact metric.
    pub fn distances_from(&self, source: usize) -> Vec<u32> {
        let n = self.len();
        if let Some(m) = &self.exact_metric {
            return m[source * n..(source + 1) * n].to_vec();
        }
        if let Some(t) = self.apsp_table() {
            return t[source * n..(source + 1) * n].iter().map(|&d| d as u32).collect();
        }
        self.bfs(source)
    }

    /// Distance from each vertex to the nearest member of `sources`.
    pub fn distances_to_set(&self, sources: &[usize]) -> Vec<u32> {
        if self.exact_metric.is_none() {
            return self.bfs_multi(sources);
        }
        let mut best = vec![UNREACHABLE; self.len()];
        for &s in sources {
            for (b, d) in best.iter_mut().zip(self.distances_from(s)) {
                *b = (*b).min(d);
            }
        }
        best
    }

    fn apsp_table(&self) -> Option<&Vec<u16>> {
        let n = self.len();
        if n > APSP_CACHE_LIMIT {
            return None;
        }
        Some(self.apsp.get_or_init(|| {
            let mut t = vec![0u16; n * n];
            for s in 0..n {
                let row = match &self.exact_metric {
                    Some(m) => m[s * n..(s + 1) * n].to_vec(),
                    None => self.bfs(s),
                };
                for (slot, d) in t[s * n..(s + 1) * n].iter_mut().zip(row) {
                    *slot = d as u16;
                }
            }
            t
        }))
    }

    /// Whether distance queries are answered from a stored table.
    pub fn has_fast_metric(&self) -> bool {
        self.exact_metric.is_some() || self.len() <= APSP_CACHE_LIMIT
    }

    /// Distance between two vertices (exact metric if present, else BFS).
    pub fn distance(&self, u: usize, v: usize) -> Result<u32> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.dist(u, v))
    }

    /// Unchecked distance.  Panics on out-of-range vertices.
    pub fn dist(&self, u: usize, v: usize) -> u32 {
        let n = self.len();
        if let Some(m) = &self.exact_metric {
            return m[u * n + v];
        }
        if let Some(t) = self.apsp_table() {
            return t[u * n + v] as u32;
        }
        self.bfs(u)[v]
    }

    /// Largest distance between two vertices.
    pub fn diameter(&self) -> u32 {
        (0..self.len()).map(|u| self.distances_from(u).into_iter().max().unwrap_or(0)).max().unwrap_or(0)
    }

    /// Whether the graph is a tree (connected with `n - 1` edges).
    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.len()
    }

    /// Vertices lying on some geodesic from `u` to `v` (the metric interval).
    pub fn interval(&self, u: usize, v: usize) -> Vec<usize> {
        let du = self.distances_from(u);
        let dv = self.distances_from(v);
        let d = du[v];
        (0..self.len()).filter(|&w| du[w] + dv[w] == d).collect()
    }

    /// One geodesic from `u` to `v`, choosing the least-index neighbour at each step.
    pub fn geodesic(&self, u: usize, v: usize) -> Vec<usize> {
        let dv = self.distances_from(v);
        let mut path = vec![u];
        let mut cur = u;
        while cur != v {
            let next = self
                .neighbours(cur)
                .iter()
                .map(|&w| w as usize)
                .find(|&w| dv[w] + 1 == dv[cur])
                .expect("connected graph has a descending neighbour");
            path.push(next);
            cur = next;
        }
        path
    }

    // --- standard families -------------------------------------------------

    /// Path graph `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    /// Cycle graph on `n ≥ 3` vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Self::from_edges(n, &edges)
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::from_edges(n, &edges)
    }

    /// The box `[-r, r]²` of the square lattice, labelled `x,y`.
    pub fn grid_box(r: i64) -> Result<Self> {
        let side = (2 * r + 1) as usize;
        let id = |x: i64, y: i64| ((x + r) as usize) * side + (y + r) as usize;
        let mut labels = Vec::with_capacity(side * side);
        let mut edges = Vec::new();
        for x in -r..=r {
            for y in -r..=r {
                labels.push(format!("{x},{y}"));
                if x < r {
                    edges.push((id(x, y), id(x + 1, y)));
                }
                if y < r {
                    edges.push((id(x, y), id(x, y + 1)));
                }
            }
        }
        Self::new(labels, &edges)
    }

    /// The ℓ¹ ball `|x| + |y| ≤ r` of the square lattice, labelled `x,y`.
    pub fn grid_ball(r: i64) -> Result<Self> {
        let mut coords = Vec::new();
        for x in -r..=r {
            for y in -r..=r {
                if x.abs() + y.abs() <= r {
                    coords.push((x, y));
                }
            }
        }
        let index: HashMap<(i64, i64), usize> = coords.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut edges = Vec::new();
        for (i, &(x, y)) in coords.iter().enumerate() {
            for nb in [(x + 1, y), (x, y + 1)] {
                if let Some(&j) = index.get(&nb) {
                    edges.push((i, j));
                }
            }
        }
        Self::new(coords.iter().map(|(x, y)| format!("{x},{y}")).collect(), &edges)
    }
}
