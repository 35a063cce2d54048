//! Ambient distances on demand and the (λ, λ) inequalities in integers.

use std::collections::HashMap;

use hhs_coarse::{FiniteGraph, Rational64};

use crate::error::{ConvexityError, Result};

/// Distance rows of a graph, tabulated when the graph keeps its own table and
/// otherwise filled by breadth-first search up to a row budget.
pub(crate) struct Rows<'g> {
    g: &'g FiniteGraph,
    cache: HashMap<usize, Vec<u32>>,
    limit: usize,
    pub(crate) exhausted: bool,
}

impl<'g> Rows<'g> {
    pub(crate) fn new(g: &'g FiniteGraph, limit: usize) -> Self {
        Rows { g, cache: HashMap::new(), limit, exhausted: false }
    }

    pub(crate) fn dist(&mut self, u: usize, v: usize) -> Option<u32> {
        if self.g.has_fast_metric() {
            return Some(self.g.dist(u, v));
        }
        if let Some(r) = self.cache.get(&u) {
            return Some(r[v]);
        }
        if let Some(r) = self.cache.get(&v) {
            return Some(r[u]);
        }
        if self.cache.len() >= self.limit {
            self.exhausted = true;
            return None;
        }
        let row = self.g.bfs(u);
        let d = row[v];
        self.cache.insert(u, row);
        Some(d)
    }
}

/// `λ = p/q` with `λ ≥ 1`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Lam {
    p: i64,
    q: i64,
}

impl Lam {
    pub(crate) fn new(lambda: Rational64, max: i64) -> Result<Self> {
        if lambda < Rational64::from_integer(1) || lambda > Rational64::from_integer(max) {
            return Err(ConvexityError::Invalid(format!("λ = {lambda} lies outside [1, {max}]")));
        }
        Ok(Lam { p: *lambda.numer(), q: *lambda.denom() })
    }

    /// `⌊λd + λ²⌋`, the longest (λ, λ)-quasigeodesic between points at distance `d`.
    pub(crate) fn max_length(self, d: u32) -> usize {
        ((self.p * self.q * d as i64 + self.p * self.p) / (self.q * self.q)) as usize
    }

    /// Whether index gap `gap` can violate the lower inequality at all.
    pub(crate) fn binding(self, gap: usize) -> bool {
        gap as i64 * self.q * self.q > self.p * self.p
    }

    /// `d ≥ gap/λ − λ`.
    pub(crate) fn lower_ok(self, d: u32, gap: usize) -> bool {
        d as i64 * self.p * self.q >= gap as i64 * self.q * self.q - self.p * self.p
    }
}
