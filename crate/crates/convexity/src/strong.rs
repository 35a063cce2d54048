//! Strong quasiconvexity, swept over a family of two-segment candidate
//! paths.
//!
//! For members `x ≤ y` and a window point `w`, the candidate is a geodesic
//! from `x` to `w` followed by one from `w` to `y`, each built by walking away
//! from `w` and preferring the neighbour farthest from the set.  In a grid
//! this traces the sides of a box.  The gauge `Q(λ)` on a window is the
//! largest `d(w, Y)` over candidates that are (λ, λ)-quasigeodesics.

use hhs_coarse::Rational64;
use hhs_model::HierarchicalModel;
use serde::{Deserialize, Serialize};

use crate::coords::label;
use crate::error::Result;
use crate::frame::{Frame, WindowInfo};
use crate::gauge::{GaugeKind, GaugeTable};
use crate::metric::{Lam, Rows};
use crate::paths::{lambda_candidates, MAX_LAMBDA};
use crate::subset::SubsetSpec;
use crate::Budgets;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongReport {
    pub subset: String,
    pub window: WindowInfo,
    pub q: GaugeTable,
    pub passes: bool,
}

/// The candidate scales `λ ≤ 3` with `λ² ≤` the half radius.
///
/// A (λ, λ)-quasigeodesic may backtrack about `λ²/2` steps into any side
/// branch, so on a window too small to hold that detour every set appears to
/// grow.
pub fn default_lambdas(frame: &Frame) -> Vec<Rational64> {
    let half = Rational64::from_integer(frame.half() as i64);
    let fit: Vec<Rational64> = lambda_candidates().into_iter().filter(|l| l * l <= half).collect();
    if fit.is_empty() {
        vec![Rational64::from_integer(1)]
    } else {
        fit
    }
}

struct Window<'a> {
    m: &'a HierarchicalModel,
    members: Vec<usize>,
    member_rows: Vec<Vec<u32>>,
    allowed: Vec<bool>,
    to_set: Vec<u32>,
}

impl Window<'_> {
    /// Geodesic from `w` down the distance row `row`, farthest-from-set first.
    fn walk(&self, w: usize, row: &[u32]) -> Vec<usize> {
        let g = self.m.ambient();
        let mut out = vec![w];
        let mut cur = w;
        while row[cur] > 0 {
            cur = g
                .neighbours(cur)
                .iter()
                .map(|&v| v as usize)
                .filter(|&v| row[v] + 1 == row[cur])
                .max_by_key(|&v| (self.to_set[v], std::cmp::Reverse(v)))
                .expect("a distance row decreases along some edge");
            out.push(cur);
        }
        out
    }

    fn candidate(&self, w: usize, i: usize, j: usize) -> Vec<usize> {
        let mut path = self.walk(w, &self.member_rows[i]);
        path.reverse();
        path.extend(self.walk(w, &self.member_rows[j]).into_iter().skip(1));
        path
    }

    /// Whether the candidate is a (λ, λ)-quasigeodesic, `None` when the row
    /// budget ran out first.
    fn certify(&self, path: &[usize], iw: usize, i: usize, j: usize, lam: Lam, rows: &mut Rows<'_>) -> Option<bool> {
        let last = path.len() - 1;
        let (rx, ry) = (&self.member_rows[i], &self.member_rows[j]);
        for (t, &p) in path.iter().enumerate() {
            if !lam.lower_ok(rx[p], t) || !lam.lower_ok(ry[p], last - t) {
                return Some(false);
            }
        }
        let mut order: Vec<usize> = (0..path.len()).collect();
        order.sort_by_key(|&t| (t.abs_diff(iw), t));
        for &a in &order {
            for b in 0..path.len() {
                let gap = a.abs_diff(b);
                if !lam.binding(gap) {
                    continue;
                }
                if !lam.lower_ok(rows.dist(path[a], path[b])?, gap) {
                    return Some(false);
                }
            }
        }
        Some(true)
    }

    fn sweep(&self, lam: Lam, rows: &mut Rows<'_>) -> (u32, Option<String>, bool) {
        let mut partial = false;
        let mut far: Vec<usize> = (0..self.allowed.len()).filter(|&w| self.allowed[w] && self.to_set[w] > 0).collect();
        far.sort_by_key(|&w| (std::cmp::Reverse(self.to_set[w]), w));
        let k = self.members.len();
        for w in far {
            for i in 0..k {
                let dx = self.member_rows[i][w];
                for j in i..k {
                    let dy = self.member_rows[j][w];
                    let d = self.member_rows[i][self.members[j]];
                    if (dx + dy) as usize > lam.max_length(d) {
                        continue;
                    }
                    let path = self.candidate(w, i, j);
                    if path.iter().any(|&p| !self.allowed[p]) {
                        continue;
                    }
                    match self.certify(&path, dx as usize, i, j, lam, rows) {
                        Some(true) => {
                            let m = self.m;
                            let witness = format!("{} -> {} -> {}", label(m, self.members[i]), label(m, w), label(m, self.members[j]));
                            return (self.to_set[w], Some(witness), partial);
                        }
                        Some(false) => {}
                        None => partial = true,
                    }
                }
            }
        }
        (0, None, partial)
    }
}

/// `Q(λ)` on the half and full windows for each `λ ≤ 3`.
pub fn strong_sweep(m: &HierarchicalModel, s: &SubsetSpec, lambdas: &[Rational64], frame: &Frame, budgets: &Budgets) -> Result<StrongReport> {
    let members = s.members.to_usizes();
    let g = m.ambient();
    let windows: Vec<Option<Window<'_>>> = frame
        .scales()
        .iter()
        .map(|&r| {
            let sub = frame.restrict(&members, r);
            (!sub.is_empty()).then(|| Window {
                m,
                member_rows: sub.iter().map(|&x| g.distances_from(x)).collect(),
                to_set: g.distances_to_set(&sub),
                allowed: frame.within(r),
                members: sub,
            })
        })
        .collect();
    let mut raw = Vec::new();
    let mut partial = false;
    for &lambda in lambdas {
        let lam = Lam::new(lambda, MAX_LAMBDA)?;
        let mut values: [(u32, Option<String>); 2] = [(0, None), (0, None)];
        for (slot, win) in values.iter_mut().zip(&windows) {
            if let Some(win) = win {
                let mut rows = Rows::new(g, budgets.distance_rows);
                let (v, wit, p) = win.sweep(lam, &mut rows);
                *slot = (v, wit);
                partial |= p;
            }
        }
        let [(half, _), (full, wit)] = values;
        raw.push((lambda, half, full, wit));
    }
    let q = GaugeTable::new(GaugeKind::Q, frame, raw, partial);
    Ok(StrongReport { subset: s.name.clone(), window: frame.info(m), passes: q.bounded(), q })
}
