//! Discrete (λ, λ)-quasigeodesics and their unparametrised counterparts.
//!
//! A vertex sequence `p_0, …, p_L` is a (λ, λ)-quasigeodesic when for all
//! `i < j`, `(j − i)/λ − λ ≤ d(p_i, p_j) ≤ λ(j − i) + λ`.  It is an
//! unparametrised one when some non-decreasing choice of real times
//! `t_0 ≤ … ≤ t_L` satisfies the same inequalities with `t_j − t_i` in place
//! of `j − i`.  Rewritten as bounds on `t_j − t_i` this is a system of
//! difference constraints, decided exactly by a negative-cycle search on
//! integers scaled to clear the denominators of λ.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{CoarseError, Result};
use crate::graph::FiniteGraph;

fn check_lambda(lambda: Rational64) -> Result<(i128, i128)> {
    if lambda < Rational64::from_integer(1) {
        return Err(CoarseError::BadLambda(lambda.to_string()));
    }
    Ok((*lambda.numer() as i128, *lambda.denom() as i128))
}

/// Whether a gap of `k` steps at distance `d` obeys the parametrised
/// (λ, λ)-inequalities, with λ = p/q.
fn gap_ok(p: i128, q: i128, k: i128, d: i128) -> bool {
    // d ≤ λk + λ  ⇔  qd ≤ pk + p;   k/λ − λ ≤ d  ⇔  kq² − p² ≤ dpq.
    q * d <= p * k + p && k * q * q - p * p <= d * p * q
}

/// Whether `points` is a (λ, λ)-quasigeodesic under its own indexing.
pub fn is_quasigeodesic(g: &FiniteGraph, points: &[usize], lambda: Rational64) -> Result<bool> {
    let (p, q) = check_lambda(lambda)?;
    for &v in points {
        g.check_vertex(v)?;
    }
    Ok(first_violation(g, points, p, q).is_none())
}

fn first_violation(g: &FiniteGraph, points: &[usize], p: i128, q: i128) -> Option<(usize, usize)> {
    for i in 0..points.len() {
        let row = g.distances_from(points[i]);
        for (j, &pj) in points.iter().enumerate().skip(i + 1) {
            if !gap_ok(p, q, (j - i) as i128, row[pj] as i128) {
                return Some((i, j));
            }
        }
    }
    None
}

/// A vertex sequence certified to be a (λ, λ)-quasigeodesic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscretePath {
    points: Vec<u32>,
    #[serde(with = "crate::rational")]
    lambda: Rational64,
}

impl DiscretePath {
    pub fn new(g: &FiniteGraph, points: Vec<usize>, lambda: Rational64) -> Result<Self> {
        let (p, q) = check_lambda(lambda)?;
        if points.is_empty() {
            return Err(CoarseError::EmptySet);
        }
        for &v in &points {
            g.check_vertex(v)?;
        }
        if let Some((i, j)) = first_violation(g, &points, p, q) {
            return Err(CoarseError::NotQuasigeodesic(format!(
                "indices {i} and {j} violate the ({lambda}, {lambda}) inequalities"
            )));
        }
        Ok(DiscretePath { points: points.into_iter().map(|v| v as u32).collect(), lambda })
    }

    pub fn points(&self) -> Vec<usize> {
        self.points.iter().map(|&v| v as usize).collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn lambda(&self) -> Rational64 {
        self.lambda
    }

    /// The contiguous piece `start..end`.  Quasigeodesics restrict to
    /// quasigeodesics with the same constant, so no re-validation occurs.
    pub fn subpath(&self, start: usize, end: usize) -> Option<DiscretePath> {
        if start >= end || end > self.points.len() {
            return None;
        }
        Some(DiscretePath { points: self.points[start..end].to_vec(), lambda: self.lambda })
    }
}

/// Feasibility of the reparametrisation constraints for a sequence of
/// `len` items whose pairwise distances are given by `dist(i, j)`.
pub fn reparametrisable(len: usize, dist: impl Fn(usize, usize) -> u32, lambda: Rational64) -> Result<bool> {
    let (p, q) = check_lambda(lambda)?;
    if len <= 1 {
        return Ok(true);
    }
    // Times are scaled by s = q²p so that every bound is an integer:
    //   t_j − t_i ≤ λd + λ²    becomes  ≤ p²dq + p³
    //   t_j − t_i ≥ d/λ − 1    becomes  ≥ dq³ − q²p
    //   t_{i+1} − t_i ≥ 0.
    const INF: i128 = i128::MAX / 4;
    let n = len;
    let mut w = vec![INF; n * n];
    for i in 0..n {
        w[i * n + i] = 0;
    }
    for i in 0..n {
        for j in i + 1..n {
            let d = dist(i, j) as i128;
            let upper = p * p * d * q + p * p * p;
            let lower = d * q * q * q - q * q * p;
            w[i * n + j] = w[i * n + j].min(upper);
            w[j * n + i] = w[j * n + i].min(-lower);
        }
        if i + 1 < n {
            w[(i + 1) * n + i] = w[(i + 1) * n + i].min(0);
        }
    }
    for k in 0..n {
        for i in 0..n {
            let wik = w[i * n + k];
            if wik >= INF {
                continue;
            }
            for j in 0..n {
                let wkj = w[k * n + j];
                if wkj < INF && wik + wkj < w[i * n + j] {
                    w[i * n + j] = wik + wkj;
                }
            }
        }
        if (0..n).any(|i| w[i * n + i] < 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether some monotone reparametrisation of `points` is a (λ, λ)-quasigeodesic.
pub fn is_unparametrized_quasigeodesic(g: &FiniteGraph, points: &[usize], lambda: Rational64) -> Result<bool> {
    for &v in points {
        g.check_vertex(v)?;
    }
    let rows: Vec<Vec<u32>> = points.iter().map(|&v| g.distances_from(v)).collect();
    reparametrisable(points.len(), |i, j| rows[i][points[j]], lambda)
}

/// The same test for a sequence of vertex sets, using set distance.
pub fn is_unparametrized_quasigeodesic_sets(g: &FiniteGraph, sets: &[&[u32]], lambda: Rational64) -> Result<bool> {
    for s in sets {
        if s.is_empty() {
            return Err(CoarseError::EmptySet);
        }
        for &v in *s {
            g.check_vertex(v as usize)?;
        }
    }
    let n = sets.len();
    let mut d = vec![0u32; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let v = crate::sets::distance_unchecked(g, sets[i], sets[j]);
            d[i * n + j] = v;
            d[j * n + i] = v;
        }
    }
    reparametrisable(n, |i, j| d[i * n + j], lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    #[test]
    fn constant_sequence() {
        let g = FiniteGraph::path(4).unwrap();
        assert!(is_unparametrized_quasigeodesic(&g, &[2, 2, 2, 2], r(1)).unwrap());
    }

    #[test]
    fn geodesic_sequence() {
        let g = FiniteGraph::path(6).unwrap();
        assert!(is_unparametrized_quasigeodesic(&g, &[0, 1, 2, 3, 4, 5], r(1)).unwrap());
        assert!(is_quasigeodesic(&g, &[0, 1, 2, 3, 4, 5], r(1)).unwrap());
    }

    #[test]
    fn long_backtrack_fails() {
        let g = FiniteGraph::path(20).unwrap();
        assert!(!is_unparametrized_quasigeodesic(&g, &[0, 10, 0], r(1)).unwrap());
        assert!(!is_unparametrized_quasigeodesic(&g, &[0, 5, 19, 5], r(2)).unwrap());
    }

    #[test]
    fn lambda_below_one_rejected() {
        let g = FiniteGraph::path(2).unwrap();
        assert!(matches!(is_quasigeodesic(&g, &[0], Rational64::new(1, 2)), Err(CoarseError::BadLambda(_))));
    }

    #[test]
    fn constructor_validates() {
        let g = FiniteGraph::path(10).unwrap();
        assert!(DiscretePath::new(&g, vec![0, 1, 2], r(1)).is_ok());
        assert!(DiscretePath::new(&g, vec![0, 9, 0], r(1)).is_err());
        let p = DiscretePath::new(&g, vec![0, 2, 4, 6], r(2)).unwrap();
        assert_eq!(p.subpath(1, 3).unwrap().points(), vec![2, 4]);
    }
}
