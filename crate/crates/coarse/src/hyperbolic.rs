//! Hyperbolicity constants of finite graphs.
//!
//! Two conventions are exposed.  The four-point constant is the least δ with
//! `(x|y)_w ≥ min{(x|z)_w, (y|z)_w} − δ` for all quadruples, computed as half
//! the gap between the two largest pair-sums.  The slim-triangle constant is
//! the least integer δ such that every side of every geodesic triangle lies
//! in the δ-neighbourhood of the union of the other two sides, with vertices
//! as the only points considered.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{CoarseError, Result};
use crate::graph::FiniteGraph;

/// Largest graph accepted by [`hyperbolicity_delta`].
pub const FOUR_POINT_LIMIT: usize = 256;

/// Largest graph accepted by [`slim_constant`].
pub const SLIM_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperbolicityReport {
    #[serde(with = "crate::rational")]
    pub four_point: Rational64,
    /// `None` when the graph exceeds [`SLIM_LIMIT`] and is not a tree.
    pub slim: Option<u32>,
}

fn table(g: &FiniteGraph) -> Vec<u32> {
    let n = g.len();
    let mut t = Vec::with_capacity(n * n);
    for u in 0..n {
        t.extend(g.distances_from(u));
    }
    t
}

/// Four-point hyperbolicity constant.  Trees return 0 without enumeration.
pub fn hyperbolicity_delta(g: &FiniteGraph) -> Result<Rational64> {
    if g.is_tree() && !g.has_exact_metric() {
        return Ok(Rational64::from_integer(0));
    }
    let n = g.len();
    if n > FOUR_POINT_LIMIT {
        return Err(CoarseError::TooLarge { vertices: n, limit: FOUR_POINT_LIMIT });
    }
    let d = table(g);
    let mut twice = 0u32;
    for x in 0..n {
        for y in x + 1..n {
            let dxy = d[x * n + y];
            for z in y + 1..n {
                let dxz = d[x * n + z];
                let dyz = d[y * n + z];
                for w in z + 1..n {
                    let s1 = dxy + d[z * n + w];
                    let s2 = dxz + d[y * n + w];
                    let s3 = d[x * n + w] + dyz;
                    let (hi, mid) = top_two(s1, s2, s3);
                    twice = twice.max(hi - mid);
                }
            }
        }
    }
    Ok(Rational64::new(twice as i64, 2))
}

fn top_two(a: u32, b: u32, c: u32) -> (u32, u32) {
    let mut v = [a, b, c];
    v.sort_unstable();
    (v[2], v[1])
}

/// Slim-triangle constant over vertex geodesics.  Trees return 0.
pub fn slim_constant(g: &FiniteGraph) -> Result<u32> {
    if g.is_tree() && !g.has_exact_metric() {
        return Ok(0);
    }
    let n = g.len();
    if n > SLIM_LIMIT {
        return Err(CoarseError::TooLarge { vertices: n, limit: SLIM_LIMIT });
    }
    let d = table(g);
    // far[(p * n + b) * n + a]: over geodesics from a to b, the largest
    // possible value of the distance from p to the nearest geodesic vertex.
    let mut far = vec![0u32; n * n * n];
    let mut order: Vec<usize> = (0..n).collect();
    for b in 0..n {
        order.sort_by_key(|&v| d[v * n + b]);
        for p in 0..n {
            let base = (p * n + b) * n;
            for &v in &order {
                let dpv = d[p * n + v];
                if v == b {
                    far[base + v] = dpv;
                    continue;
                }
                let dvb = d[v * n + b];
                let best = g
                    .neighbours(v)
                    .iter()
                    .map(|&w| w as usize)
                    .filter(|&w| d[w * n + b] + 1 == dvb)
                    .map(|w| far[base + w])
                    .max()
                    .unwrap_or(0);
                far[base + v] = dpv.min(best);
            }
        }
    }
    let mut slim = 0;
    for x in 0..n {
        for y in 0..n {
            let dxy = d[x * n + y];
            for p in 0..n {
                if d[x * n + p] + d[p * n + y] != dxy {
                    continue;
                }
                for z in 0..n {
                    let to_yz = far[(p * n + z) * n + y];
                    let to_xz = far[(p * n + z) * n + x];
                    slim = slim.max(to_yz.min(to_xz));
                }
            }
        }
    }
    Ok(slim)
}

/// Both constants, with the slim constant omitted on large non-trees.
pub fn hyperbolicity_report(g: &FiniteGraph) -> Result<HyperbolicityReport> {
    let four_point = hyperbolicity_delta(g)?;
    let slim = match slim_constant(g) {
        Ok(s) => Some(s),
        Err(CoarseError::TooLarge { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(HyperbolicityReport { four_point, slim })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_cycle() {
        let g = FiniteGraph::cycle(4).unwrap();
        assert_eq!(hyperbolicity_delta(&g).unwrap(), Rational64::from_integer(1));
        assert_eq!(slim_constant(&g).unwrap(), 1);
    }

    #[test]
    fn paths_are_zero() {
        let g = FiniteGraph::path(7).unwrap();
        assert_eq!(hyperbolicity_delta(&g).unwrap(), Rational64::from_integer(0));
        assert_eq!(slim_constant(&g).unwrap(), 0);
    }

    #[test]
    fn complete_graph() {
        let g = FiniteGraph::complete(5).unwrap();
        assert_eq!(hyperbolicity_delta(&g).unwrap(), Rational64::from_integer(0));
        assert_eq!(slim_constant(&g).unwrap(), 0);
    }

    #[test]
    fn odd_cycle_has_half_integer_delta() {
        let g = FiniteGraph::cycle(5).unwrap();
        assert_eq!(hyperbolicity_delta(&g).unwrap(), Rational64::new(1, 2));
    }
}
