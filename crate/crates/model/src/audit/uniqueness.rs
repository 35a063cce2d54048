//! The uniqueness function `θ_u`.
//!
//! `θ_u(κ)` is the least `θ` such that `d(x, y) ≥ θ` forces `d_V(x, y) ≥ κ`
//! for some domain `V`, that is one more than the largest ambient distance
//! between two points that are `κ`-close in every domain.

use crate::model::HierarchicalModel;

/// Largest domain distance between `x` and `y`, stopping early at `cap`.
fn joint_distance(m: &HierarchicalModel, x: usize, y: usize, cap: u32) -> u32 {
    let prof = m.profiles();
    let (a, b) = (&prof.at_point[x], &prof.at_point[y]);
    let (mut i, mut j) = (0, 0);
    let mut best = 0;
    while best < cap {
        let (v, c1, c2) = match (a.get(i), b.get(j)) {
            (Some(&(va, ca)), Some(&(vb, cb))) => {
                if va < vb {
                    i += 1;
                    (va, ca, prof.domains[va as usize].dominant)
                } else if vb < va {
                    j += 1;
                    (vb, prof.domains[vb as usize].dominant, cb)
                } else {
                    i += 1;
                    j += 1;
                    (va, ca, cb)
                }
            }
            (Some(&(va, ca)), None) => {
                i += 1;
                (va, ca, prof.domains[va as usize].dominant)
            }
            (None, Some(&(vb, cb))) => {
                j += 1;
                (vb, prof.domains[vb as usize].dominant, cb)
            }
            (None, None) => break,
        };
        best = best.max(m.class_distance(v as usize, c1 as usize, c2 as usize));
    }
    best
}

/// `θ_u(κ)` for each requested `κ`, and whether the pair budget ran out.
pub fn uniqueness_thetas(m: &HierarchicalModel, kappas: &[u32], budget: usize) -> (Vec<(u32, u32)>, bool) {
    let Some(&kmax) = kappas.iter().max() else { return (Vec::new(), false) };
    let nx = m.ambient().len();
    // Largest ambient distance among pairs whose joint distance is exactly D < kmax.
    let mut by_level: Vec<Option<u32>> = vec![None; kmax as usize];
    if kmax > 0 && nx > 0 {
        by_level[0] = Some(0);
    }
    let mut pairs = 0usize;
    let mut partial = false;
    'outer: for x in 0..nx {
        let row = m.ambient().distances_from(x);
        for y in x + 1..nx {
            pairs += 1;
            if pairs > budget {
                partial = true;
                break 'outer;
            }
            let dd = joint_distance(m, x, y, kmax);
            if dd < kmax {
                let slot = &mut by_level[dd as usize];
                *slot = Some(slot.map_or(row[y], |s| s.max(row[y])));
            }
        }
    }
    let out = kappas
        .iter()
        .map(|&k| {
            let worst = by_level[..k as usize].iter().filter_map(|&v| v).max();
            (k, worst.map_or(0, |w| w + 1))
        })
        .collect();
    (out, partial)
}
