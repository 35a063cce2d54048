//! Behrstock inequality, nested consistency and the composition clause.

use std::collections::HashMap;

use hhs_coarse::sets::{diameter_unchecked, distance_unchecked};

use super::{dn, for_each_joint, pn, witness};
use crate::model::HierarchicalModel;
use crate::report::{AxiomEntry, Bound, Witness};

pub(crate) fn behrstock(m: &HierarchicalModel) -> AxiomEntry {
    let d = m.domains();
    let n = d.len();
    let mut best = 0;
    let mut wit: Option<Witness> = None;
    for u in 0..n {
        for v in u + 1..n {
            if !d.is_transverse(u, v) {
                continue;
            }
            let (Some(ru), Some(rv)) = (m.rho_point(v, u), m.rho_point(u, v)) else { continue };
            let du = m.class_distances_to(u, ru);
            let dv = m.class_distances_to(v, rv);
            let cap = du.iter().max().copied().unwrap_or(0).min(dv.iter().max().copied().unwrap_or(0));
            if cap <= best {
                continue;
            }
            for_each_joint(m, u, v, |x, cu, cv| {
                let val = du[cu].min(dv[cv]);
                if val > best {
                    best = val;
                    wit = Some(witness(vec![dn(m, u), dn(m, v)], vec![pn(m, x)], val, "both projections far from ρ"));
                }
            });
        }
    }
    AxiomEntry::new("behrstock", Bound::Finite(best), m.e(), wit)
}

pub(crate) fn nested_consistency(m: &HierarchicalModel) -> AxiomEntry {
    let d = m.domains();
    let mut best = 0;
    let mut wit: Option<Witness> = None;
    for u in 0..d.len() {
        for v in d.below(u) {
            let (Some(rho), Some(map)) = (m.rho_point(v, u), m.rho_map(u, v)) else { continue };
            let a = m.class_distances_to(u, rho);
            if a.iter().all(|&x| x <= best) {
                continue;
            }
            let gv = m.coord(v);
            let pu = m.pi(u).classes();
            let pv = m.pi(v).classes();
            let mut images: HashMap<usize, Vec<u32>> = HashMap::new();
            let mut memo: HashMap<(usize, usize), u32> = HashMap::new();
            for_each_joint(m, u, v, |x, cu, cv| {
                if a[cu] <= best {
                    return;
                }
                let diam = *memo.entry((cu, cv)).or_insert_with(|| {
                    let img = images.entry(cu).or_insert_with(|| {
                        let mut all: Vec<u32> = pu[cu].iter().flat_map(|c| map.image(c).members().iter().copied()).collect();
                        all.sort_unstable();
                        all.dedup();
                        all
                    });
                    let mut all: Vec<u32> = img.iter().chain(pv[cv].members()).copied().collect();
                    all.sort_unstable();
                    all.dedup();
                    diameter_unchecked(gv, &all)
                });
                let val = a[cu].min(diam);
                if val > best {
                    best = val;
                    wit = Some(witness(
                        vec![dn(m, u), dn(m, v)],
                        vec![pn(m, x)],
                        val,
                        format!("far from ρ in the larger domain and projections disagree by {diam}"),
                    ));
                }
            });
        }
    }
    AxiomEntry::new("nested_consistency", Bound::Finite(best), m.e(), wit)
}

/// For `U ⊑ V`, `ρ^U_W` and `ρ^V_W` are close whenever `V ⊊ W`, or `V ⋔ W`
/// with `W` not orthogonal to `U`.
pub(crate) fn rho_composition(m: &HierarchicalModel) -> AxiomEntry {
    let d = m.domains();
    let n = d.len();
    let mut best = 0;
    let mut wit = None;
    for u in 0..n {
        for v in d.above(u) {
            for w in 0..n {
                if w == u || w == v {
                    continue;
                }
                let applies = d.is_nested(v, w) || (d.is_transverse(v, w) && !d.is_orthogonal(u, w));
                if !applies {
                    continue;
                }
                let (Some(a), Some(b)) = (m.rho_point(u, w), m.rho_point(v, w)) else { continue };
                let dist = distance_unchecked(m.coord(w), a.members(), b.members());
                if dist > best {
                    best = dist;
                    wit = Some(witness(vec![dn(m, u), dn(m, v), dn(m, w)], vec![], dist, "ρ of nested domains disagree"));
                }
            }
        }
    }
    AxiomEntry::new("rho_composition", Bound::Finite(best), m.e(), wit)
}
