//! Partial realisation.
//!
//! For pairwise orthogonal `V_1, …, V_k` and `p_j ∈ π_{V_j}(X)` there must be a
//! point `z` with `d_{V_j}(z, p_j) ≤ E` and, for every `V` with `V_j ⊊ V` or
//! `V_j ⋔ V`, `d_V(z, ρ^{V_j}_V) ≤ E`.  Shrinking a family only drops
//! constraints, so maximal families suffice.

use std::collections::HashMap;

use super::{dn, pn, used_classes, witness, AuditOptions};
use crate::model::HierarchicalModel;
use crate::report::{AxiomEntry, Bound, Witness};

/// Enumerates mixed-radix indices, or a fixed-stride sample of them.
fn tuple_indices(sizes: &[usize], budget: usize) -> (Vec<Vec<usize>>, bool) {
    let total = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s)).unwrap_or(usize::MAX);
    let stride = if total <= budget.max(1) { 1 } else { total.div_ceil(budget.max(1)) };
    let mut out = Vec::new();
    let mut idx = 0usize;
    while idx < total {
        let mut rem = idx;
        let mut t = vec![0; sizes.len()];
        for j in (0..sizes.len()).rev() {
            t[j] = rem % sizes[j];
            rem /= sizes[j];
        }
        out.push(t);
        idx = match idx.checked_add(stride) {
            Some(i) => i,
            None => break,
        };
    }
    (out, stride == 1)
}

pub(crate) fn check(m: &HierarchicalModel, opts: &AuditOptions) -> AxiomEntry {
    let d = m.domains();
    let n = d.len();
    let nx = m.ambient().len();
    let prof = m.profiles();
    let mut best = 0u32;
    let mut wit: Option<Witness> = None;
    let mut partial = false;
    for fam in d.maximal_orthogonal_families() {
        // Combined distance to the required ρ sets, per domain and class.
        let mut rel: Vec<(usize, Vec<u32>)> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for v in 0..n {
            if m.coord(v).len() <= 1 {
                continue;
            }
            let mut comb: Option<Vec<u32>> = None;
            for &vj in &fam {
                if !(d.is_nested(vj, v) || d.is_transverse(vj, v)) {
                    continue;
                }
                let Some(r) = m.rho_point(vj, v) else { continue };
                let dd = m.class_distances_to(v, r);
                comb = Some(match comb {
                    None => dd,
                    Some(c) => c.into_iter().zip(dd).map(|(a, b)| a.max(b)).collect(),
                });
            }
            if let Some(c) = comb {
                slot[v] = rel.len();
                rel.push((v, c));
            }
        }
        let dom_val: Vec<u32> = rel.iter().map(|(v, c)| c[prof.domains[*v].dominant as usize]).collect();
        let mut by_dom: Vec<usize> = (0..rel.len()).collect();
        by_dom.sort_by_key(|&r| std::cmp::Reverse(dom_val[r]));

        // Least base cost per joint class tuple on the family.
        let mut tuples: HashMap<Vec<u32>, (u32, usize)> = HashMap::new();
        for x in 0..nx {
            let here = &prof.at_point[x];
            let mut base = 0;
            for &(v, c) in here {
                let r = slot[v as usize];
                if r != usize::MAX {
                    base = base.max(rel[r].1[c as usize]);
                }
            }
            for &r in &by_dom {
                if dom_val[r] <= base {
                    break;
                }
                let v = rel[r].0 as u32;
                if here.binary_search_by_key(&v, |&(w, _)| w).is_err() {
                    base = dom_val[r];
                    break;
                }
            }
            let key: Vec<u32> = fam.iter().map(|&vj| m.class(vj, x) as u32).collect();
            let entry = tuples.entry(key).or_insert((base, x));
            if base < entry.0 {
                *entry = (base, x);
            }
        }
        let mut sorted: Vec<(Vec<u32>, u32, usize)> = tuples.into_iter().map(|(k, (b, x))| (k, b, x)).collect();
        sorted.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        let lookup: HashMap<&[u32], (u32, usize)> = sorted.iter().map(|(k, b, x)| (k.as_slice(), (*b, *x))).collect();

        // Image vertices, class-to-vertex distances and containing classes.
        let mut images: Vec<Vec<usize>> = Vec::new();
        let mut dist: Vec<Vec<Vec<u32>>> = Vec::new();
        let mut containing: Vec<Vec<Vec<u32>>> = Vec::new();
        for &vj in &fam {
            let used = used_classes(m, vj);
            let classes = m.pi(vj).classes();
            let mut img: Vec<usize> = classes
                .iter()
                .enumerate()
                .filter(|(c, _)| used[*c])
                .flat_map(|(_, s)| s.iter())
                .collect();
            img.sort_unstable();
            img.dedup();
            let g = m.coord(vj);
            let rows: Vec<Vec<u32>> = classes
                .iter()
                .map(|s| {
                    let to = g.distances_to_set(&s.to_usizes());
                    img.iter().map(|&p| to[p]).collect()
                })
                .collect();
            let cont: Vec<Vec<u32>> = img
                .iter()
                .map(|&p| (0..classes.len()).filter(|&c| used[c] && classes[c].contains(p)).map(|c| c as u32).collect())
                .collect();
            images.push(img);
            dist.push(rows);
            containing.push(cont);
        }
        let sizes: Vec<usize> = images.iter().map(Vec::len).collect();
        let (indices, exhaustive) = tuple_indices(&sizes, opts.realisation_tuple_budget);
        partial |= !exhaustive;
        let k = fam.len();
        for p in indices {
            let mut cur = u32::MAX;
            let mut cur_x = 0usize;
            // Points whose projections contain every p_j cost only their base.
            let mut combo = vec![0usize; k];
            'combos: loop {
                let key: Vec<u32> = (0..k).map(|j| containing[j][p[j]][combo[j]]).collect();
                if let Some(&(b, x)) = lookup.get(key.as_slice()) {
                    if b < cur {
                        cur = b;
                        cur_x = x;
                    }
                }
                for j in 0..k {
                    combo[j] += 1;
                    if combo[j] < containing[j][p[j]].len() {
                        continue 'combos;
                    }
                    combo[j] = 0;
                }
                break;
            }
            if cur > best {
                for (key, base, x) in &sorted {
                    if *base >= cur {
                        break;
                    }
                    let mut val = *base;
                    for j in 0..k {
                        val = val.max(dist[j][key[j] as usize][p[j]]);
                        if val >= cur {
                            break;
                        }
                    }
                    if val < cur {
                        cur = val;
                        cur_x = *x;
                        if cur <= best {
                            break;
                        }
                    }
                }
            }
            if cur > best {
                best = cur;
                let coords: Vec<String> =
                    (0..k).map(|j| super::cn(m, fam[j], images[j][p[j]])).collect();
                let mut w = witness(
                    fam.iter().map(|&v| dn(m, v)).collect(),
                    vec![pn(m, cur_x)],
                    cur,
                    "best realising point for the coordinates",
                );
                w.coords = coords;
                wit = Some(w);
            }
        }
    }
    AxiomEntry::new("partial_realisation", Bound::Finite(best), m.e(), wit).with_partial(partial)
}
