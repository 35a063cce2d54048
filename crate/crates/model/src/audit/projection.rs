//! Projection clause: bounded images, coarse Lipschitz control and
//! quasiconvex image, folded into one constant.

use hhs_coarse::convex::quasiconvexity_constant_budget;
use hhs_coarse::sets::{diameter_unchecked, union_diameter_unchecked, VertexSet};

use super::{dn, pn, used_classes, witness, AuditOptions};
use crate::model::HierarchicalModel;
use crate::report::{AxiomEntry, Bound, Witness};

pub(crate) fn check(m: &HierarchicalModel, opts: &AuditOptions) -> AxiomEntry {
    let mut parts = [0u32; 3];
    let mut wits: [Option<Witness>; 3] = [None, None, None];
    let mut partial = false;
    let prof = m.profiles();
    for u in 0..m.domain_count() {
        let g = m.coord(u);
        let table = m.pi(u);
        let used = used_classes(m, u);
        let classes = table.classes();
        let members = m.class_members(u);

        for (c, cls) in classes.iter().enumerate() {
            if !used[c] {
                continue;
            }
            let d = diameter_unchecked(g, cls.members());
            if d > parts[0] {
                parts[0] = d;
                let x = members[c][0] as usize;
                wits[0] = Some(witness(vec![dn(m, u)], vec![pn(m, x)], d, "diameter of a projection"));
            }
        }

        // diam(π(x) ∪ π(y)) ≤ E·d(x, y) + E needs E ≥ ⌈D / (d + 1)⌉.  Pairs
        // within one class are covered by the diameter term.
        let dominant = prof.domains[u].dominant as usize;
        for c in 0..classes.len() {
            if !used[c] || c == dominant {
                continue;
            }
            let unions: Vec<u32> = (0..classes.len())
                .map(|c2| {
                    if used[c2] && c2 != c {
                        union_diameter_unchecked(g, classes[c].members(), classes[c2].members())
                    } else {
                        0
                    }
                })
                .collect();
            if unions.iter().all(|&dd| dd <= parts[1]) {
                continue;
            }
            let sources: Vec<usize> = members[c].iter().map(|&x| x as usize).collect();
            let to_c = m.ambient().distances_to_set(&sources);
            let mut nearest = vec![(u32::MAX, 0usize); classes.len()];
            for (x, &cx) in table.class_indices().iter().enumerate() {
                let slot = &mut nearest[cx as usize];
                if to_c[x] < slot.0 {
                    *slot = (to_c[x], x);
                }
            }
            for c2 in 0..classes.len() {
                if !used[c2] || c2 == c {
                    continue;
                }
                let (dx, y) = nearest[c2];
                let value = unions[c2].div_ceil(dx + 1);
                if value > parts[1] {
                    parts[1] = value;
                    wits[1] = Some(witness(
                        vec![dn(m, u)],
                        vec![pn(m, sources[0]), pn(m, y)],
                        value,
                        format!("projections {} apart in a union of diameter {} at ambient distance {dx}", value, unions[c2]),
                    ));
                }
            }
        }

        let image: Vec<u32> = classes
            .iter()
            .enumerate()
            .filter(|(c, _)| used[*c])
            .flat_map(|(_, s)| s.members().iter().copied())
            .collect();
        let image = VertexSet::new(image).expect("a nonempty model has a nonempty image");
        match quasiconvexity_constant_budget(g, &image, opts.qc_pair_budget) {
            Ok(q) => {
                partial |= !q.exhaustive;
                if q.constant > parts[2] {
                    parts[2] = q.constant;
                    let detail = match q.witness {
                        Some((a, b, w)) => format!(
                            "vertex {} on a geodesic from {} to {} is far from the image",
                            g.label(w as usize),
                            g.label(a as usize),
                            g.label(b as usize)
                        ),
                        None => "image not quasiconvex".to_string(),
                    };
                    wits[2] = Some(witness(vec![dn(m, u)], vec![], q.constant, detail));
                }
            }
            Err(_) => partial = true,
        }
    }
    let best = parts.iter().copied().max().unwrap_or(0);
    let which = parts.iter().position(|&p| p == best).unwrap_or(0);
    AxiomEntry::new("projection", Bound::Finite(best), m.e(), wits[which].take())
        .with_partial(partial)
        .with_note(format!("diameter {} lipschitz {} quasiconvexity {}", parts[0], parts[1], parts[2]))
}
