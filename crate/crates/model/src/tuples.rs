//! Coordinate tuples, consistency, brute-force realisation and the
//! relative-projection estimates for orthogonal and far-apart domains.

use hhs_coarse::sets::{diameter_unchecked, distance_unchecked, VertexSet};
use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::model::HierarchicalModel;
use crate::relations::Relation;

/// One coordinate set per domain, indexed like the model's domains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinateTuple {
    pub entries: Vec<Option<VertexSet>>,
}

impl CoordinateTuple {
    /// The tuple `(π_U(x))_U` of an ambient point.
    pub fn of_point(m: &HierarchicalModel, x: usize) -> Self {
        CoordinateTuple { entries: m.coordinates_of(x).into_iter().map(Some).collect() }
    }

    fn total<'a>(&'a self, m: &HierarchicalModel) -> Result<Vec<&'a VertexSet>> {
        if self.entries.len() != m.domain_count() {
            return Err(ModelError::Malformed(format!(
                "tuple has {} entries for {} domains",
                self.entries.len(),
                m.domain_count()
            )));
        }
        self.entries
            .iter()
            .enumerate()
            .map(|(u, e)| {
                let s = e.as_ref().ok_or_else(|| ModelError::PartialTuple(m.domains().name(u).to_string()))?;
                s.validate(m.coord(u))?;
                Ok(s)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Consistency {
    /// Least `R` for which the tuple is `R`-consistent.
    pub worst: u32,
    pub witness: Option<String>,
}

impl Consistency {
    pub fn holds(&self, r: u32) -> bool {
        self.worst <= r
    }
}

/// Measures the consistency defect: entry diameters, the Behrstock pattern on
/// transverse pairs and the nested pattern on nested pairs.
pub fn tuple_consistency(m: &HierarchicalModel, t: &CoordinateTuple) -> Result<Consistency> {
    let b = t.total(m)?;
    let d = m.domains();
    let n = d.len();
    let name = |u: usize| d.name(u);
    let mut worst = 0;
    let mut witness = None;
    let mut bump = |v: u32, w: String| {
        if v > worst {
            worst = v;
            witness = Some(w);
        }
    };
    for (u, s) in b.iter().enumerate() {
        bump(diameter_unchecked(m.coord(u), s.members()), format!("entry on {} has large diameter", name(u)));
    }
    for v in 0..n {
        for w in 0..n {
            match d.relation(v, w) {
                Relation::Transverse if v < w => {
                    let (Some(rv), Some(rw)) = (m.rho_point(w, v), m.rho_point(v, w)) else { continue };
                    let a = distance_unchecked(m.coord(v), b[v].members(), rv.members());
                    let c = distance_unchecked(m.coord(w), b[w].members(), rw.members());
                    bump(a.min(c), format!("transverse pair {} and {}", name(v), name(w)));
                }
                Relation::NestedIn => {
                    // v ⊊ w
                    let (Some(r), Some(map)) = (m.rho_point(v, w), m.rho_map(w, v)) else { continue };
                    let a = distance_unchecked(m.coord(w), b[w].members(), r.members());
                    let mut all: Vec<u32> = b[v].members().to_vec();
                    for c in b[w].iter() {
                        all.extend_from_slice(map.image(c).members());
                    }
                    all.sort_unstable();
                    all.dedup();
                    let c = diameter_unchecked(m.coord(v), &all);
                    bump(a.min(c), format!("nested pair {} in {}", name(v), name(w)));
                }
                _ => {}
            }
        }
    }
    Ok(Consistency { worst, witness })
}

/// Whether `t` is `r`-consistent, with the worst violation.
pub fn is_consistent_tuple(m: &HierarchicalModel, t: &CoordinateTuple, r: u32) -> Result<(bool, Consistency)> {
    let c = tuple_consistency(m, t)?;
    Ok((c.holds(r), c))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realisation {
    pub point: usize,
    /// `max_V d_V(point, b_V)`.
    pub theta: u32,
}

/// Least-index ambient point minimising the largest coordinate distance to `t`.
pub fn realize_tuple(m: &HierarchicalModel, t: &CoordinateTuple, r: u32) -> Result<Realisation> {
    let c = tuple_consistency(m, t)?;
    if !c.holds(r) {
        return Err(ModelError::InconsistentTuple { r, detail: c.witness.unwrap_or_default() });
    }
    let b = t.total(m)?;
    let nx = m.ambient().len();
    let mut cost = vec![0u32; nx];
    for (u, s) in b.iter().enumerate() {
        let per_class = m.class_distances_to(u, s);
        for (x, slot) in cost.iter_mut().enumerate() {
            *slot = (*slot).max(per_class[m.class(u, x)]);
        }
    }
    let (point, theta) = cost.iter().enumerate().min_by_key(|&(x, &c)| (c, x)).map(|(x, &c)| (x, c)).expect("nonempty ambient");
    Ok(Realisation { point, theta })
}

/// `d_W(ρ^U_W, ρ^V_W)` for orthogonal `U`, `V`.
pub fn orthogonal_rho_proximity(m: &HierarchicalModel, u: usize, v: usize, w: usize) -> Result<u32> {
    let d = m.domains();
    for x in [u, v, w] {
        if x >= d.len() {
            return Err(ModelError::DomainIndex(x));
        }
    }
    if !d.is_orthogonal(u, v) {
        return Err(ModelError::Malformed(format!("{} and {} are not orthogonal", d.name(u), d.name(v))));
    }
    let undefined = |a: usize| ModelError::UndefinedRho { from: d.name(a).into(), to: d.name(w).into() };
    let a = m.rho_point(u, w).ok_or_else(|| undefined(u))?;
    let b = m.rho_point(v, w).ok_or_else(|| undefined(v))?;
    Ok(distance_unchecked(m.coord(w), a.members(), b.members()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransverseInference {
    /// The distance is at most 2E, so nothing follows.
    NoInference,
    /// The distance exceeds 2E and the stored relation is transversality.
    Confirmed,
    /// The distance exceeds 2E but the stored relation is something else.
    Contradiction(Relation),
}

impl TransverseInference {
    pub fn matches(self) -> bool {
        !matches!(self, TransverseInference::Contradiction(_))
    }
}

/// If `d_V(ρ^U_V, ρ^W_V) > 2E` then `U ⋔ W`; compares that with the stored relation.
pub fn infer_transverse(m: &HierarchicalModel, u: usize, v: usize, w: usize) -> Result<TransverseInference> {
    let d = m.domains();
    for x in [u, v, w] {
        if x >= d.len() {
            return Err(ModelError::DomainIndex(x));
        }
    }
    let undefined = |a: usize| ModelError::UndefinedRho { from: d.name(a).into(), to: d.name(v).into() };
    let a = m.rho_point(u, v).ok_or_else(|| undefined(u))?;
    let b = m.rho_point(w, v).ok_or_else(|| undefined(w))?;
    let dist = distance_unchecked(m.coord(v), a.members(), b.members());
    if dist <= 2 * m.e() {
        return Ok(TransverseInference::NoInference);
    }
    Ok(match d.relation(u, w) {
        Relation::Transverse => TransverseInference::Confirmed,
        other => TransverseInference::Contradiction(other),
    })
}
