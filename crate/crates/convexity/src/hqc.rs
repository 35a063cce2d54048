//! Hierarchical quasiconvexity through the realisation gauge.
//!
//! A set `Y` is hierarchically quasiconvex when every projection `π_U(Y)` is
//! quasiconvex and every point whose coordinates all lie within `R` of those
//! projections lies within `κ(R)` of `Y`.

use hhs_coarse::{quasiconvexity_constant_budget, Rational64};
use hhs_model::HierarchicalModel;
use serde::{Deserialize, Serialize};

use crate::coords::{coordinate_defects, image, label};
use crate::error::Result;
use crate::frame::{Frame, WindowInfo};
use crate::gauge::{GaugeKind, GaugeTable};
use crate::subset::SubsetSpec;
use crate::Budgets;

/// Largest quasiconvexity constant among the coordinate projections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionTrend {
    pub half: u32,
    pub full: u32,
    pub worst_domain: Option<String>,
    pub unbounded: bool,
    pub exhaustive: bool,
}

/// The worst point of one sub-window at a fixed coordinate tolerance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealisationWitness {
    pub radius: u32,
    pub point: String,
    /// `max_U d_U(x, Y)`.
    pub defect: u32,
    /// `d(x, Y)`.
    pub distance: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum HqcFailure {
    Projection { domain: String },
    Realisation {
        #[serde(with = "hhs_coarse::rational")]
        tolerance: Rational64,
        point: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HqcReport {
    pub subset: String,
    pub members: usize,
    pub window: WindowInfo,
    pub projections: ProjectionTrend,
    pub kappa: GaugeTable,
    /// For a failing tolerance, the worst point of every sub-window.
    pub witness_family: Vec<RealisationWitness>,
    pub passes: bool,
    pub failure: Option<HqcFailure>,
}

pub(crate) struct KappaWindow {
    /// Per tolerance: value and the point attaining it.
    pub values: Vec<(u32, Option<usize>)>,
    pub defects: Vec<(u32, u32)>,
}

/// `κ_r(R) = max { d(x, Y_r) : level(x) ≤ r, max_U d_U(x, Y_r) ≤ R }` for every
/// tolerance, with `Y_r` the members in the sub-window.
pub(crate) fn kappa_window(m: &HierarchicalModel, frame: &Frame, members: &[usize], r: u32, tolerances: &[u32]) -> KappaWindow {
    let sub = frame.restrict(members, r);
    let mut values = vec![(0u32, None); tolerances.len()];
    if sub.is_empty() {
        return KappaWindow { values, defects: Vec::new() };
    }
    let defects = coordinate_defects(m, &sub);
    let to_set = m.ambient().distances_to_set(&sub);
    for x in 0..m.ambient().len() {
        if frame.level(x) > r {
            continue;
        }
        for (slot, &tol) in values.iter_mut().zip(tolerances) {
            if defects[x].0 <= tol && to_set[x] > slot.0 {
                *slot = (to_set[x], Some(x));
            }
        }
    }
    KappaWindow { values, defects }
}

fn projection_qc(m: &HierarchicalModel, members: &[usize], budget: usize) -> Result<(u32, Option<usize>, bool)> {
    let mut worst = (0u32, None, true);
    if members.is_empty() {
        return Ok(worst);
    }
    for u in 0..m.domain_count() {
        let img = image(m, u, members).expect("nonempty set has an image");
        let qc = quasiconvexity_constant_budget(m.coord(u), &img, budget)?;
        worst.2 &= qc.exhaustive;
        if qc.constant > worst.0 {
            worst.0 = qc.constant;
            worst.1 = Some(u);
        }
    }
    Ok(worst)
}

/// Measures both halves of the definition on the full window and on the
/// half-radius sub-window.  A gauge that grows between the two is reported
/// as unbounded, with the worst point of every sub-window as witness family.
pub fn hqc_check(m: &HierarchicalModel, s: &SubsetSpec, tolerances: &[u32], frame: &Frame, budgets: &Budgets) -> Result<HqcReport> {
    let members = s.members.to_usizes();
    let [half_r, full_r] = frame.scales();

    let (qc_half, _, ex_half) = projection_qc(m, &frame.restrict(&members, half_r), budgets.qc_pairs)?;
    let (qc_full, qc_domain, ex_full) = projection_qc(m, &members, budgets.qc_pairs)?;
    let projections = ProjectionTrend {
        half: qc_half,
        full: qc_full,
        worst_domain: qc_domain.map(|u| m.domains().name(u).to_string()),
        unbounded: frame.grows(qc_half, qc_full),
        exhaustive: ex_half && ex_full,
    };

    let half = kappa_window(m, frame, &members, half_r, tolerances);
    let full = kappa_window(m, frame, &members, full_r, tolerances);
    let raw = tolerances
        .iter()
        .enumerate()
        .map(|(i, &t)| (Rational64::from_integer(t as i64), half.values[i].0, full.values[i].0, full.values[i].1.map(|x| label(m, x))))
        .collect();
    let kappa = GaugeTable::new(GaugeKind::Kappa, frame, raw, !projections.exhaustive);

    let mut witness_family = Vec::new();
    let failure = if projections.unbounded {
        Some(HqcFailure::Projection { domain: projections.worst_domain.clone().unwrap_or_default() })
    } else if let Some(bad) = kappa.first_unbounded() {
        let tol = bad.input.to_integer() as u32;
        for r in 1..=frame.radius() {
            let w = kappa_window(m, frame, &members, r, &[tol]);
            if let (value, Some(x)) = w.values[0] {
                witness_family.push(RealisationWitness { radius: r, point: label(m, x), defect: w.defects[x].0, distance: value });
            }
        }
        Some(HqcFailure::Realisation { tolerance: bad.input, point: bad.witness.clone().unwrap_or_default() })
    } else {
        None
    };
    Ok(HqcReport {
        subset: s.name.clone(),
        members: members.len(),
        window: frame.info(m),
        projections,
        kappa,
        witness_family,
        passes: failure.is_none(),
        failure,
    })
}

/// The default tolerances `0, 1, …, E`.
pub fn default_tolerances(m: &HierarchicalModel) -> Vec<u32> {
    (0..=m.e()).collect()
}
