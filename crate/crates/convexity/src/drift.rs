//! No drift in the orthogonals, on a finite sample of factor elements.

use std::collections::BTreeSet;

use hhs_action::GroupHierarchy;
use hhs_amalgam::{sample_factor, AmalgamData};
use hhs_model::HierarchicalModel;
use serde::{Deserialize, Serialize};

use crate::coords::{density, image};
use crate::error::Result;
use crate::frame::{Frame, WindowInfo};
use crate::subset::SubsetSpec;

/// Domains orthogonal to both `a⁻¹Y_a` and `Y_b` for some sampled pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DriftSample {
    pub radius: u64,
    /// Pairs `(a, b)` from different factors whose witness domains are
    /// materialised in the model.
    pub pairs: usize,
    /// Pairs skipped because a witness domain lies outside the model.
    pub unlocated: usize,
    pub qualifying: Vec<usize>,
}

/// Samples `a` and `b` from the radius balls of different factors (both
/// orders) and collects the qualifying domains.  `locate` maps a domain of the
/// closed form to its index in the model.
pub fn drift_qualifying<H: GroupHierarchy>(
    m: &HierarchicalModel,
    d: &AmalgamData<'_, H>,
    radius: u64,
    locate: &dyn Fn(&H::Domain) -> Option<usize>,
) -> Result<DriftSample> {
    let h = d.hierarchy();
    let samples: Vec<_> = (0..d.factors().len()).map(|f| sample_factor(d, f, radius)).collect();
    let mut qualifying = BTreeSet::new();
    let (mut pairs, mut unlocated) = (0, 0);
    for fa in 0..samples.len() {
        for fb in (0..samples.len()).filter(|&f| f != fa) {
            for (_, a) in &samples[fa] {
                let ya = locate(&h.act_domain(&h.inverse(a), &d.witness(fa, a)?));
                for (_, b) in &samples[fb] {
                    let yb = locate(&d.witness(fb, b)?);
                    let (Some(ya), Some(yb)) = (ya, yb) else {
                        unlocated += 1;
                        continue;
                    };
                    pairs += 1;
                    let dom = m.domains();
                    qualifying.extend((0..m.domain_count()).filter(|&u| dom.is_orthogonal(u, ya) && dom.is_orthogonal(u, yb)));
                }
            }
        }
    }
    Ok(DriftSample { radius, pairs, unlocated, qualifying: qualifying.into_iter().collect() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainDrift {
    pub domain: String,
    /// `min` of the densities of `π_U(A)` and `π_U(B)` in the window image.
    pub half: u32,
    pub full: u32,
    pub unbounded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DriftReport {
    pub window: WindowInfo,
    pub sample: DriftSample,
    pub domains: Vec<DomainDrift>,
    /// Least valid `R` on the full window, present when no domain drifts.
    pub r: Option<u32>,
    pub witness: Option<String>,
    pub vacuous: bool,
    pub passes: bool,
    pub note: String,
}

fn side(m: &HierarchicalModel, u: usize, members: &[usize], window: &[usize]) -> u32 {
    match image(m, u, members) {
        Some(img) => density(m.coord(u), &img, &image(m, u, window).expect("window nonempty")),
        None => u32::MAX,
    }
}

/// For each qualifying domain, whether `π_U(A)` or `π_U(B)` stays dense as
/// the window grows.
pub fn no_drift_check(m: &HierarchicalModel, frame: &Frame, a: &SubsetSpec, b: &SubsetSpec, sample: DriftSample) -> Result<DriftReport> {
    let (am, bm) = (a.members.to_usizes(), b.members.to_usizes());
    let levels = frame.levels();
    let windows: Vec<(Vec<usize>, Vec<usize>, Vec<usize>)> = frame
        .scales()
        .iter()
        .map(|&r| (frame.restrict(&am, r), frame.restrict(&bm, r), (0..levels.len()).filter(|&x| levels[x] <= r).collect()))
        .collect();
    let mut domains = Vec::new();
    for &u in &sample.qualifying {
        let value = |(a, b, w): &(Vec<usize>, Vec<usize>, Vec<usize>)| {
            let v = side(m, u, a, w).min(side(m, u, b, w));
            if v == u32::MAX {
                0
            } else {
                v
            }
        };
        let (half, full) = (value(&windows[0]), value(&windows[1]));
        domains.push(DomainDrift { domain: m.domains().name(u).to_string(), half, full, unbounded: frame.grows(half, full) });
    }
    let witness = domains.iter().find(|d| d.unbounded).map(|d| d.domain.clone());
    let passes = witness.is_none();
    Ok(DriftReport {
        window: frame.info(m),
        vacuous: sample.qualifying.is_empty(),
        r: passes.then(|| domains.iter().map(|d| d.full).max().unwrap_or(0)),
        witness,
        passes,
        domains,
        sample,
        note: "a and b range over finite factor balls".into(),
    })
}
