//! The combination theorems as checks on a window: when the measured
//! hypotheses hold, the measured conclusions must hold too.

use hhs_amalgam::HypothesisReport;
use hhs_model::HierarchicalModel;
use serde::{Deserialize, Serialize};

use crate::dichotomy::{orth_dichotomy, DichotomyReport};
use crate::drift::DriftReport;
use crate::error::Result;
use crate::frame::{Frame, WindowInfo};
use crate::hqc::{default_tolerances, hqc_check, HqcReport};
use crate::squares::{fill_all_squares, FillReport};
use crate::subset::SubsetSpec;
use crate::Budgets;

/// The factor orbits and the orbit of the subgroup they generate.
pub struct AmalgamSubsets<'a> {
    pub a: &'a SubsetSpec,
    pub b: &'a SubsetSpec,
    pub product: &'a SubsetSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCheck {
    pub premises: bool,
    pub conclusion: bool,
    /// False only when every premise holds and the conclusion fails.
    pub consistent: bool,
}

impl TheoremCheck {
    fn new(premises: bool, conclusion: bool) -> Self {
        TheoremCheck { premises, conclusion, consistent: !premises || conclusion }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombinedReport {
    pub window: WindowInfo,
    pub hypotheses_hold: bool,
    pub hypothesis_failures: Vec<String>,
    pub hqc_a: HqcReport,
    pub hqc_b: HqcReport,
    pub hqc_product: HqcReport,
    pub fill: FillReport,
    pub drift: DriftReport,
    pub dichotomy_a: DichotomyReport,
    pub dichotomy_b: DichotomyReport,
    pub dichotomy_product: DichotomyReport,
    pub e: u32,
    /// `max(Θ_A, Θ_B)` when both are bounded.
    pub theta: Option<u32>,
    pub r: Option<u32>,
    /// `100Θ + 100E + 4R + 1`.
    pub frak_t: Option<u32>,
    /// Factors HQC, filling squares, without drift ⇒ product HQC.
    pub quasiconvex_combination: TheoremCheck,
    /// Factors HQC with the dichotomy ⇒ product HQC with the `𝔗`-dichotomy.
    pub strong_combination: TheoremCheck,
    /// Drift is present and the product fails to be HQC.
    pub counterexample: bool,
}

pub fn combined_amalgam_convexity(
    m: &HierarchicalModel,
    frame: &Frame,
    subsets: &AmalgamSubsets<'_>,
    hypotheses: &HypothesisReport,
    drift: DriftReport,
    budgets: &Budgets,
) -> Result<CombinedReport> {
    let tol = default_tolerances(m);
    let hqc_a = hqc_check(m, subsets.a, &tol, frame, budgets)?;
    let hqc_b = hqc_check(m, subsets.b, &tol, frame, budgets)?;
    let hqc_product = hqc_check(m, subsets.product, &tol, frame, budgets)?;
    let fill = fill_all_squares(m, subsets.a, subsets.b, frame)?;
    let dichotomy_a = orth_dichotomy(m, subsets.a, frame, &[])?;
    let dichotomy_b = orth_dichotomy(m, subsets.b, frame, &[])?;
    let theta = dichotomy_a.theta.zip(dichotomy_b.theta).map(|(x, y)| x.max(y));
    let e = m.e();
    let r = drift.r;
    let frak_t = theta.zip(r).map(|(t, r)| 100 * t + 100 * e + 4 * r + 1);
    let dichotomy_product = orth_dichotomy(m, subsets.product, frame, &frak_t.into_iter().collect::<Vec<_>>())?;

    let hyp = hypotheses.holds();
    let factors_hqc = hqc_a.passes && hqc_b.passes;
    let quasiconvex_combination = TheoremCheck::new(hyp && factors_hqc && fill.passes && drift.passes, hqc_product.passes);
    let product_dichotomy = dichotomy_product.passes && dichotomy_product.holds_at.iter().all(|&(_, ok)| ok);
    let strong_combination = TheoremCheck::new(
        hyp && factors_hqc && dichotomy_a.passes && dichotomy_b.passes,
        hqc_product.passes && product_dichotomy,
    );
    Ok(CombinedReport {
        window: frame.info(m),
        hypotheses_hold: hyp,
        hypothesis_failures: hypotheses.failures.clone(),
        counterexample: !drift.passes && !hqc_product.passes,
        hqc_a,
        hqc_b,
        hqc_product,
        fill,
        drift,
        dichotomy_a,
        dichotomy_b,
        dichotomy_product,
        e,
        theta,
        r,
        frak_t,
        quasiconvex_combination,
        strong_combination,
    })
}
