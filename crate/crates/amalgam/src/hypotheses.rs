//! Measuring the four hypotheses over sampled factor elements.
//!
//! For each sampled `a ∈ Aᵢ − C` we measure the diameters of `Cx₀` and `aCx₀`
//! in `Y_a` and the translation `d_{Y_a}(Cx₀, aCx₀)`; for each sampled pair
//! from different factors we check `Y_a ⋔ aY_b` and measure
//! `d_{Y_a}(Cx₀, bCx₀)`. A value `M` is valid exactly when ten times every
//! diameter and cross distance is at most `M`, every translation is at least
//! `M`, and every witness pair is transverse.

use hhs_action::{orbit_ball, GroupHierarchy, Word};
use hhs_model::Relation;
use serde::{Deserialize, Serialize};

use crate::data::AmalgamData;
use crate::error::{AmalgamError, Result};

/// Names of the hypotheses as they appear in reports.
pub const BOUNDED_DIAMETER: &str = "bounded-diameter";
pub const TRANSLATION: &str = "translation";
pub const TRANSVERSE_WITNESSES: &str = "transverse-witnesses";
pub const CROSS_PROJECTION: &str = "cross-projection";
pub const SCALE: &str = "scale";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementMeasure {
    pub factor: String,
    pub word: String,
    pub element: String,
    pub witness: String,
    /// `max(diam_{Y_a}(Cx₀), diam_{Y_a}(aCx₀))`.
    pub diameter: Option<u32>,
    /// `d_{Y_a}(Cx₀, aCx₀)`.
    pub translation: Option<u32>,
    /// The largest `M` this element alone allows.
    pub max_valid_m: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairMeasure {
    pub a: String,
    pub b: String,
    /// Relation between `Y_a` and `a·Y_b`.
    pub relation: String,
    /// `d_{Y_a}(Cx₀, bCx₀)`.
    pub cross_distance: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub sample_radius: u64,
    pub window: Option<String>,
    pub m: u64,
    pub e: u32,
    pub sampled_elements: usize,
    pub sampled_pairs: usize,
    pub max_diameter: u32,
    pub max_cross_distance: u32,
    pub min_translation: Option<u64>,
    pub witnesses_transverse: bool,
    /// `10·max(diameters, cross distances)`.
    pub lower_bound_m: u64,
    /// The least translation, when any element was sampled.
    pub upper_bound_m: Option<u64>,
    /// The largest `M` satisfying all four hypotheses on the sample.
    pub max_valid_m: Option<u64>,
    pub max_valid_meets_scale: bool,
    /// Hypotheses failing at the configured `M`, by name.
    pub failures: Vec<String>,
    /// Some measurement left the window.
    pub partial: bool,
    pub elements: Vec<ElementMeasure>,
    /// Pairs that are not transverse, first few only.
    pub pair_failures: Vec<PairMeasure>,
}

impl HypothesisReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && !self.partial
    }
}

/// Every element of a factor's radius ball that lies outside `C`, with the
/// word naming it.
pub fn sample_factor<H: GroupHierarchy>(d: &AmalgamData<'_, H>, factor: usize, radius: u64) -> Vec<(Word, H::Element)> {
    orbit_ball(d.hierarchy(), &d.factors()[factor].generators, radius)
        .into_iter()
        .filter(|e| !d.is_common(&e.element))
        .map(|e| (e.word, e.element))
        .collect()
}

/// Measures the single-element hypotheses for `a ∈ A_factor − C`.
pub fn measure_element<H: GroupHierarchy>(
    d: &AmalgamData<'_, H>,
    factor: usize,
    local: &Word,
    a: &H::Element,
) -> Result<ElementMeasure> {
    let h = d.hierarchy();
    if d.is_common(a) {
        return Err(AmalgamError::ElementInCommon(h.describe_element(a)));
    }
    let y = d.witness(factor, a)?;
    let c0 = d.coset(&h.identity());
    let ca = d.coset(a);
    let diameter = match (d.diameter(&y, &c0), d.diameter(&y, &ca)) {
        (Some(p), Some(q)) => Some(p.max(q)),
        _ => None,
    };
    let translation = d.set_distance(&y, &c0, &ca);
    let max_valid_m = match (diameter, translation) {
        (Some(dm), Some(t)) if 10 * dm as u64 <= t as u64 => Some(t as u64),
        _ => None,
    };
    Ok(ElementMeasure {
        factor: d.factors()[factor].name.clone(),
        word: d.word_spec().format(&d.lift(factor, local)),
        element: h.describe_element(a),
        witness: h.describe_domain(&y),
        diameter,
        translation,
        max_valid_m,
    })
}

pub fn check_hypotheses<H: GroupHierarchy>(d: &AmalgamData<'_, H>, sample_radius: u64) -> Result<HypothesisReport> {
    let h = d.hierarchy();
    let samples: Vec<Vec<(Word, H::Element)>> =
        (0..d.factors().len()).map(|f| sample_factor(d, f, sample_radius)).collect();
    let c0 = d.coset(&h.identity());

    let mut partial = false;
    let mut elements = Vec::new();
    let mut max_diameter = 0u32;
    let mut min_translation: Option<u64> = None;
    for (f, sample) in samples.iter().enumerate() {
        for (w, a) in sample {
            let m = measure_element(d, f, w, a)?;
            match m.diameter {
                Some(x) => max_diameter = max_diameter.max(x),
                None => partial = true,
            }
            match m.translation {
                Some(t) => min_translation = Some(min_translation.map_or(t as u64, |b| b.min(t as u64))),
                None => partial = true,
            }
            elements.push(m);
        }
    }

    let mut sampled_pairs = 0;
    let mut max_cross = 0u32;
    let mut transverse = true;
    let mut pair_failures = Vec::new();
    for (i, si) in samples.iter().enumerate() {
        for (j, sj) in samples.iter().enumerate() {
            if i == j {
                continue;
            }
            for (_, a) in si {
                let ya = d.witness(i, a)?;
                for (_, b) in sj {
                    sampled_pairs += 1;
                    let yb = d.witness(j, b)?;
                    let rel = h.relation(&ya, &h.act_domain(a, &yb));
                    let cross = d.set_distance(&ya, &c0, &d.coset(b));
                    match cross {
                        Some(x) => max_cross = max_cross.max(x),
                        None => partial = true,
                    }
                    if rel != Relation::Transverse {
                        transverse = false;
                        if pair_failures.len() < 5 {
                            pair_failures.push(PairMeasure {
                                a: h.describe_element(a),
                                b: h.describe_element(b),
                                relation: format!("{rel:?}"),
                                cross_distance: cross,
                            });
                        }
                    }
                }
            }
        }
    }

    let e = d.e();
    let m = d.m();
    let lower = 10 * max_diameter.max(max_cross) as u64;
    let max_valid_m = match min_translation {
        Some(t) if transverse && t >= lower => Some(t),
        _ => None,
    };
    let mut failures = Vec::new();
    if 10 * max_diameter as u64 > m {
        failures.push(BOUNDED_DIAMETER.to_string());
    }
    if min_translation.is_some_and(|t| t < m) {
        failures.push(TRANSLATION.to_string());
    }
    if !transverse {
        failures.push(TRANSVERSE_WITNESSES.to_string());
    }
    if 10 * max_cross as u64 > m {
        failures.push(CROSS_PROJECTION.to_string());
    }
    if m < 100 * e as u64 {
        failures.push(SCALE.to_string());
    }
    Ok(HypothesisReport {
        sample_radius,
        window: d.window_description().map(str::to_string),
        m,
        e,
        sampled_elements: elements.len(),
        sampled_pairs,
        max_diameter,
        max_cross_distance: max_cross,
        min_translation,
        witnesses_transverse: transverse,
        lower_bound_m: lower,
        upper_bound_m: min_translation,
        max_valid_meets_scale: max_valid_m.is_some_and(|v| v >= 100 * e as u64),
        max_valid_m,
        failures,
        partial,
        elements,
        pair_failures,
    })
}
