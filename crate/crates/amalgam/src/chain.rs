//! Chains of cosets and witness domains along a reduced word, and the
//! measurements certifying that the word acts nontrivially.
//!
//! For `w = g₁⋯g_k·c` set `Cᵢ = g₁⋯g_{i−1}Cx₀` and `Wᵢ = g₁⋯g_{i−1}Y_{gᵢ}`.
//! Every inequality below is measured on the hierarchy and compared exactly
//! against its bound; fractional bounds are kept as rationals.

use hhs_action::GroupHierarchy;
use hhs_coarse::Rational64;
use hhs_model::{Hierarchy, Relation};
use serde::{Deserialize, Serialize};

use crate::data::{AmalgamData, FactorSyllable};
use crate::error::{AmalgamError, Result};

/// A chain built from a word, not yet measured.
pub struct Chain<H: GroupHierarchy> {
    pub syllables: Vec<FactorSyllable<H::Element>>,
    pub tail: Option<FactorSyllable<H::Element>>,
    /// `g₁⋯g_{i−1}` for `i = 1, …, k+1`.
    pub prefixes: Vec<H::Element>,
    /// `C₁, …, C_{k+1}`.
    pub cosets: Vec<Vec<H::Point>>,
    /// `W₁, …, W_k`.
    pub domains: Vec<H::Domain>,
}

impl<H: GroupHierarchy> Chain<H> {
    pub fn len(&self) -> usize {
        self.domains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domains.is_empty()
    }
}

/// Splits off a final syllable lying in `C` and checks that what remains
/// alternates between factors with no syllable in `C`.
pub fn split_reduced<H: GroupHierarchy>(
    d: &AmalgamData<'_, H>,
    word: &[FactorSyllable<H::Element>],
) -> Result<(Vec<FactorSyllable<H::Element>>, Option<FactorSyllable<H::Element>>)> {
    let mut body = word.to_vec();
    let tail = match body.last() {
        Some(s) if d.is_common(&s.element) => body.pop(),
        _ => None,
    };
    for (i, s) in body.iter().enumerate() {
        if d.is_common(&s.element) {
            return Err(AmalgamError::NotReduced(format!(
                "syllable {} ({}) lies in the common subgroup",
                i + 1,
                d.word_spec().format(&s.word)
            )));
        }
        if i > 0 && body[i - 1].factor == s.factor {
            return Err(AmalgamError::NotReduced(format!(
                "syllables {} and {} both lie in {}",
                i,
                i + 1,
                d.factors()[s.factor].name
            )));
        }
    }
    Ok((body, tail))
}

pub fn build_chain<H: GroupHierarchy>(d: &AmalgamData<'_, H>, word: &[FactorSyllable<H::Element>]) -> Result<Chain<H>> {
    let (syllables, tail) = split_reduced(d, word)?;
    if syllables.is_empty() {
        return Err(AmalgamError::NotReduced("the word has no syllable outside the common subgroup".into()));
    }
    let h = d.hierarchy();
    let mut prefixes = vec![h.identity()];
    let mut domains = Vec::new();
    for s in &syllables {
        let p = prefixes.last().expect("nonempty").clone();
        domains.push(h.act_domain(&p, &d.witness(s.factor, &s.element)?));
        prefixes.push(h.multiply(&p, &s.element));
    }
    let cosets = prefixes.iter().map(|p| d.coset(p)).collect();
    Ok(Chain { syllables, tail, prefixes, cosets, domains })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// `M ≥ 100E`.
    Scale,
    /// `d_{Wᵢ}(Cᵢ, Cᵢ₊₁) ≥ M`.
    Translation,
    /// `Wᵢ ⋔ Wᵢ₊₁`.
    AdjacentTransverse,
    /// `d_{Wᵢ}(Wᵢ₋₁, Cᵢ) ≤ M/10 + E` and `d_{Wᵢ}(Wᵢ₊₁, Cᵢ₊₁) ≤ M/10 + E`.
    AdjacentProjection,
    /// `d_{Wᵢ}(Wᵢ₋₁, Wᵢ₊₁) ≥ 4M/5 − 4E`, which exceeds `6E`.
    ConsecutiveSeparation,
    /// Pairwise transversality and `d_{W_j}(Wᵢ, W_r) > 2E` for `i < j < r`.
    TransverseRow,
    /// `d_{Wᵢ}(x, W_j) ≤ E` for `i ≠ j`, `x ∈ C_j`.
    FarProjection,
    /// `d_{W_k}(C₁, C_{k+1}) ≥ 9M/10 − 5E > 0`.
    LargeProjection,
    /// `d_{Wᵢ}(x, Cᵢ) ≤ M/10 + 5E` for `x ∈ C_j`, `j < i`, and
    /// `d_{Wᵢ}(x, Cᵢ₊₁) ≤ M/10 + 5E` for `i + 1 < j`.
    CosetCloseness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparison {
    AtMost,
    AtLeast,
    Greater,
    Transverse,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Measurement {
    pub claim: Claim,
    /// One-based chain indices the value refers to.
    pub indices: Vec<usize>,
    /// The measured quantity; `None` when it could not be measured inside the window.
    pub value: Option<i64>,
    pub comparison: Comparison,
    #[serde(with = "hhs_coarse::rational")]
    pub bound: Rational64,
    pub holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum ChainStatus {
    Verified,
    Failed { claim: Claim, indices: Vec<usize> },
    Partial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCertificate {
    pub word: String,
    pub syllables: usize,
    pub m: u64,
    pub e: u32,
    pub window: Option<String>,
    /// Points of `C₁, …, C_{k+1}`.
    pub cosets: Vec<Vec<String>>,
    /// `W₁, …, W_k`.
    pub chain: Vec<String>,
    pub measurements: Vec<Measurement>,
    /// The measured `d_{W_k}(C₁, C_{k+1})`.
    #[serde(with = "optional_rational")]
    pub final_bound: Option<Rational64>,
    pub status: ChainStatus,
}

impl ChainCertificate {
    pub fn verified(&self) -> bool {
        self.status == ChainStatus::Verified
    }

    pub fn values(&self, claim: Claim) -> impl Iterator<Item = &Measurement> {
        self.measurements.iter().filter(move |m| m.claim == claim)
    }
}

mod optional_rational {
    use hhs_coarse::Rational64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational64>, s: S) -> Result<S::Ok, S::Error> {
        r.map(|r| r.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational64>, D::Error> {
        let text: Option<String> = Option::deserialize(d)?;
        match text {
            None => Ok(None),
            Some(t) => hhs_coarse::rational::parse(&t)
                .map(Some)
                .ok_or_else(|| serde::de::Error::custom(format!("bad rational `{t}`"))),
        }
    }
}

struct Recorder {
    out: Vec<Measurement>,
}

impl Recorder {
    fn push(&mut self, claim: Claim, indices: Vec<usize>, value: Option<i64>, comparison: Comparison, bound: Rational64) {
        let holds = value.map(|v| {
            let v = Rational64::from_integer(v);
            match comparison {
                Comparison::AtMost => v <= bound,
                Comparison::AtLeast => v >= bound,
                Comparison::Greater | Comparison::Transverse => v > bound,
            }
        });
        self.out.push(Measurement { claim, indices, value, comparison, bound, holds });
    }

    fn relation(&mut self, claim: Claim, indices: Vec<usize>, transverse: bool) {
        self.out.push(Measurement {
            claim,
            indices,
            value: Some(transverse as i64),
            comparison: Comparison::Transverse,
            bound: Rational64::from_integer(0),
            holds: Some(transverse),
        });
    }
}

fn rat(p: i64, q: i64) -> Rational64 {
    Rational64::new(p, q)
}

fn opt(v: Option<u32>) -> Option<i64> {
    v.map(i64::from)
}

/// Measures every inequality along the chain.
pub fn verify_chain<H: GroupHierarchy>(d: &AmalgamData<'_, H>, chain: &Chain<H>) -> ChainCertificate {
    let h = d.hierarchy();
    let k = chain.len();
    let m = d.m() as i64;
    let e = d.e() as i64;
    let w = &chain.domains;
    let c = &chain.cosets;
    let mut r = Recorder { out: Vec::new() };

    r.push(Claim::Scale, vec![], Some(m), Comparison::AtLeast, rat(100 * e, 1));

    for i in 0..k {
        r.push(Claim::Translation, vec![i + 1], opt(d.set_distance(&w[i], &c[i], &c[i + 1])), Comparison::AtLeast, rat(m, 1));
    }
    for i in 0..k.saturating_sub(1) {
        r.relation(Claim::AdjacentTransverse, vec![i + 1, i + 2], h.relation(&w[i], &w[i + 1]) == Relation::Transverse);
    }

    let near = rat(m + 10 * e, 10);
    for i in 1..k {
        r.push(Claim::AdjacentProjection, vec![i + 1, i], opt(d.rho_to_set(&w[i], &w[i - 1], &c[i])), Comparison::AtMost, near);
    }
    for i in 0..k.saturating_sub(1) {
        r.push(
            Claim::AdjacentProjection,
            vec![i + 1, i + 2],
            opt(d.rho_to_set(&w[i], &w[i + 1], &c[i + 1])),
            Comparison::AtMost,
            near,
        );
    }

    let separation = rat(4 * m - 20 * e, 5);
    for i in 1..k.saturating_sub(1) {
        let v = opt(h.rho_distance(&w[i], &w[i - 1], &w[i + 1]));
        r.push(Claim::ConsecutiveSeparation, vec![i, i + 1, i + 2], v, Comparison::AtLeast, separation);
        r.push(Claim::ConsecutiveSeparation, vec![i, i + 1, i + 2], v, Comparison::Greater, rat(6 * e, 1));
    }

    for i in 0..k {
        for j in i + 1..k {
            r.relation(Claim::TransverseRow, vec![i + 1, j + 1], h.relation(&w[i], &w[j]) == Relation::Transverse);
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                r.push(
                    Claim::TransverseRow,
                    vec![i + 1, j + 1, l + 1],
                    opt(h.rho_distance(&w[j], &w[i], &w[l])),
                    Comparison::Greater,
                    rat(2 * e, 1),
                );
            }
        }
    }

    // The worst point of each coset is recorded.
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let v = worst(&c[j], |x| d.rho_to_set(&w[i], &w[j], std::slice::from_ref(x)));
            r.push(Claim::FarProjection, vec![i + 1, j + 1], v, Comparison::AtMost, rat(e, 1));
        }
    }

    let final_value = if k > 0 { d.set_distance(&w[k - 1], &c[0], &c[k]) } else { None };
    if k > 0 {
        let v = opt(final_value);
        r.push(Claim::LargeProjection, vec![k], v, Comparison::AtLeast, rat(9 * m - 50 * e, 10));
        r.push(Claim::LargeProjection, vec![k], v, Comparison::Greater, rat(0, 1));
    }

    let close = rat(m + 50 * e, 10);
    for i in 0..k {
        for j in 0..k {
            if j < i {
                let v = worst(&c[j], |x| d.set_distance(&w[i], std::slice::from_ref(x), &c[i]));
                r.push(Claim::CosetCloseness, vec![i + 1, j + 1], v, Comparison::AtMost, close);
            } else if i + 1 < j {
                let v = worst(&c[j], |x| d.set_distance(&w[i], std::slice::from_ref(x), &c[i + 1]));
                r.push(Claim::CosetCloseness, vec![i + 1, j + 1], v, Comparison::AtMost, close);
            }
        }
    }

    let measurements = r.out;
    let status = match measurements.iter().find(|x| x.holds == Some(false)) {
        Some(f) => ChainStatus::Failed { claim: f.claim, indices: f.indices.clone() },
        None if measurements.iter().any(|x| x.holds.is_none()) => ChainStatus::Partial,
        None => ChainStatus::Verified,
    };
    let mut word = chain.syllables.clone();
    word.extend(chain.tail.clone());
    ChainCertificate {
        word: d.format_word(&word),
        syllables: k,
        m: d.m(),
        e: d.e(),
        window: d.window_description().map(str::to_string),
        cosets: c.iter().map(|s| s.iter().map(|x| h.describe_point(x)).collect()).collect(),
        chain: w.iter().map(|u| h.describe_domain(u)).collect(),
        measurements,
        final_bound: final_value.map(|v| Rational64::from_integer(v as i64)),
        status,
    }
}

fn worst<P>(points: &[P], f: impl Fn(&P) -> Option<u32>) -> Option<i64> {
    let mut best = 0i64;
    for x in points {
        best = best.max(f(x)? as i64);
    }
    Some(best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "outcome")]
pub enum RowOutcome {
    /// Fewer than three domains.
    Vacuous,
    /// The hypotheses of the row statement fail; nothing is asserted.
    PreconditionUnmet { reason: String },
    /// Every conclusion holds; the least measured `d_{W_j}(Wᵢ, W_r)` is reported.
    Holds { min_separation: u32 },
    Violated { indices: Vec<usize>, reason: String },
}

impl RowOutcome {
    /// True unless a conclusion was violated.
    pub fn consistent(&self) -> bool {
        !matches!(self, RowOutcome::Violated { .. })
    }
}

/// Checks, by direct measurement, that a row of domains with transverse
/// neighbours and middle separation `> 6E` is pairwise transverse with
/// `d_{W_j}(Wᵢ, W_r) > 2E` for all `i < j < r`.
pub fn verify_transverse_row<H: Hierarchy>(h: &H, chain: &[H::Domain], e: u32) -> Result<RowOutcome> {
    let k = chain.len();
    if k <= 2 {
        return Ok(RowOutcome::Vacuous);
    }
    let e = e as u64;
    for i in 0..k - 1 {
        if h.relation(&chain[i], &chain[i + 1]) != Relation::Transverse {
            return Ok(RowOutcome::PreconditionUnmet { reason: format!("W{} and W{} are not transverse", i + 1, i + 2) });
        }
    }
    let rho = |j: usize, i: usize, r: usize| -> Result<u32> {
        h.rho_distance(&chain[j], &chain[i], &chain[r]).ok_or_else(|| {
            AmalgamError::RelationTable(format!("ρ from W{} or W{} to W{}", i + 1, r + 1, j + 1))
        })
    };
    for j in 1..k - 1 {
        let v = rho(j, j - 1, j + 1)? as u64;
        if v <= 6 * e {
            return Ok(RowOutcome::PreconditionUnmet {
                reason: format!("d_W{}(W{}, W{}) = {v} is not above 6E = {}", j + 1, j, j + 2, 6 * e),
            });
        }
    }
    for i in 0..k {
        for r in i + 1..k {
            if h.relation(&chain[i], &chain[r]) != Relation::Transverse {
                return Ok(RowOutcome::Violated {
                    indices: vec![i + 1, r + 1],
                    reason: format!("W{} and W{} are not transverse", i + 1, r + 1),
                });
            }
        }
    }
    let mut min_sep = u32::MAX;
    for i in 0..k {
        for j in i + 1..k {
            for r in j + 1..k {
                let v = rho(j, i, r)?;
                if v as u64 <= 2 * e {
                    return Ok(RowOutcome::Violated {
                        indices: vec![i + 1, j + 1, r + 1],
                        reason: format!("d_W{}(W{}, W{}) = {v} is not above 2E = {}", j + 1, i + 1, r + 1, 2 * e),
                    });
                }
                min_sep = min_sep.min(v);
            }
        }
    }
    Ok(RowOutcome::Holds { min_separation: min_sep })
}
