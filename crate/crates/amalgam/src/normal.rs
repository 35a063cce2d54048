//! Normal forms in the abstract amalgam, nontriviality certificates and the
//! extensional injectivity check.

use std::collections::BTreeSet;

use hhs_action::{orbit_ball, GroupHierarchy};
use serde::{Deserialize, Serialize};

use crate::chain::{build_chain, split_reduced, verify_chain, ChainCertificate, ChainStatus};
use crate::data::{AmalgamData, FactorSyllable};
use crate::error::Result;
use crate::hypotheses::{check_hypotheses, HypothesisReport};

/// `t₁ t₂ ⋯ t_k · c` with each `tᵢ` the chosen representative of its coset
/// `tᵢC` in its factor, adjacent factors distinct and `c ∈ C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm<El> {
    pub syllables: Vec<(usize, El)>,
    pub tail: El,
}

impl<El> NormalForm<El> {
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }
}

/// Splits `x = t·c` with `t` the least element of `xC` and `c ∈ C`.
fn transversal<H: GroupHierarchy>(d: &AmalgamData<'_, H>, x: &H::Element) -> (H::Element, H::Element) {
    let h = d.hierarchy();
    let t = d.common().iter().map(|c| h.multiply(x, c)).min().expect("C contains the identity");
    let c = h.multiply(&h.inverse(&t), x);
    (t, c)
}

/// Rewrites a word into the canonical form of the abstract amalgam: adjacent
/// syllables of one factor are multiplied, syllables in `C` are pushed to the
/// right, and each syllable is replaced by its coset representative.
pub fn abstract_normal_form<H: GroupHierarchy>(
    d: &AmalgamData<'_, H>,
    word: &[FactorSyllable<H::Element>],
) -> NormalForm<H::Element> {
    let h = d.hierarchy();
    let mut out: Vec<(usize, H::Element)> = Vec::new();
    let mut carry = h.identity();
    for s in word {
        let mut x = h.multiply(&carry, &s.element);
        if let Some((f, t)) = out.last() {
            if *f == s.factor {
                x = h.multiply(t, &x);
                out.pop();
            }
        }
        if d.is_common(&x) {
            carry = x;
        } else {
            let (t, c) = transversal(d, &x);
            out.push((s.factor, t));
            carry = c;
        }
    }
    NormalForm { syllables: out, tail: carry }
}

impl<El: PartialEq> NormalForm<El> {
    pub fn is_trivial(&self, identity: &El) -> bool {
        self.syllables.is_empty() && self.tail == *identity
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "decision")]
pub enum Nontriviality {
    /// The word is trivial in the amalgam.
    Trivial,
    /// At most two syllables outside `C`: decided by evaluating the word in `G`.
    Evaluated { syllables: usize, nontrivial: bool, element: String },
    Certified { certificate: ChainCertificate },
    /// The chain could not be verified; the certificate shows where it stopped.
    Undecided { certificate: ChainCertificate },
}

impl Nontriviality {
    pub fn proves_nontrivial(&self) -> bool {
        matches!(self, Nontriviality::Certified { .. } | Nontriviality::Evaluated { nontrivial: true, .. })
    }
}

fn normal_syllables<H: GroupHierarchy>(
    d: &AmalgamData<'_, H>,
    nf: &NormalForm<H::Element>,
) -> Vec<FactorSyllable<H::Element>> {
    // Representatives are elements; a short word naming each is looked up so
    // the certificate stays readable.
    let mut out: Vec<FactorSyllable<H::Element>> = nf
        .syllables
        .iter()
        .map(|(f, t)| FactorSyllable { factor: *f, word: name_element(d, *f, t), element: t.clone() })
        .collect();
    let id = d.hierarchy().identity();
    if nf.tail != id {
        out.push(FactorSyllable { factor: 0, word: name_element(d, 0, &nf.tail), element: nf.tail.clone() });
    }
    out
}

fn name_element<H: GroupHierarchy>(d: &AmalgamData<'_, H>, factor: usize, g: &H::Element) -> hhs_action::Word {
    for radius in [2u64, 4, 8] {
        if let Some(e) = orbit_ball(d.hierarchy(), &d.factors()[factor].generators, radius).into_iter().find(|e| e.element == *g)
        {
            return d.lift(factor, &e.word);
        }
    }
    hhs_action::Word::identity()
}

/// Decides whether a word is nontrivial in `G`: words of at most two
/// syllables by evaluation, longer ones by a verified chain.
pub fn certify_nontrivial<H: GroupHierarchy>(
    d: &AmalgamData<'_, H>,
    word: &[FactorSyllable<H::Element>],
) -> Result<Nontriviality> {
    let h = d.hierarchy();
    let id = h.identity();
    let nf = abstract_normal_form(d, word);
    if nf.is_trivial(&id) {
        return Ok(Nontriviality::Trivial);
    }
    if nf.len() <= 2 {
        let g = d.evaluate(word);
        return Ok(Nontriviality::Evaluated {
            syllables: nf.len(),
            nontrivial: g != id,
            element: h.describe_element(&g),
        });
    }
    let syllables = match split_reduced(d, word) {
        Ok(_) => word.to_vec(),
        Err(_) => normal_syllables(d, &nf),
    };
    let chain = build_chain(d, &syllables)?;
    let certificate = verify_chain(d, &chain);
    Ok(if certificate.verified() {
        Nontriviality::Certified { certificate }
    } else {
        Nontriviality::Undecided { certificate }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordFailure {
    pub word: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum InjectivityStatus {
    Passed,
    Failed,
    Partial,
    /// The hypotheses fail at the configured `M`; nothing was checked.
    Refused { failures: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectivityReport {
    pub max_syllables: usize,
    pub per_factor_radius: u64,
    pub hypotheses: HypothesisReport,
    /// Factor ball sizes, identity included.
    pub factor_ball_sizes: Vec<usize>,
    /// Pairwise intersections of factor balls leaving `C`, first few only.
    pub intersection_violations: Vec<String>,
    /// Every syllable sequence tested, reduced or not.
    pub words_tested: usize,
    pub reduced_words: usize,
    pub trivial_in_amalgam: usize,
    /// Words whose normal form and evaluation disagree about triviality.
    pub disagreements: Vec<WordFailure>,
    pub chains_certified: usize,
    pub chains_failed: usize,
    /// First few failing chains.
    pub chain_failures: Vec<WordFailure>,
    pub chains_partial: usize,
    pub status: InjectivityStatus,
}

/// Tests the isomorphism extensionally: every sequence of at most
/// `max_syllables` nontrivial factor elements (from balls of radius
/// `per_factor_radius`) is trivial in the amalgam exactly when it evaluates to
/// the identity. Reduced words of three or more syllables are also certified
/// by chains. Pairwise intersections of the factor balls must lie in `C`.
pub fn verify_injectivity<H: GroupHierarchy>(
    d: &AmalgamData<'_, H>,
    max_syllables: usize,
    per_factor_radius: u64,
) -> Result<InjectivityReport> {
    let h = d.hierarchy();
    let id = h.identity();
    let hypotheses = check_hypotheses(d, per_factor_radius)?;
    let balls: Vec<Vec<(hhs_action::Word, H::Element)>> = (0..d.factors().len())
        .map(|f| {
            orbit_ball(h, &d.factors()[f].generators, per_factor_radius)
                .into_iter()
                .map(|e| (e.word, e.element))
                .collect()
        })
        .collect();
    let mut report = InjectivityReport {
        max_syllables,
        per_factor_radius,
        factor_ball_sizes: balls.iter().map(Vec::len).collect(),
        hypotheses,
        intersection_violations: Vec::new(),
        words_tested: 0,
        reduced_words: 0,
        trivial_in_amalgam: 0,
        disagreements: Vec::new(),
        chains_certified: 0,
        chains_failed: 0,
        chain_failures: Vec::new(),
        chains_partial: 0,
        status: InjectivityStatus::Passed,
    };
    if !report.hypotheses.holds() {
        let mut failures = report.hypotheses.failures.clone();
        if report.hypotheses.partial {
            failures.push("partial".into());
        }
        report.status = InjectivityStatus::Refused { failures };
        return Ok(report);
    }

    for i in 0..balls.len() {
        let si: BTreeSet<&H::Element> = balls[i].iter().map(|(_, g)| g).collect();
        for bj in &balls[i + 1..] {
            for (_, g) in bj {
                if si.contains(g) && !d.is_common(g) && report.intersection_violations.len() < 5 {
                    report.intersection_violations.push(h.describe_element(g));
                }
            }
        }
    }

    let letters: Vec<FactorSyllable<H::Element>> = balls
        .iter()
        .enumerate()
        .flat_map(|(f, ball)| {
            ball.iter().filter(|(_, g)| *g != id).map(move |(w, _)| d.syllable(f, w)).collect::<Vec<_>>()
        })
        .collect();
    let mut current: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max_syllables {
        let mut next = Vec::with_capacity(current.len() * letters.len());
        for w in &current {
            for l in 0..letters.len() {
                let mut w2 = w.clone();
                w2.push(l);
                next.push(w2);
            }
        }
        for w in &next {
            let word: Vec<FactorSyllable<H::Element>> = w.iter().map(|&l| letters[l].clone()).collect();
            check_word(d, &word, &mut report)?;
        }
        current = next;
    }

    let failed = !report.intersection_violations.is_empty()
        || !report.disagreements.is_empty()
        || !report.chain_failures.is_empty();
    report.status = if failed {
        InjectivityStatus::Failed
    } else if report.chains_partial > 0 {
        InjectivityStatus::Partial
    } else {
        InjectivityStatus::Passed
    };
    Ok(report)
}

fn check_word<H: GroupHierarchy>(
    d: &AmalgamData<'_, H>,
    word: &[FactorSyllable<H::Element>],
    report: &mut InjectivityReport,
) -> Result<()> {
    let id = d.hierarchy().identity();
    report.words_tested += 1;
    let nf = abstract_normal_form(d, word);
    let trivial_abstract = nf.is_trivial(&id);
    let trivial_in_g = d.evaluate(word) == id;
    if trivial_abstract {
        report.trivial_in_amalgam += 1;
    }
    if trivial_abstract != trivial_in_g && report.disagreements.len() < 5 {
        report.disagreements.push(WordFailure {
            word: d.format_word(word),
            reason: format!("normal form trivial: {trivial_abstract}, evaluation trivial: {trivial_in_g}"),
        });
    }
    let reduced = split_reduced(d, word).is_ok_and(|(body, tail)| tail.is_none() && !body.is_empty());
    if !reduced {
        return Ok(());
    }
    report.reduced_words += 1;
    if word.len() < 3 {
        return Ok(());
    }
    let cert = verify_chain(d, &build_chain(d, word)?);
    match &cert.status {
        ChainStatus::Verified => report.chains_certified += 1,
        ChainStatus::Partial => report.chains_partial += 1,
        ChainStatus::Failed { claim, indices } => {
            report.chains_failed += 1;
            if report.chain_failures.len() < 5 {
                report.chain_failures.push(WordFailure {
                    word: cert.word.clone(),
                    reason: format!("{claim:?} at {indices:?}"),
                });
            }
        }
    }
    Ok(())
}
