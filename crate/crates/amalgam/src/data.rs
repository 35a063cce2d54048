//! Amalgam data: factor subgroups, the common subgroup, witness domains and
//! the scale `M`, together with the measurements every certificate is built on.

use std::collections::BTreeSet;

use hhs_action::{GroupHierarchy, GroupSpec, Syllable, Word};

use crate::error::{AmalgamError, Result};

/// A factor subgroup, given by named generators.
#[derive(Clone, Debug)]
pub struct Factor<El> {
    pub name: String,
    pub generators: GroupSpec<El>,
}

impl<El: Clone> Factor<El> {
    pub fn new(name: impl Into<String>, generators: GroupSpec<El>) -> Self {
        Factor { name: name.into(), generators }
    }

    /// A cyclic factor with a single generator.
    pub fn cyclic(name: impl Into<String>, generator: impl Into<String>, element: El) -> Result<Self> {
        Ok(Factor::new(name, GroupSpec::new(vec![(generator.into(), element)])?))
    }
}

/// One syllable of an amalgam word: an element of a single factor, together
/// with the word naming it (generator indices refer to [`AmalgamData::word_spec`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSyllable<El> {
    pub factor: usize,
    pub word: Word,
    pub element: El,
}

pub type WitnessFn<'a, H> =
    Box<dyn Fn(usize, &<H as GroupHierarchy>::Element) -> Option<<H as hhs_model::Hierarchy>::Domain> + 'a>;
pub type WindowFn<'a, H> = Box<dyn Fn(&<H as hhs_model::Hierarchy>::Point) -> bool + 'a>;

/// Everything the certifier needs about `A₁ *_C ⋯ *_C Aₙ → G`.
///
/// The common subgroup `C` is given by enumeration and must be a finite
/// subgroup. Witness domains are produced on demand by a closure receiving the
/// factor index and the element. An optional window restricts which points may
/// be measured; measurements that leave it are reported as partial.
pub struct AmalgamData<'a, H: GroupHierarchy> {
    hierarchy: &'a H,
    factors: Vec<Factor<H::Element>>,
    common: Vec<H::Element>,
    basepoint: H::Point,
    witness: WitnessFn<'a, H>,
    window: Option<(String, WindowFn<'a, H>)>,
    m: u64,
    word_spec: GroupSpec<H::Element>,
    offsets: Vec<usize>,
}

impl<'a, H: GroupHierarchy> AmalgamData<'a, H> {
    pub fn new(
        hierarchy: &'a H,
        factors: Vec<Factor<H::Element>>,
        common: Vec<H::Element>,
        witness: WitnessFn<'a, H>,
        m: u64,
    ) -> Result<Self> {
        if factors.is_empty() {
            return Err(AmalgamError::Unsupported("at least one factor is required".into()));
        }
        if m == 0 {
            return Err(AmalgamError::Unsupported("M must be positive".into()));
        }
        let common = subgroup_closure_check(hierarchy, common)?;
        let mut gens = Vec::new();
        let mut offsets = Vec::new();
        for f in &factors {
            offsets.push(gens.len());
            for i in 0..f.generators.len() {
                gens.push((f.generators.names()[i].clone(), f.generators.element(i).clone()));
            }
        }
        let word_spec = GroupSpec::new(gens)?;
        Ok(AmalgamData {
            hierarchy,
            factors,
            common,
            basepoint: hierarchy.basepoint(),
            witness,
            window: None,
            m,
            word_spec,
            offsets,
        })
    }

    /// Restricts measurements to points accepted by `inside`.
    pub fn with_window(mut self, description: impl Into<String>, inside: WindowFn<'a, H>) -> Self {
        self.window = Some((description.into(), inside));
        self
    }

    pub fn with_m(mut self, m: u64) -> Self {
        self.m = m;
        self
    }

    pub fn hierarchy(&self) -> &'a H {
        self.hierarchy
    }

    pub fn factors(&self) -> &[Factor<H::Element>] {
        &self.factors
    }

    pub fn common(&self) -> &[H::Element] {
        &self.common
    }

    pub fn basepoint(&self) -> &H::Point {
        &self.basepoint
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn e(&self) -> u32 {
        self.hierarchy.constant()
    }

    pub fn window_description(&self) -> Option<&str> {
        self.window.as_ref().map(|(d, _)| d.as_str())
    }

    /// All factor generators under one spec, used for parsing and printing words.
    pub fn word_spec(&self) -> &GroupSpec<H::Element> {
        &self.word_spec
    }

    pub fn is_common(&self, g: &H::Element) -> bool {
        self.common.contains(g)
    }

    pub fn witness(&self, factor: usize, g: &H::Element) -> Result<H::Domain> {
        (self.witness)(factor, g).ok_or_else(|| AmalgamError::MissingWitness(self.hierarchy.describe_element(g)))
    }

    fn factor_of_generator(&self, global: usize) -> usize {
        self.offsets.iter().rposition(|&o| o <= global).expect("offset table starts at zero")
    }

    /// Lifts a word over one factor's own generators into [`Self::word_spec`].
    pub fn lift(&self, factor: usize, local: &Word) -> Word {
        Word::new(
            local.syllables().iter().map(|s| Syllable { generator: s.generator + self.offsets[factor], exponent: s.exponent }),
        )
    }

    pub fn syllable(&self, factor: usize, local: &Word) -> FactorSyllable<H::Element> {
        let word = self.lift(factor, local);
        let element = self.word_spec.evaluate(self.hierarchy, &word);
        FactorSyllable { factor, word, element }
    }

    /// Parses a word into syllables. Syllables are separated by `|` when the
    /// text contains one; otherwise every token (`A^2`, `B^-1`, …) is its own
    /// syllable. A syllable may only use generators of one factor.
    pub fn parse_word(&self, text: &str) -> Result<Vec<FactorSyllable<H::Element>>> {
        let pieces: Vec<String> = if text.contains('|') {
            text.split('|').map(str::to_string).collect()
        } else {
            text.split(|c: char| c.is_whitespace() || c == '*' || c == '·').map(str::to_string).collect()
        };
        let mut out = Vec::new();
        for piece in pieces {
            let word = self.word_spec.parse(&piece)?;
            if word.is_identity() {
                continue;
            }
            let factors: BTreeSet<usize> = word.syllables().iter().map(|s| self.factor_of_generator(s.generator)).collect();
            if factors.len() != 1 {
                return Err(AmalgamError::NotReduced(format!("syllable `{}` mixes factors", piece.trim())));
            }
            let factor = *factors.iter().next().expect("nonempty");
            let element = self.word_spec.evaluate(self.hierarchy, &word);
            out.push(FactorSyllable { factor, word, element });
        }
        Ok(out)
    }

    pub fn format_word(&self, word: &[FactorSyllable<H::Element>]) -> String {
        if word.is_empty() {
            return "e".into();
        }
        word.iter().map(|s| self.word_spec.format(&s.word)).collect::<Vec<_>>().join(" | ")
    }

    pub fn evaluate(&self, word: &[FactorSyllable<H::Element>]) -> H::Element {
        word.iter().fold(self.hierarchy.identity(), |g, s| self.hierarchy.multiply(&g, &s.element))
    }

    /// The set `g·C·x₀`.
    pub fn coset(&self, g: &H::Element) -> Vec<H::Point> {
        self.common
            .iter()
            .map(|c| self.hierarchy.act_point(&self.hierarchy.multiply(g, c), &self.basepoint))
            .collect()
    }

    /// `π_U` of a set of points, or `None` when a point leaves the window.
    pub fn project_set(&self, u: &H::Domain, points: &[H::Point]) -> Option<Vec<H::Coord>> {
        let mut out = Vec::new();
        for x in points {
            if let Some((_, inside)) = &self.window {
                if !inside(x) {
                    return None;
                }
            }
            out.extend(self.hierarchy.project(u, x)?);
        }
        Some(out)
    }

    /// `d_U(P, Q)` between two point sets.
    pub fn set_distance(&self, u: &H::Domain, p: &[H::Point], q: &[H::Point]) -> Option<u32> {
        let a = self.project_set(u, p)?;
        let b = self.project_set(u, q)?;
        self.hierarchy.coord_set_distance(u, &a, &b)
    }

    /// `diam_U(P)`.
    pub fn diameter(&self, u: &H::Domain, p: &[H::Point]) -> Option<u32> {
        let a = self.project_set(u, p)?;
        self.hierarchy.coord_diameter(u, &a)
    }

    /// `d_U(V, P)`: from `ρ^V_U` to the projection of a point set.
    pub fn rho_to_set(&self, u: &H::Domain, v: &H::Domain, p: &[H::Point]) -> Option<u32> {
        let a = self.hierarchy.rho(v, u)?;
        let b = self.project_set(u, p)?;
        self.hierarchy.coord_set_distance(u, &a, &b)
    }
}

fn subgroup_closure_check<H: GroupHierarchy>(h: &H, common: Vec<H::Element>) -> Result<Vec<H::Element>> {
    let set: BTreeSet<H::Element> = common.into_iter().collect();
    if !set.contains(&h.identity()) {
        return Err(AmalgamError::Unsupported("the common subgroup must contain the identity".into()));
    }
    for a in &set {
        if !set.contains(&h.inverse(a)) {
            return Err(AmalgamError::Unsupported(format!(
                "the common set is not closed under inverses at {}",
                h.describe_element(a)
            )));
        }
        for b in &set {
            if !set.contains(&h.multiply(a, b)) {
                return Err(AmalgamError::Unsupported(format!(
                    "the common set is not closed under products at {} · {}",
                    h.describe_element(a),
                    h.describe_element(b)
                )));
            }
        }
    }
    // Identity first, then the element order: the enumeration is deterministic.
    let id = h.identity();
    let mut out = vec![id.clone()];
    out.extend(set.into_iter().filter(|g| *g != id));
    Ok(out)
}
