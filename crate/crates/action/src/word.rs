//! Words over named generators with formal inverses.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ActionError, Result};
use crate::GroupHierarchy;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Syllable {
    pub generator: usize,
    pub exponent: i64,
}

/// A word in syllable form. Words built through [`Word::new`] are freely
/// reduced: adjacent syllables use different generators and no exponent is 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(Vec<Syllable>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn new(syllables: impl IntoIterator<Item = Syllable>) -> Self {
        let mut out: Vec<Syllable> = Vec::new();
        for s in syllables {
            if s.exponent == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.generator == s.generator => {
                    last.exponent += s.exponent;
                    if last.exponent == 0 {
                        out.pop();
                    }
                }
                _ => out.push(s),
            }
        }
        Word(out)
    }

    pub fn letter(generator: usize, exponent: i64) -> Self {
        Word::new([Syllable { generator, exponent }])
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Word length with every generator and its inverse of length one.
    pub fn length(&self) -> u64 {
        self.0.iter().map(|s| s.exponent.unsigned_abs()).sum()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|s| Syllable { generator: s.generator, exponent: -s.exponent }).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        Word::new(self.0.iter().chain(other.0.iter()).copied())
    }
}

/// Named generators together with the group elements they stand for.
#[derive(Clone, Debug)]
pub struct GroupSpec<El> {
    names: Vec<String>,
    elements: Vec<El>,
}

fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && s != "e"
        && s.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl<El: Clone> GroupSpec<El> {
    pub fn new(generators: Vec<(String, El)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (name, _) in &generators {
            if !valid_name(name) || !seen.insert(name.clone()) {
                return Err(ActionError::MalformedWord(format!("generator name `{name}`")));
            }
        }
        let (names, elements) = generators.into_iter().unzip();
        Ok(GroupSpec { names, elements })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element(&self, i: usize) -> &El {
        &self.elements[i]
    }

    pub fn generator(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| ActionError::UnknownGenerator(name.into()))
    }

    /// Parses `a^2 b^-1 x1`. Tokens are separated by whitespace, `*` or `·`;
    /// `e` (or an empty string) is the identity.
    pub fn parse(&self, text: &str) -> Result<Word> {
        let mut out = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == '*' || c == '·').filter(|t| !t.is_empty()) {
            if tok == "e" || tok == "1" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e.parse().map_err(|_| ActionError::MalformedWord(text.into()))?;
                    (n, e)
                }
                None => (tok, 1),
            };
            out.push(Syllable { generator: self.generator(name)?, exponent: exp });
        }
        Ok(Word::new(out))
    }

    pub fn format(&self, w: &Word) -> String {
        if w.is_identity() {
            return "e".into();
        }
        let parts: Vec<String> = w
            .syllables()
            .iter()
            .map(|s| {
                let n = &self.names[s.generator];
                if s.exponent == 1 {
                    n.clone()
                } else {
                    format!("{n}^{}", s.exponent)
                }
            })
            .collect();
        parts.join(" ")
    }

    /// The product `s₁ s₂ ⋯ s_k`, composed left to right.
    pub fn evaluate<H: GroupHierarchy<Element = El>>(&self, h: &H, w: &Word) -> El {
        let mut g = h.identity();
        for s in w.syllables() {
            g = h.multiply(&g, &h.power(&self.elements[s.generator], s.exponent));
        }
        g
    }
}

pub struct OrbitEntry<H: GroupHierarchy> {
    pub word: Word,
    pub element: H::Element,
    pub point: H::Point,
}

impl<H: GroupHierarchy> fmt::Debug for OrbitEntry<H> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrbitEntry").field("word", &self.word).field("element", &self.element).finish()
    }
}

/// Every reduced word of length at most `radius`, with its element and the
/// image of the basepoint. Words naming an element already listed are dropped,
/// so each element appears once, under its first word in (length, lexicographic)
/// order.
pub fn orbit_ball<H: GroupHierarchy>(h: &H, spec: &GroupSpec<H::Element>, radius: u64) -> Vec<OrbitEntry<H>> {
    let letters: Vec<(usize, i64)> = (0..spec.len()).flat_map(|g| [(g, 1), (g, -1)]).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut level: Vec<(Vec<(usize, i64)>, H::Element)> = vec![(Vec::new(), h.identity())];
    for len in 0..=radius {
        if len > 0 {
            let mut next = Vec::new();
            for (w, g) in &level {
                for &(gen, sign) in &letters {
                    if w.last() == Some(&(gen, -sign)) {
                        continue;
                    }
                    let mut w2 = w.clone();
                    w2.push((gen, sign));
                    let g2 = h.multiply(g, &h.power(spec.element(gen), sign));
                    next.push((w2, g2));
                }
            }
            level = next;
        }
        for (w, g) in &level {
            if seen.insert(g.clone()) {
                out.push(OrbitEntry {
                    word: Word::new(w.iter().map(|&(generator, exponent)| Syllable { generator, exponent })),
                    element: g.clone(),
                    point: h.orbit_point(g),
                });
            }
        }
    }
    out
}

/// The elements of `⟨gens⟩` whose basepoint images lie in a window, found by
/// breadth-first search through in-window elements up to word length
/// `max_len`. Returns `(element, point id)` sorted by point id.
pub fn orbit_in_window<H>(
    h: &H,
    index: &crate::WindowIndex<H::Point, H::Domain, H::Coord>,
    gens: &[H::Element],
    max_len: usize,
) -> Vec<(H::Element, usize)>
where
    H: GroupHierarchy,
    H::Point: Eq + std::hash::Hash,
    H::Coord: Eq + std::hash::Hash,
{
    let letters: Vec<H::Element> = gens.iter().flat_map(|g| [g.clone(), h.inverse(g)]).collect();
    let id = h.identity();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    if let Some(i) = index.point_index(&h.orbit_point(&id)) {
        seen.insert(id.clone());
        out.push((id.clone(), i));
    } else {
        return out;
    }
    let mut frontier = vec![id];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for g in &frontier {
            for l in &letters {
                let g2 = h.multiply(g, l);
                if seen.contains(&g2) {
                    continue;
                }
                if let Some(i) = index.point_index(&h.orbit_point(&g2)) {
                    seen.insert(g2.clone());
                    out.push((g2.clone(), i));
                    next.push(g2);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    out.sort_by_key(|(_, i)| *i);
    out
}
