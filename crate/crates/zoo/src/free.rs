//! The free group on `a, b` and the Bass–Serre tree of `⟨a⟩ * ⟨b⟩`.

use std::fmt;

/// A freely reduced word. Letters: `1 = a`, `-1 = a⁻¹`, `2 = b`, `-2 = b⁻¹`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord(Vec<i8>);

/// Shortlex key: shorter words first, then letters ordered `a < a⁻¹ < b < b⁻¹`.
fn letter_rank(l: i8) -> u8 {
    match l {
        1 => 0,
        -1 => 1,
        2 => 2,
        _ => 3,
    }
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = i8>) -> Self {
        let mut out: Vec<i8> = Vec::new();
        for l in letters {
            assert!(matches!(l, 1 | -1 | 2 | -2), "letter {l}");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord(out)
    }

    /// `gen^k` with `gen` 1 for `a` and 2 for `b`.
    pub fn power(gen: i8, k: i64) -> Self {
        let l = if k < 0 { -gen } else { gen };
        FreeWord(vec![l; k.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.0.clone();
        let mut rest = other.0.as_slice();
        while let (Some(&l), Some(&r)) = (out.last(), rest.first()) {
            if l != -r {
                break;
            }
            out.pop();
            rest = &rest[1..];
        }
        out.extend_from_slice(rest);
        FreeWord(out)
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn shortlex_key(&self) -> (usize, Vec<u8>) {
        (self.0.len(), self.0.iter().map(|&l| letter_rank(l)).collect())
    }

    /// Maximal syllables as `(gen, exponent)` with `gen` 1 or 2.
    pub fn syllables(&self) -> Vec<(i8, i64)> {
        let mut out: Vec<(i8, i64)> = Vec::new();
        for &l in &self.0 {
            let (g, s) = (l.abs(), l.signum() as i64);
            match out.last_mut() {
                Some((lg, e)) if *lg == g => *e += s,
                _ => out.push((g, s)),
            }
        }
        out
    }

    /// Writes `self = r · gen^k` with `r` not ending in `gen`; returns `(r, k)`.
    pub fn split_suffix(&self, gen: i8) -> (FreeWord, i64) {
        let mut r = self.0.clone();
        let mut k = 0;
        while let Some(&l) = r.last() {
            if l.abs() != gen {
                break;
            }
            k += l.signum() as i64;
            r.pop();
        }
        (FreeWord(r), k)
    }

    /// Exponent of the leading `gen`-syllable (0 when the word starts otherwise).
    pub fn leading(&self, gen: i8) -> i64 {
        let mut k = 0;
        for &l in &self.0 {
            if l.abs() != gen {
                break;
            }
            k += l.signum() as i64;
        }
        k
    }

    /// Compact form: `a`, `A` for `a⁻¹`, `b`, `B`; `e` for the identity.
    /// Runs of four or more equal letters are written `a^k`.
    pub fn compact(&self) -> String {
        if self.0.is_empty() {
            return "e".into();
        }
        let mut out = String::new();
        for (g, k) in self.syllables() {
            let c = match (g, k > 0) {
                (1, true) => 'a',
                (1, false) => 'A',
                (_, true) => 'b',
                (_, false) => 'B',
            };
            let n = k.unsigned_abs();
            if n >= 4 {
                out.push_str(&format!("{c}^{n}"));
            } else {
                out.extend(std::iter::repeat(c).take(n as usize));
            }
        }
        out
    }

    pub fn parse_compact(s: &str) -> Option<FreeWord> {
        if s == "e" {
            return Some(FreeWord::identity());
        }
        let mut letters = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(c) = chars.next() {
            let l = match c {
                'a' => 1,
                'A' => -1,
                'b' => 2,
                'B' => -2,
                _ => return None,
            };
            let mut n = 1usize;
            if chars.peek() == Some(&'^') {
                chars.next();
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                n = digits.parse().ok()?;
            }
            letters.extend(std::iter::repeat(l).take(n));
        }
        let count = letters.len();
        let w = FreeWord::from_letters(letters);
        (w.len() == count).then_some(w)
    }

    /// All reduced words of length at most `n`, in shortlex order.
    pub fn ball(n: usize) -> Vec<FreeWord> {
        let mut out = vec![FreeWord::identity()];
        let mut level = vec![FreeWord::identity()];
        for _ in 0..n {
            let mut next = Vec::new();
            for w in &level {
                for l in [1, -1, 2, -2] {
                    if w.0.last() != Some(&-l) {
                        let mut v = w.0.clone();
                        v.push(l);
                        next.push(FreeWord(v));
                    }
                }
            }
            out.extend(next.iter().cloned());
            level = next;
        }
        out
    }

    /// The prefix closure of a set of words, in shortlex order.
    pub fn prefix_closure(words: &[FreeWord]) -> Vec<FreeWord> {
        let mut set = std::collections::BTreeSet::new();
        for w in words {
            for i in 0..=w.len() {
                set.insert(FreeWord(w.0[..i].to_vec()));
            }
        }
        let mut out: Vec<FreeWord> = set.into_iter().collect();
        out.sort_by_key(|w| w.shortlex_key());
        out
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.compact())
    }
}

/// A vertex `r⟨gen⟩` of the Bass–Serre tree, with `r` not ending in `gen`.
/// The vertex `r⟨a⟩` also names the line domain `r·L_a`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeVertex {
    pub rep: FreeWord,
    pub gen: i8,
}

impl TreeVertex {
    /// The coset `f⟨gen⟩`.
    pub fn coset(f: &FreeWord, gen: i8) -> Self {
        TreeVertex { rep: f.split_suffix(gen).0, gen }
    }

    pub fn translate(&self, f: &FreeWord) -> Self {
        TreeVertex::coset(&f.mul(&self.rep), self.gen)
    }

    /// Tree distance. The path from a vertex back to the edge `{⟨a⟩, ⟨b⟩}`
    /// crosses one edge per syllable of its representative.
    pub fn distance(&self, other: &TreeVertex) -> u32 {
        let (s, t) = (self.rep.syllables(), other.rep.syllables());
        let root = |v: &TreeVertex, syl: &[(i8, i64)]| syl.first().map_or(v.gen, |x| x.0);
        let (k1, k2) = (s.len() as u32, t.len() as u32);
        if root(self, &s) != root(other, &t) {
            return k1 + k2 + 1;
        }
        let common = s.iter().zip(&t).take_while(|(x, y)| x == y).count() as u32;
        k1 + k2 - 2 * common
    }

    /// Position on the line `rep⟨gen⟩` of the closest point to `f`.
    pub fn line_coordinate(&self, f: &FreeWord) -> i64 {
        self.rep.inverse().mul(f).leading(self.gen)
    }

    pub fn label(&self) -> String {
        format!("{}:{}", if self.gen == 1 { 'a' } else { 'b' }, self.rep.compact())
    }

    pub fn parse_label(s: &str) -> Option<Self> {
        let (g, r) = s.split_once(':')?;
        let gen = match g {
            "a" => 1,
            "b" => 2,
            _ => return None,
        };
        let rep = FreeWord::parse_compact(r)?;
        (rep.split_suffix(gen).1 == 0).then_some(TreeVertex { rep, gen })
    }
}

impl fmt::Debug for TreeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// The infinite dihedral group, each element named by its position on the
/// Cayley line of `⟨x, y⟩`: alternating words starting with `x` sit at their
/// length, those starting with `y` at minus their length.
pub mod dihedral {
    pub const X: i64 = 1;
    pub const Y: i64 = -1;

    /// Even positions act as translations, odd ones as reflections.
    pub fn mul(p: i64, q: i64) -> i64 {
        if p.rem_euclid(2) == 0 {
            p + q
        } else {
            p - q
        }
    }

    pub fn inverse(p: i64) -> i64 {
        if p.rem_euclid(2) == 0 {
            -p
        } else {
            p
        }
    }
}
