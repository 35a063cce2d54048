//! `G = F(a,b) × D(x₁,y₁) × D(x₂,y₂)` with its hierarchy.
//!
//! Domains: the top `S`; the Bass–Serre tree `T` of `⟨a⟩ * ⟨b⟩`; one line
//! `r·L_a` or `r·L_b` per coset of `⟨a⟩` or `⟨b⟩`, nested in `T`; the two
//! dihedral lines `W1`, `W2`. The containers `Q1 = T ⊔ W2`, `Q2 = T ⊔ W1` and
//! `W12 = W1 ⊔ W2` have one-point coordinate spaces and exist so that every
//! orthogonal family has a proper domain containing it.
//!
//! The reduced variant drops both dihedral factors (and with them `W1`, `W2`
//! and the containers), leaving `F(a,b)` with `S`, `T` and the lines.

use std::collections::{BTreeMap, BTreeSet};

use hhs_action::{GroupHierarchy, GroupSpec};
use hhs_model::{Hierarchy, HierarchicalModel, Relation};

use crate::error::{Result, ZooError};
use crate::free::{dihedral, FreeWord, TreeVertex};
use crate::window::{tabulate_window, Index, RhoDown, Tabulable};

/// An element `(f, p₁, p₂)`; dihedral parts are positions (see [`dihedral`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elt {
    pub f: FreeWord,
    pub p1: i64,
    pub p2: i64,
}

impl Elt {
    pub fn new(f: FreeWord, p1: i64, p2: i64) -> Self {
        Elt { f, p1, p2 }
    }

    pub fn identity() -> Self {
        Elt::new(FreeWord::identity(), 0, 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dom {
    S,
    T,
    W1,
    W2,
    Q1,
    Q2,
    W12,
    /// The line `rep·L_gen`, named by its tree vertex `rep⟨gen⟩`.
    Line(TreeVertex),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    Unit,
    Pos(i64),
    Vertex(TreeVertex),
}

/// The closed-form hierarchy, unbounded.
#[derive(Clone, Debug)]
pub struct F2xD2 {
    e: u32,
    dihedral: bool,
}

/// Declared constant of the zoo model; the audit measures exactly this value.
pub const DECLARED_E: u32 = 2;

/// Without orthogonality the large-links lists have length one.
pub const REDUCED_E: u32 = 1;

fn other(gen: i8) -> i8 {
    3 - gen
}

fn is_unit(d: &Dom) -> bool {
    matches!(d, Dom::S | Dom::Q1 | Dom::Q2 | Dom::W12)
}

impl F2xD2 {
    pub fn new(e: u32) -> Self {
        F2xD2 { e, dihedral: true }
    }

    /// The variant without the dihedral factors.
    pub fn reduced(e: u32) -> Self {
        F2xD2 { e, dihedral: false }
    }

    pub fn has_dihedral(&self) -> bool {
        self.dihedral
    }

    /// `U ⊊ V`.
    fn nested(&self, u: &Dom, v: &Dom) -> bool {
        use Dom::*;
        match (u, v) {
            (Line(_), T | S) | (T, S) => true,
            _ if !self.dihedral => false,
            (Line(_) | T, Q1 | Q2) => true,
            (W1, Q2 | W12 | S) | (W2, Q1 | W12 | S) => true,
            (Q1 | Q2 | W12, S) => true,
            _ => false,
        }
    }

    fn orthogonal(&self, u: &Dom, v: &Dom) -> bool {
        use Dom::*;
        let one = |u: &Dom, v: &Dom| {
            matches!((u, v), (T | Line(_), W1 | W2 | W12) | (W1, W2) | (Q1, W1) | (Q2, W2))
        };
        self.dihedral && (one(u, v) || one(v, u))
    }

    /// The element named by a word in `a, b, x1, y1, x2, y2`.
    pub fn generators(&self) -> GroupSpec<Elt> {
        let f = |g: i8| Elt::new(FreeWord::power(g, 1), 0, 0);
        let mut gens = vec![("a".to_string(), f(1)), ("b".to_string(), f(2))];
        if self.dihedral {
            gens.extend([
                ("x1".to_string(), Elt::new(FreeWord::identity(), dihedral::X, 0)),
                ("y1".to_string(), Elt::new(FreeWord::identity(), dihedral::Y, 0)),
                ("x2".to_string(), Elt::new(FreeWord::identity(), 0, dihedral::X)),
                ("y2".to_string(), Elt::new(FreeWord::identity(), 0, dihedral::Y)),
            ]);
        }
        GroupSpec::new(gens).expect("generator names are valid")
    }

    /// `a^N x₁x₂`, generating the subgroup `A` (just `a^N` without the dihedral factors).
    pub fn a_generator(&self, n: i64) -> Elt {
        let d = if self.dihedral { dihedral::X } else { 0 };
        Elt::new(FreeWord::power(1, n), d, d)
    }

    /// `b^N y₁y₂`, generating `B`.
    pub fn b_generator(&self, n: i64) -> Elt {
        let d = if self.dihedral { dihedral::Y } else { 0 };
        Elt::new(FreeWord::power(2, n), d, d)
    }

    /// `L_a`, the witness domain for every nontrivial element of `A`.
    pub fn a_line() -> Dom {
        Dom::Line(TreeVertex { rep: FreeWord::identity(), gen: 1 })
    }

    pub fn b_line() -> Dom {
        Dom::Line(TreeVertex { rep: FreeWord::identity(), gen: 2 })
    }

    pub fn tree_vertices(f: &FreeWord) -> [TreeVertex; 2] {
        [TreeVertex::coset(f, 1), TreeVertex::coset(f, 2)]
    }
}

fn label_word(f: &FreeWord) -> String {
    f.compact()
}

impl Hierarchy for F2xD2 {
    type Point = Elt;
    type Domain = Dom;
    type Coord = Coord;

    fn constant(&self) -> u32 {
        self.e
    }

    fn relation(&self, u: &Dom, v: &Dom) -> Relation {
        if u == v {
            Relation::Equal
        } else if self.nested(u, v) {
            Relation::NestedIn
        } else if self.nested(v, u) {
            Relation::Contains
        } else if self.orthogonal(u, v) {
            Relation::Orthogonal
        } else {
            Relation::Transverse
        }
    }

    fn project(&self, u: &Dom, x: &Elt) -> Option<Vec<Coord>> {
        Some(match u {
            Dom::S | Dom::Q1 | Dom::Q2 | Dom::W12 => vec![Coord::Unit],
            Dom::T => F2xD2::tree_vertices(&x.f).into_iter().map(Coord::Vertex).collect(),
            Dom::W1 => vec![Coord::Pos(x.p1)],
            Dom::W2 => vec![Coord::Pos(x.p2)],
            Dom::Line(l) => vec![Coord::Pos(l.line_coordinate(&x.f))],
        })
    }

    fn rho(&self, from: &Dom, to: &Dom) -> Option<Vec<Coord>> {
        if !matches!(self.relation(from, to), Relation::NestedIn | Relation::Transverse) {
            return None;
        }
        match (from, to) {
            (_, t) if is_unit(t) => Some(vec![Coord::Unit]),
            (Dom::Line(l), Dom::T) => Some(vec![Coord::Vertex(l.clone())]),
            (Dom::Line(l2), Dom::Line(l)) => Some(vec![Coord::Pos(l.line_coordinate(&l2.rep))]),
            _ => None,
        }
    }

    fn coord_distance(&self, _u: &Dom, a: &Coord, b: &Coord) -> Option<u32> {
        match (a, b) {
            (Coord::Unit, Coord::Unit) => Some(0),
            (Coord::Pos(p), Coord::Pos(q)) => Some(p.abs_diff(*q) as u32),
            (Coord::Vertex(v), Coord::Vertex(w)) => Some(v.distance(w)),
            _ => None,
        }
    }
}

impl GroupHierarchy for F2xD2 {
    type Element = Elt;

    fn describe_element(&self, g: &Elt) -> String {
        self.point_label(g)
    }

    fn describe_point(&self, x: &Elt) -> String {
        self.point_label(x)
    }

    fn describe_domain(&self, u: &Self::Domain) -> String {
        self.domain_name(u)
    }

    fn identity(&self) -> Elt {
        Elt::identity()
    }

    fn multiply(&self, g: &Elt, h: &Elt) -> Elt {
        Elt::new(g.f.mul(&h.f), dihedral::mul(g.p1, h.p1), dihedral::mul(g.p2, h.p2))
    }

    fn inverse(&self, g: &Elt) -> Elt {
        Elt::new(g.f.inverse(), dihedral::inverse(g.p1), dihedral::inverse(g.p2))
    }

    fn act_point(&self, g: &Elt, x: &Elt) -> Elt {
        self.multiply(g, x)
    }

    fn act_domain(&self, g: &Elt, u: &Dom) -> Dom {
        match u {
            Dom::Line(l) => Dom::Line(l.translate(&g.f)),
            d => d.clone(),
        }
    }

    fn act_coord(&self, g: &Elt, u: &Dom, c: &Coord) -> Coord {
        match (u, c) {
            (Dom::W1, Coord::Pos(p)) => Coord::Pos(dihedral::mul(g.p1, *p)),
            (Dom::W2, Coord::Pos(p)) => Coord::Pos(dihedral::mul(g.p2, *p)),
            (Dom::Line(l), Coord::Pos(k)) => {
                let (_, j) = g.f.mul(&l.rep).split_suffix(l.gen);
                Coord::Pos(k + j)
            }
            (_, Coord::Vertex(v)) => Coord::Vertex(v.translate(&g.f)),
            (_, c) => c.clone(),
        }
    }

    fn basepoint(&self) -> Elt {
        Elt::identity()
    }
}

impl Tabulable for F2xD2 {
    fn point_label(&self, x: &Elt) -> String {
        if self.dihedral {
            format!("{},{},{}", label_word(&x.f), x.p1, x.p2)
        } else {
            label_word(&x.f)
        }
    }

    fn domain_name(&self, u: &Dom) -> String {
        match u {
            Dom::S => "S".into(),
            Dom::T => "T".into(),
            Dom::W1 => "W1".into(),
            Dom::W2 => "W2".into(),
            Dom::Q1 => "Q1".into(),
            Dom::Q2 => "Q2".into(),
            Dom::W12 => "W12".into(),
            Dom::Line(l) => format!("L{}", l.label()),
        }
    }

    fn coord_label(&self, _u: &Dom, c: &Coord) -> String {
        match c {
            Coord::Unit => "*".into(),
            Coord::Pos(k) => k.to_string(),
            Coord::Vertex(v) => v.label(),
        }
    }

    fn neighbours(&self, x: &Elt) -> Vec<Elt> {
        let mut out: Vec<Elt> =
            [1, -1, 2, -2].iter().map(|&l| Elt::new(x.f.mul(&FreeWord::from_letters([l])), x.p1, x.p2)).collect();
        if self.dihedral {
            for s in [-1, 1] {
                out.push(Elt::new(x.f.clone(), x.p1 + s, x.p2));
                out.push(Elt::new(x.f.clone(), x.p1, x.p2 + s));
            }
        }
        out
    }

    fn coord_edges(&self, _u: &Dom, coords: &[Coord]) -> Vec<(usize, usize)> {
        let index: BTreeMap<&Coord, usize> = coords.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut edges = Vec::new();
        for (i, c) in coords.iter().enumerate() {
            let parent = match c {
                Coord::Unit => None,
                Coord::Pos(k) => Some(Coord::Pos(k + 1)),
                Coord::Vertex(v) if v.rep.is_empty() && v.gen == 1 => {
                    Some(Coord::Vertex(TreeVertex { rep: FreeWord::identity(), gen: 2 }))
                }
                Coord::Vertex(v) if v.rep.is_empty() => None,
                Coord::Vertex(v) => Some(Coord::Vertex(TreeVertex::coset(&v.rep, other(v.gen)))),
            };
            if let Some(j) = parent.and_then(|p| index.get(&p).copied()) {
                edges.push((i.min(j), i.max(j)));
            }
        }
        edges
    }

    fn rho_down(&self, u: &Dom, v: &Dom, c: &Coord) -> RhoDown<Coord> {
        match (u, v, c) {
            (Dom::T, Dom::Line(l), Coord::Vertex(w)) if w != l => RhoDown::Coords(vec![Coord::Pos(l.line_coordinate(&w.rep))]),
            _ => RhoDown::All,
        }
    }
}

/// The part of `F(a,b)` in a window: a prefix-closed set of reduced words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreeWindow {
    /// All words of length at most `n`.
    Ball(usize),
    /// All prefixes of the listed words.
    Prefixes(Vec<FreeWord>),
}

impl FreeWindow {
    pub fn words(&self) -> Vec<FreeWord> {
        match self {
            FreeWindow::Ball(n) => FreeWord::ball(*n),
            FreeWindow::Prefixes(ws) => FreeWord::prefix_closure(ws),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            FreeWindow::Ball(n) => format!("ball of radius {n} in F(a,b)"),
            FreeWindow::Prefixes(ws) => {
                let ws: Vec<String> = ws.iter().map(FreeWord::compact).collect();
                format!("prefixes of [{}] in F(a,b)", ws.join(", "))
            }
        }
    }
}

/// A finite window `F × [−m, m] × [−m, m]` and its table model.
pub struct F2xD2Window {
    pub closed: F2xD2,
    pub model: HierarchicalModel,
    pub index: Index<F2xD2>,
    pub free: FreeWindow,
    pub box_radius: i64,
    pub header: Vec<String>,
}

/// Tabulates the window `free × [−m, m]²` (or `free` alone for the reduced variant).
///
/// Lines meeting the window in a single point are not materialised: every
/// window point projects to that point, so they carry no information.
pub fn build_window(closed: F2xD2, free: FreeWindow, m: i64) -> Result<F2xD2Window> {
    if m < 0 {
        return Err(ZooError::Parameters("box radius must be nonnegative".into()));
    }
    let m = if closed.dihedral { m } else { 0 };
    let words = free.words();
    let mut points = Vec::with_capacity(words.len() * ((2 * m + 1) * (2 * m + 1)) as usize);
    for f in &words {
        for p1 in -m..=m {
            for p2 in -m..=m {
                points.push(Elt::new(f.clone(), p1, p2));
            }
        }
    }

    let mut vertices = BTreeSet::new();
    let mut line_coords: BTreeMap<TreeVertex, BTreeSet<i64>> = BTreeMap::new();
    for f in &words {
        for gen in [1, 2] {
            let (r, k) = f.split_suffix(gen);
            let v = TreeVertex { rep: r, gen };
            line_coords.entry(v.clone()).or_default().insert(k);
            vertices.insert(v);
        }
    }
    let key = |v: &TreeVertex| (v.rep.shortlex_key(), v.gen);
    let mut vertices: Vec<TreeVertex> = vertices.into_iter().collect();
    vertices.sort_by_key(key);
    let mut lines: Vec<(TreeVertex, Vec<i64>)> =
        line_coords.into_iter().filter(|(_, ks)| ks.len() >= 2).map(|(v, ks)| (v, ks.into_iter().collect())).collect();
    lines.sort_by_key(|(v, _)| key(v));

    let mut domains = vec![Dom::S, Dom::T];
    let mut coords = vec![vec![Coord::Unit], vertices.iter().cloned().map(Coord::Vertex).collect()];
    if closed.dihedral {
        let pos: Vec<Coord> = (-m..=m).map(Coord::Pos).collect();
        domains.extend([Dom::W1, Dom::W2, Dom::Q1, Dom::Q2, Dom::W12]);
        coords.extend([pos.clone(), pos, vec![Coord::Unit], vec![Coord::Unit], vec![Coord::Unit]]);
    }
    let line_count = lines.len();
    for (v, ks) in lines {
        domains.push(Dom::Line(v));
        coords.push(ks.into_iter().map(Coord::Pos).collect());
    }

    let e = closed.e;
    let (model, index) = tabulate_window(&closed, points, domains, coords, e)?;
    let mut header = vec![
        format!("family: product_F2xDxD{}", if closed.dihedral { "" } else { " (dihedral factors removed)" }),
        format!("window: {}{}", free.describe(), if closed.dihedral { format!(" times [-{m},{m}]^2") } else { String::new() }),
        format!("line domains materialised: {line_count} (cosets meeting the window in at least two points)"),
    ];
    if closed.dihedral {
        header.push("dihedral domains: W1 and W2 (the source's repeated W1 is read as W1 and W2)".into());
        header.push("containers: Q1 = T+W2, Q2 = T+W1, W12 = W1+W2 with one-point coordinate spaces".into());
    }
    Ok(F2xD2Window { closed, model, index, free, box_radius: m, header })
}

/// The standard zoo instance: ball of radius `n` in `F(a,b)` times `[−1, 1]²`,
/// with the twist exponent `N` recorded for the subgroups.
pub fn build_f2xdxd(n: usize, twist: i64) -> Result<F2xD2Window> {
    if twist < 1 {
        return Err(ZooError::Parameters("twist exponent N must be at least 1".into()));
    }
    if (n as i64) < twist + 2 {
        return Err(ZooError::Parameters(format!(
            "radius {n} cannot hold one syllable a^{twist} x1 x2 of length {}",
            twist + 2
        )));
    }
    let mut w = build_window(F2xD2::new(DECLARED_E), FreeWindow::Ball(n), 1)?;
    w.header.push(format!("twist exponent N = {twist}: A = <a^{twist} x1 x2>, B = <b^{twist} y1 y2>"));
    Ok(w)
}

/// Free parts of the alternating words `(a^N b^N)^…` and `(b^N a^N)^…` with
/// `k` syllables, and of `a^{±kN}`, `b^{±kN}`.
pub fn diagonal_words(k: usize, twist: i64) -> Vec<FreeWord> {
    let k = k as i64;
    let alternating = |first: i8| {
        let mut w = FreeWord::identity();
        for i in 0..k {
            let gen = if i % 2 == 0 { first } else { 3 - first };
            w = w.mul(&FreeWord::power(gen, twist));
        }
        w
    };
    vec![
        alternating(1),
        alternating(2),
        FreeWord::power(1, k * twist),
        FreeWord::power(1, -k * twist),
        FreeWord::power(2, k * twist),
        FreeWord::power(2, -k * twist),
    ]
}

/// A window that reaches `k` syllables of `A*B` in both dihedral directions:
/// the prefixes of [`diagonal_words`] times `[−k, k]²`. It holds the points
/// `(A B A ⋯, j, j)` for `|j| ≤ k` together with the off-diagonal points
/// `(·, j, −j)` that break realisation for `A*B`.
pub fn build_diagonal(k: usize, twist: i64) -> Result<F2xD2Window> {
    if twist < 1 || k < 1 {
        return Err(ZooError::Parameters("the diagonal window needs k ≥ 1 and N ≥ 1".into()));
    }
    let mut w = build_window(F2xD2::new(DECLARED_E), FreeWindow::Prefixes(diagonal_words(k, twist)), k as i64)?;
    w.header.push(format!("twist exponent N = {twist}: A = <a^{twist} x1 x2>, B = <b^{twist} y1 y2>"));
    Ok(w)
}
