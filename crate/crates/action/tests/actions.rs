use std::collections::BTreeMap;

use hhs_action::{orbit_ball, tabulate, verify_automorphism, Automorphism, GroupHierarchy, GroupSpec, WindowIndex, Word};
use hhs_coarse::sets::VertexSet;
use hhs_coarse::FiniteGraph;
use hhs_model::{DomainSet, Hierarchy, HierarchicalModel, ProjectionTable, Relation};
use proptest::prelude::*;

/// ℤ² acting on itself by translation, with domains S ⊋ X ⊥ Y.
struct Lattice;

impl Hierarchy for Lattice {
    type Point = (i64, i64);
    type Domain = u8;
    type Coord = i64;
    fn constant(&self) -> u32 {
        2
    }
    fn relation(&self, u: &u8, v: &u8) -> Relation {
        match (u, v) {
            _ if u == v => Relation::Equal,
            (0, _) => Relation::Contains,
            (_, 0) => Relation::NestedIn,
            _ => Relation::Orthogonal,
        }
    }
    fn project(&self, u: &u8, x: &(i64, i64)) -> Option<Vec<i64>> {
        Some(vec![[0, x.0, x.1][*u as usize]])
    }
    fn rho(&self, from: &u8, to: &u8) -> Option<Vec<i64>> {
        (*to == 0 && *from != 0).then(|| vec![0])
    }
    fn coord_distance(&self, _u: &u8, a: &i64, b: &i64) -> Option<u32> {
        Some(a.abs_diff(*b) as u32)
    }
}

impl GroupHierarchy for Lattice {
    type Element = (i64, i64);
    fn identity(&self) -> (i64, i64) {
        (0, 0)
    }
    fn multiply(&self, g: &(i64, i64), h: &(i64, i64)) -> (i64, i64) {
        (g.0 + h.0, g.1 + h.1)
    }
    fn inverse(&self, g: &(i64, i64)) -> (i64, i64) {
        (-g.0, -g.1)
    }
    fn act_point(&self, g: &(i64, i64), x: &(i64, i64)) -> (i64, i64) {
        self.multiply(g, x)
    }
    fn act_domain(&self, _g: &(i64, i64), u: &u8) -> u8 {
        *u
    }
    fn act_coord(&self, g: &(i64, i64), u: &u8, c: &i64) -> i64 {
        c + [0, g.0, g.1][*u as usize]
    }
    fn basepoint(&self) -> (i64, i64) {
        (0, 0)
    }
}

const R: i64 = 3;

fn lattice_window() -> (HierarchicalModel, WindowIndex<(i64, i64), u8, i64>) {
    let side = (2 * R + 1) as usize;
    let pts: Vec<(i64, i64)> = (-R..=R).flat_map(|x| (-R..=R).map(move |y| (x, y))).collect();
    let ambient = FiniteGraph::grid_box(R).unwrap();
    let line = FiniteGraph::path(side).unwrap();
    let unit = FiniteGraph::path(1).unwrap();
    let d = DomainSet::new(vec!["S".into(), "X".into(), "Y".into()], &[(1, 0), (2, 0)], &[(1, 2)], &[]).unwrap();
    let pi = vec![
        ProjectionTable::constant(pts.len(), VertexSet::singleton(0)),
        ProjectionTable::from_images(pts.iter().map(|p| VertexSet::singleton((p.0 + R) as usize)).collect()),
        ProjectionTable::from_images(pts.iter().map(|p| VertexSet::singleton((p.1 + R) as usize)).collect()),
    ];
    let rp = BTreeMap::from([((1, 0), VertexSet::singleton(0)), ((2, 0), VertexSet::singleton(0))]);
    let all = VertexSet::all(&line);
    let rm = BTreeMap::from([((0, 1), ProjectionTable::constant(1, all.clone())), ((0, 2), ProjectionTable::constant(1, all))]);
    let m = HierarchicalModel::new(ambient, d, vec![unit, line.clone(), line], pi, rp, rm, 2).unwrap();
    let coords: Vec<i64> = (-R..=R).collect();
    let idx = WindowIndex::new(pts, vec![0, 1, 2], vec![vec![0], coords.clone(), coords]);
    (m, idx)
}

/// The free group on two letters, as reduced words over ±1, ±2.
struct Free;

fn reduce(mut w: Vec<i8>) -> Vec<i8> {
    let mut out: Vec<i8> = Vec::new();
    for l in w.drain(..) {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

impl Hierarchy for Free {
    type Point = Vec<i8>;
    type Domain = ();
    type Coord = Vec<i8>;
    fn constant(&self) -> u32 {
        1
    }
    fn relation(&self, _: &(), _: &()) -> Relation {
        Relation::Equal
    }
    fn project(&self, _: &(), x: &Vec<i8>) -> Option<Vec<Vec<i8>>> {
        Some(vec![x.clone()])
    }
    fn rho(&self, _: &(), _: &()) -> Option<Vec<Vec<i8>>> {
        None
    }
    fn coord_distance(&self, _: &(), a: &Vec<i8>, b: &Vec<i8>) -> Option<u32> {
        let inv: Vec<i8> = a.iter().rev().map(|l| -l).collect();
        Some(reduce(inv.into_iter().chain(b.iter().copied()).collect()).len() as u32)
    }
}

impl GroupHierarchy for Free {
    type Element = Vec<i8>;
    fn identity(&self) -> Vec<i8> {
        Vec::new()
    }
    fn multiply(&self, g: &Vec<i8>, h: &Vec<i8>) -> Vec<i8> {
        reduce(g.iter().chain(h).copied().collect())
    }
    fn inverse(&self, g: &Vec<i8>) -> Vec<i8> {
        g.iter().rev().map(|l| -l).collect()
    }
    fn act_point(&self, g: &Vec<i8>, x: &Vec<i8>) -> Vec<i8> {
        self.multiply(g, x)
    }
    fn act_domain(&self, _: &Vec<i8>, _: &()) {}
    fn act_coord(&self, g: &Vec<i8>, _: &(), c: &Vec<i8>) -> Vec<i8> {
        self.multiply(g, c)
    }
    fn basepoint(&self) -> Vec<i8> {
        Vec::new()
    }
}

fn free_spec() -> GroupSpec<Vec<i8>> {
    GroupSpec::new(vec![("a".into(), vec![1]), ("b".into(), vec![2])]).unwrap()
}

fn lattice_spec() -> GroupSpec<(i64, i64)> {
    GroupSpec::new(vec![("s".into(), (1, 0)), ("t".into(), (0, 1))]).unwrap()
}

#[test]
fn identity_is_an_automorphism_with_full_coverage() {
    let (m, idx) = lattice_window();
    let a = tabulate(&Lattice, &idx, &(0, 0));
    assert_eq!(a, Automorphism::identity(&m));
    let c = verify_automorphism(&m, &a).unwrap();
    assert!(c.holds);
    assert_eq!(c.squares_skipped, 0);
    assert_eq!(c.coverage_percent(), 100.0);
}

#[test]
fn translations_hold_with_partial_coverage() {
    let (m, idx) = lattice_window();
    let a = tabulate(&Lattice, &idx, &(1, 0));
    let c = verify_automorphism(&m, &a).unwrap();
    assert!(c.holds, "{:?}", c.failures);
    let side = (2 * R + 1) as usize;
    assert_eq!((c.points_mapped, c.points_total), ((side - 1) * side, side * side));
    assert!(c.squares_skipped > 0);
}

#[test]
fn corrupted_coordinate_map_is_reported() {
    let (m, idx) = lattice_window();
    let mut a = tabulate(&Lattice, &idx, &(0, 1));
    a.coord_isos[1].swap(0, 1);
    let c = verify_automorphism(&m, &a).unwrap();
    assert!(!c.holds);
    assert!(c.failures[0].contains('X'), "{:?}", c.failures);
}

#[test]
fn swapping_orthogonal_axes_breaks_the_projection_square() {
    let (m, idx) = lattice_window();
    let mut a = tabulate(&Lattice, &idx, &(0, 0));
    a.domain_map.swap(1, 2);
    a.coord_isos.swap(1, 2);
    let c = verify_automorphism(&m, &a).unwrap();
    assert!(!c.holds);
    assert!(c.failures.iter().any(|f| f.starts_with("projection square")));
}

#[test]
fn malformed_tables_are_errors() {
    let (m, idx) = lattice_window();
    let mut a = tabulate(&Lattice, &idx, &(0, 0));
    a.x_map.pop();
    assert!(verify_automorphism(&m, &a).is_err());
    let mut b = tabulate(&Lattice, &idx, &(0, 0));
    b.domain_map[1] = None;
    assert!(verify_automorphism(&m, &b).is_err());
}

#[test]
fn free_group_ball_of_radius_two_has_seventeen_elements() {
    let spec = free_spec();
    assert_eq!(orbit_ball(&Free, &spec, 2).len(), 17);
    assert_eq!(orbit_ball(&Free, &spec, 3).len(), 53);
    let zero = orbit_ball(&Free, &spec, 0);
    assert_eq!(zero.len(), 1);
    assert!(zero[0].word.is_identity());
    assert_eq!(zero[0].point, Vec::<i8>::new());
}

#[test]
fn orbit_ball_deduplicates_by_element() {
    // Reduced words of length ≤ 2 in s, t name the 13 points of the ℓ¹ ball.
    let ball = orbit_ball(&Lattice, &lattice_spec(), 2);
    assert_eq!(ball.len(), 13);
    let spec = lattice_spec();
    assert_eq!(spec.format(&ball[1].word), "s");
    assert_eq!(spec.format(&ball[2].word), "s^-1");
}

#[test]
fn words_parse_format_and_evaluate() {
    let spec = free_spec();
    let w = spec.parse("a^2 b^-1 * a a^-1 b").unwrap();
    assert_eq!(spec.format(&w), "a^2");
    assert_eq!(spec.evaluate(&Free, &w), vec![1, 1]);
    assert!(spec.parse("e").unwrap().is_identity());
    assert!(spec.parse("c").is_err());
    assert!(spec.parse("a^x").is_err());
    assert_eq!(spec.evaluate(&Free, &Word::identity()), Vec::<i8>::new());
    assert_eq!(spec.evaluate(&Free, &spec.parse("a b").unwrap()), vec![1, 2]);
}

fn free_word() -> impl Strategy<Value = Word> {
    prop::collection::vec((0usize..2, -3i64..4), 0..5)
        .prop_map(|v| Word::new(v.into_iter().map(|(generator, exponent)| hhs_action::Syllable { generator, exponent })))
}

proptest! {
    #[test]
    fn evaluation_is_a_homomorphism(u in free_word(), v in free_word()) {
        let spec = free_spec();
        let lhs = spec.evaluate(&Free, &u.concat(&v));
        let rhs = Free.multiply(&spec.evaluate(&Free, &u), &spec.evaluate(&Free, &v));
        prop_assert_eq!(lhs, rhs);
        prop_assert!(u.concat(&u.inverse()).is_identity());
        prop_assert_eq!(spec.parse(&spec.format(&u)).unwrap(), u);
    }

    #[test]
    fn lattice_tables_compose(a in -2i64..3, b in -2i64..3, c in -2i64..3, d in -2i64..3) {
        let (m, idx) = lattice_window();
        let (g, h) = ((a, b), (c, d));
        let composed = tabulate(&Lattice, &idx, &g).compose(&tabulate(&Lattice, &idx, &h));
        let direct = tabulate(&Lattice, &idx, &Lattice.multiply(&g, &h));
        prop_assert!(composed.agrees_with(&direct));
        prop_assert!(direct.equivalent(&tabulate(&Lattice, &idx, &Lattice.multiply(&h, &g))));
        prop_assert!(verify_automorphism(&m, &composed).unwrap().holds);
    }
}
