//! Closed-form arithmetic against brute-force oracles.

use hhs_action::GroupHierarchy;
use hhs_model::Hierarchy;
use hhs_zoo::f2xdxd::{Coord, Dom, Elt, F2xD2};
use hhs_zoo::free::{dihedral, FreeWord, TreeVertex};
use proptest::prelude::*;

fn word() -> impl Strategy<Value = FreeWord> {
    prop::collection::vec(prop::sample::select(vec![1i8, -1, 2, -2]), 0..9).prop_map(FreeWord::from_letters)
}

/// Dihedral product by letters: left multiplication by `x` is `p ↦ 1 − p`,
/// by `y` is `p ↦ −1 − p`; position `p` spells an alternating word.
fn dihedral_oracle(p: i64, q: i64) -> i64 {
    let mut letters = Vec::new();
    let (mut first, n) = if p >= 0 { ('x', p) } else { ('y', -p) };
    for _ in 0..n {
        letters.push(first);
        first = if first == 'x' { 'y' } else { 'x' };
    }
    let mut r = q;
    for l in letters.iter().rev() {
        r = if *l == 'x' { 1 - r } else { -1 - r };
    }
    r
}

fn elt() -> impl Strategy<Value = Elt> {
    (word(), -5i64..6, -5i64..6).prop_map(|(f, p, q)| Elt::new(f, p, q))
}

fn line() -> impl Strategy<Value = TreeVertex> {
    (word(), prop::sample::select(vec![1i8, 2])).prop_map(|(f, g)| TreeVertex::coset(&f, g))
}

/// Position of the point of `r·⟨gen⟩` nearest `f`, by scanning the line.
fn nearest_on_line(l: &TreeVertex, f: &FreeWord) -> i64 {
    (-30..=30)
        .min_by_key(|&k| (l.rep.mul(&FreeWord::power(l.gen, k)).inverse().mul(f).len(), k))
        .unwrap()
}

/// Tree distance by walking: vertices adjacent iff their cosets share an element.
fn tree_distance_oracle(u: &TreeVertex, v: &TreeVertex) -> u32 {
    // The geodesic between two cosets f⟨g⟩ ∋ r and h⟨g'⟩ crosses one edge per
    // change of syllable type along the reduced word from u's coset to v's.
    // Here we simply search breadth-first over neighbouring cosets.
    use std::collections::{HashSet, VecDeque};
    let mut seen = HashSet::new();
    let mut q = VecDeque::from([(u.clone(), 0u32)]);
    seen.insert(u.clone());
    while let Some((w, d)) = q.pop_front() {
        if &w == v {
            return d;
        }
        let other = 3 - w.gen;
        for k in -4..=4 {
            let elt = w.rep.mul(&FreeWord::power(w.gen, k));
            let nb = TreeVertex::coset(&elt, other);
            if nb.rep.len() <= 12 && seen.insert(nb.clone()) {
                q.push_back((nb, d + 1));
            }
        }
    }
    panic!("not reached")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn free_group_laws(u in word(), v in word(), w in word()) {
        prop_assert_eq!(u.mul(&v).mul(&w), u.mul(&v.mul(&w)));
        prop_assert!(u.mul(&u.inverse()).is_empty());
        let back = FreeWord::parse_compact(&u.compact()).unwrap();
        prop_assert_eq!(back, u);
    }

    #[test]
    fn dihedral_matches_letter_action(p in -9i64..10, q in -9i64..10, r in -9i64..10) {
        prop_assert_eq!(dihedral::mul(p, q), dihedral_oracle(p, q));
        prop_assert_eq!(dihedral::mul(dihedral::mul(p, q), r), dihedral::mul(p, dihedral::mul(q, r)));
        prop_assert_eq!(dihedral::mul(p, dihedral::inverse(p)), 0);
    }

    #[test]
    fn line_coordinate_is_nearest_point(l in line(), f in word()) {
        prop_assume!(l.rep.len() <= 6);
        prop_assert_eq!(l.line_coordinate(&f), nearest_on_line(&l, &f));
    }

    #[test]
    fn tree_distance_matches_search(f in word(), g in word(), a in 1i8..3, b in 1i8..3) {
        let (u, v) = (TreeVertex::coset(&f, a), TreeVertex::coset(&g, b));
        prop_assume!(u.rep.len() <= 5 && v.rep.len() <= 5);
        prop_assert_eq!(u.distance(&v), tree_distance_oracle(&u, &v));
        let label = TreeVertex::parse_label(&u.label()).unwrap();
        prop_assert_eq!(label, u);
    }

    #[test]
    fn action_is_natural(g in elt(), x in elt(), l in line()) {
        let h = F2xD2::new(2);
        let gx = h.act_point(&g, &x);
        for u in [Dom::S, Dom::T, Dom::W1, Dom::W2, Dom::Q1, Dom::W12, Dom::Line(l.clone())] {
            let gu = h.act_domain(&g, &u);
            let mut lhs: Vec<Coord> = h.project(&u, &x).unwrap().iter().map(|c| h.act_coord(&g, &u, c)).collect();
            let mut rhs = h.project(&gu, &gx).unwrap();
            lhs.sort();
            rhs.sort();
            prop_assert_eq!(lhs, rhs, "domain {:?}", u);
        }
    }

    #[test]
    fn action_preserves_relations_and_rho(g in elt(), l1 in line(), l2 in line()) {
        let h = F2xD2::new(2);
        let doms = [Dom::S, Dom::T, Dom::W1, Dom::W2, Dom::Q1, Dom::Q2, Dom::W12, Dom::Line(l1), Dom::Line(l2)];
        for u in &doms {
            for v in &doms {
                let (gu, gv) = (h.act_domain(&g, u), h.act_domain(&g, v));
                prop_assert_eq!(h.relation(u, v), h.relation(&gu, &gv));
                if let Some(r) = h.rho(u, v) {
                    let mut lhs: Vec<Coord> = r.iter().map(|c| h.act_coord(&g, v, c)).collect();
                    let mut rhs = h.rho(&gu, &gv).unwrap();
                    lhs.sort();
                    rhs.sort();
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn coordinate_maps_are_isometries(g in elt(), l in line(), c1 in -6i64..7, c2 in -6i64..7, f1 in word(), f2 in word()) {
        let h = F2xD2::new(2);
        let u = Dom::Line(l);
        let gu = h.act_domain(&g, &u);
        let (a, b) = (Coord::Pos(c1), Coord::Pos(c2));
        prop_assert_eq!(h.coord_distance(&u, &a, &b), h.coord_distance(&gu, &h.act_coord(&g, &u, &a), &h.act_coord(&g, &u, &b)));
        let (v, w) = (Coord::Vertex(TreeVertex::coset(&f1, 1)), Coord::Vertex(TreeVertex::coset(&f2, 2)));
        prop_assert_eq!(h.coord_distance(&Dom::T, &v, &w), h.coord_distance(&Dom::T, &h.act_coord(&g, &Dom::T, &v), &h.act_coord(&g, &Dom::T, &w)));
    }
}

#[test]
fn twisted_generator_translates_the_a_line_by_n() {
    let h = F2xD2::new(2);
    for n in 1..12 {
        let g = h.a_generator(n);
        let d = h.domain_distance(&F2xD2::a_line(), &h.basepoint(), &h.orbit_point(&g)).unwrap();
        assert_eq!(d, n as u32);
        assert_eq!(h.project(&Dom::W1, &h.orbit_point(&g)).unwrap(), vec![Coord::Pos(1)]);
        let gb = h.b_generator(n);
        assert_eq!(h.domain_distance(&F2xD2::b_line(), &h.basepoint(), &h.orbit_point(&gb)).unwrap(), n as u32);
        assert_eq!(h.domain_distance(&F2xD2::a_line(), &h.basepoint(), &h.orbit_point(&gb)).unwrap(), 0);
    }
}

#[test]
fn relations_of_the_named_domains() {
    use hhs_model::Relation::*;
    let h = F2xD2::new(2);
    let la = F2xD2::a_line();
    assert_eq!(h.relation(&Dom::T, &Dom::W1), Orthogonal);
    assert_eq!(h.relation(&Dom::W1, &Dom::W2), Orthogonal);
    assert_eq!(h.relation(&la, &Dom::T), NestedIn);
    assert_eq!(h.relation(&la, &Dom::W1), Orthogonal);
    assert_eq!(h.relation(&la, &F2xD2::b_line()), Transverse);
    assert_eq!(h.relation(&Dom::Q1, &Dom::Q2), Transverse);
    let r = F2xD2::reduced(2);
    assert_eq!(r.relation(&Dom::T, &Dom::S), NestedIn);
    assert_eq!(r.relation(&la, &F2xD2::b_line()), Transverse);
}

#[test]
fn long_runs_print_with_exponents() {
    let w = FreeWord::power(1, 200).mul(&FreeWord::power(-2, 3)).mul(&FreeWord::power(1, -4));
    assert_eq!(w.compact(), "a^200BBBA^4");
    assert_eq!(FreeWord::parse_compact("a^200BBBA^4"), Some(w));
    assert_eq!(FreeWord::parse_compact("aA"), None);
    assert_eq!(FreeWord::parse_compact("a^"), None);
}
