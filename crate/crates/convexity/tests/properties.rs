use hhs_coarse::{FiniteGraph, VertexSet};
use hhs_convexity::*;
use hhs_zoo::zoo::Family;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::*;

fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> FiniteGraph {
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    FiniteGraph::from_edges(n, &edges).unwrap()
}

/// A random tree with a few chords, so cycles of assorted lengths appear.
fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> FiniteGraph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for _ in 0..rng.gen_range(1..=n / 4 + 1) {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && !edges.contains(&(u.min(v), u.max(v))) && !edges.contains(&(u.max(v), u.min(v))) {
            edges.push((u.min(v), u.max(v)));
        }
    }
    FiniteGraph::from_edges(n, &edges).unwrap()
}

fn random_set(rng: &mut ChaCha8Rng, n: usize) -> VertexSet {
    let k = rng.gen_range(1..=4);
    VertexSet::from_usizes((0..k).map(|_| rng.gen_range(0..n))).unwrap()
}

#[test]
fn union_bound_on_random_trees_and_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let mut checked = 0;
    for round in 0..120 {
        let n = rng.gen_range(6..=64);
        let g = if round % 2 == 0 { random_tree(&mut rng, n) } else { random_graph(&mut rng, n) };
        let (y, y2) = (random_set(&mut rng, n), random_set(&mut rng, n));
        let u = union_qc_hyperbolic(&g, &y, &y2, None).unwrap();
        assert!(u.holds, "{u:?} on {:?}", g.edge_list());
        assert_eq!(u.bound, u.r + 2 * u.delta + u.distance + 1);
        checked += 1;
    }
    assert_eq!(checked, 120);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gates_fix_members(picks in prop::collection::vec(0usize..81, 1..12), which in 0usize..12) {
        let z = zoo(Family::GridZ2, 4, 1);
        let s = SubsetSpec::new(&z.model, "s", Provenance::Arbitrary, picks.iter().copied()).unwrap();
        let members = s.members.to_usizes();
        let x = members[which % members.len()];
        prop_assert_eq!(gate(&z.model, &s, x).unwrap(), Gate { point: x, defect: 0 });
    }

    #[test]
    fn gates_fix_members_in_the_tree(picks in prop::collection::vec(0usize..161, 1..10), which in 0usize..10) {
        let z = zoo(Family::TreeFreeGroup, 4, 1);
        let s = SubsetSpec::new(&z.model, "s", Provenance::Arbitrary, picks.iter().copied()).unwrap();
        let members = s.members.to_usizes();
        let x = members[which % members.len()];
        let ctx = GateContext::new(&z.model, &members);
        prop_assert_eq!(ctx.gate(x).point, x);
        // In a tree the gate is the nearest member: the one domain is the space.
        let to_s = z.model.ambient().distances_to_set(&members);
        for v in (0..z.model.ambient().len()).step_by(7) {
            let g = ctx.gate(v).point;
            prop_assert_eq!(z.model.ambient().dist(v, g), to_s[v]);
        }
    }

    #[test]
    fn gauge_tables_are_monotone(picks in prop::collection::vec(0usize..441, 1..20)) {
        let z = default_zoo(Family::GridZ2);
        let s = SubsetSpec::new(&z.model, "s", Provenance::Arbitrary, picks.iter().copied()).unwrap();
        let h = hqc_check(&z.model, &s, &[2, 0, 1], &frame(&z), &Budgets::default()).unwrap();
        let t = &h.kappa.samples;
        prop_assert!(t.windows(2).all(|w| w[0].input < w[1].input && w[0].half <= w[1].half && w[0].full <= w[1].full));
    }
}
