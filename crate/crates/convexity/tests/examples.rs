use hhs_coarse::{FiniteGraph, Rational64, VertexSet};
use hhs_convexity::*;
use hhs_zoo::zoo::Family;

mod common;
use common::*;

fn one() -> Rational64 {
    Rational64::from_integer(1)
}

#[test]
fn whole_ambient_has_zero_gauges() {
    let z = default_zoo(Family::GridZ2);
    let (m, f, b) = (&z.model, frame(&z), Budgets::default());
    let x = SubsetSpec::whole(m);
    let h = hqc_check(m, &x, &default_tolerances(m), &f, &b).unwrap();
    assert!(h.passes);
    assert!(h.kappa.samples.iter().all(|s| s.half == 0 && s.full == 0));
    let p = hqc_via_paths(m, &x, &[one()], &f, &b).unwrap();
    assert_eq!(p.lambda.value(one()), Some(0));
    let d = orth_dichotomy(m, &x, &f, &[0]).unwrap();
    assert_eq!(d.theta, Some(0));
}

#[test]
fn grid_axis_kappa_is_the_tolerance() {
    let z = default_zoo(Family::GridZ2);
    let (m, f) = (&z.model, frame(&z));
    let axis = subset(&z, "x-axis");
    let h = hqc_check(m, &axis, &[0, 1, 2], &f, &Budgets::default()).unwrap();
    assert!(h.passes);
    // Oracle: a grid point (x, y) has coordinate defect |y| and distance |y|.
    let oracle = |r: i64| {
        (0..m.ambient().len())
            .map(|v| grid_coords(m.ambient().label(v)).1.abs())
            .filter(|&y| y <= r)
            .max()
            .unwrap() as u32
    };
    let full: Vec<u32> = h.kappa.samples.iter().map(|s| s.full).collect();
    assert_eq!(full, vec![oracle(0), oracle(1), oracle(2)]);
    assert_eq!(full, vec![0, 1, 2]);
}

#[test]
fn grid_axes_fail_realisation_along_the_diagonal() {
    let z = default_zoo(Family::GridZ2);
    let (m, f) = (&z.model, frame(&z));
    let h = hqc_check(m, &subset(&z, "axes"), &default_tolerances(m), &f, &Budgets::default()).unwrap();
    assert!(!h.passes);
    assert!(matches!(h.failure, Some(HqcFailure::Realisation { .. })));
    assert_eq!(h.witness_family.len(), 10);
    for w in &h.witness_family {
        let (x, y) = grid_coords(&w.point);
        assert_eq!((x.abs(), y.abs()), (w.radius as i64, w.radius as i64));
        assert_eq!((w.defect, w.distance), (0, w.radius));
    }
}

#[test]
fn hierarchy_paths_between_equal_points_are_constant() {
    let z = zoo(Family::GridZ2, 2, 1);
    let v = grid_point(&z, 1, -1);
    let set = enumerate_hierarchy_paths(&z.model, v, v, one(), 100).unwrap();
    assert_eq!(set.paths, vec![vec![v]]);
}

#[test]
fn grid_corners_are_joined_by_every_staircase() {
    let z = zoo(Family::GridZ2, 2, 1);
    let m = &z.model;
    let (x, y) = (grid_point(&z, -2, -2), grid_point(&z, 2, 2));
    let set = enumerate_hierarchy_paths(m, x, y, one(), 100_000).unwrap();
    assert!(!set.partial);
    // Oracle: monotone staircases from (−2,−2) to (2,2), C(8,4) of them.
    assert_eq!(set.paths.len(), 70);
    for p in &set.paths {
        let c: Vec<(i64, i64)> = p.iter().map(|&v| grid_coords(m.ambient().label(v))).collect();
        assert!(c.windows(2).all(|w| w[1].0 >= w[0].0 && w[1].1 >= w[0].1));
        assert!(is_hierarchy_path(m, p, one()).unwrap());
    }
}

#[test]
fn leaving_and_reentering_a_line_is_rejected() {
    let z = default_zoo(Family::GridZ2);
    let m = &z.model;
    let mut detour: Vec<usize> = (0..=5).map(|y| grid_point(&z, 0, y)).collect();
    detour.extend((0..=5).rev().map(|y| grid_point(&z, 1, y)));
    assert!(!is_hierarchy_path(m, &detour, one()).unwrap());
    assert!(!is_hierarchy_path(m, &detour, Rational64::new(3, 2)).unwrap());
    assert!(is_hierarchy_path(m, &[grid_point(&z, 0, 0), grid_point(&z, 1, 0)], one()).unwrap());
    // A short bump passes once λ tolerates it.
    let bump = [grid_point(&z, 0, 0), grid_point(&z, 0, 1), grid_point(&z, 1, 1), grid_point(&z, 1, 0)];
    assert!(!is_hierarchy_path(m, &bump, one()).unwrap());
    assert!(is_hierarchy_path(m, &bump, Rational64::from_integer(2)).unwrap());
}

#[test]
fn path_gauge_on_the_grid() {
    let z = default_zoo(Family::GridZ2);
    let (m, f, b) = (&z.model, frame(&z), Budgets::default());
    let axis = hqc_via_paths(m, &subset(&z, "x-axis"), &[one()], &f, &b).unwrap();
    assert_eq!(axis.lambda.value(one()), Some(0));
    assert!(axis.passes);
    // Every one of the 820 member pairs, so the pair through (10, 10) is met.
    let all = Budgets { path_pairs: 1000, ..Budgets::default() };
    let axes = hqc_via_paths(m, &subset(&z, "axes"), &[one()], &f, &all).unwrap();
    assert!(!axes.passes);
    let s = &axes.lambda.samples[0];
    assert_eq!((s.half, s.full), (5, 10));
}

#[test]
fn lambda0_on_the_grid_is_one() {
    let z = zoo(Family::GridZ2, 3, 1);
    let pairs = [(grid_point(&z, -3, -3), grid_point(&z, 3, 3)), (grid_point(&z, 0, 2), grid_point(&z, 1, -3))];
    let r = measure_lambda0(&z.model, &pairs, 10_000).unwrap();
    assert_eq!(r.lambda0, Some(one()));
}

#[test]
fn gates_on_the_grid() {
    let z = default_zoo(Family::GridZ2);
    let m = &z.model;
    let axis = subset(&z, "x-axis");
    assert_eq!(gate(m, &axis, grid_point(&z, 3, 5)).unwrap().point, grid_point(&z, 3, 0));
    let on = grid_point(&z, -7, 0);
    assert_eq!(gate(m, &axis, on).unwrap(), Gate { point: on, defect: 0 });
    let gi = gate_vs_intersection(m, &subset(&z, "y-axis"), &axis).unwrap();
    assert_eq!((gi.gate_image, gi.intersection, gi.hausdorff), (vec!["0,0".to_string()], vec!["0,0".to_string()], Some(0)));
    let same = gate_vs_intersection(m, &axis, &axis).unwrap();
    assert_eq!(same.hausdorff, Some(0));
}

#[test]
fn gates_in_the_product_window() {
    let z = default_zoo(Family::DiagonalF2xDxD);
    let m = &z.model;
    let (a, b) = (subset(&z, "A"), subset(&z, "B"));
    // The B-orbit gates onto A at the identity: π_{L_a} of B is a single point.
    let ctx = GateContext::new(m, &a.members.to_usizes());
    let table: Vec<(String, String, u32)> = b
        .members
        .iter()
        .map(|x| {
            let g = ctx.gate(x);
            (m.ambient().label(x).to_string(), m.ambient().label(g.point).to_string(), g.defect)
        })
        .collect();
    assert!(table.iter().all(|(_, g, _)| g == "e,0,0" || g == "a,1,1"), "{table:?}");
    let gi = gate_vs_intersection(m, &b, &a).unwrap();
    assert_eq!(gi.intersection, vec!["e,0,0".to_string()]);
    assert!(gi.hausdorff.unwrap() <= 1);
}

fn path_tree(n: usize) -> FiniteGraph {
    FiniteGraph::path(n).unwrap()
}

#[test]
fn union_bound_examples() {
    // A tree with two geodesics at distance 5: a path of length 5 joining the
    // middles of two paths of length 4.
    let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (7, 8), (8, 9)];
    edges.extend([(2, 10), (10, 11), (11, 12), (12, 13), (13, 7)]);
    let t = FiniteGraph::from_edges(14, &edges).unwrap();
    let y = VertexSet::from_usizes(0..=4).unwrap();
    let y2 = VertexSet::from_usizes(5..=9).unwrap();
    let u = union_qc_hyperbolic(&t, &y, &y2, Some(0)).unwrap();
    assert_eq!((u.delta, u.distance, u.bound), (0, 5, 6));
    assert!(u.holds);
    // Oracle: the geodesic between the two sets is the bridge, whose middle
    // lies 2 steps from either end after rounding down.
    assert_eq!(u.measured, 2);

    let p = path_tree(6);
    let z = VertexSet::from_usizes([0, 1]).unwrap();
    let touching = union_qc_hyperbolic(&p, &z, &VertexSet::from_usizes([1, 2]).unwrap(), Some(0)).unwrap();
    assert_eq!(touching.bound, 1);
    assert!(touching.measured <= 1);

    let sparse = VertexSet::from_usizes([0, 4]).unwrap();
    let same = union_qc_hyperbolic(&p, &sparse, &sparse, None).unwrap();
    assert_eq!((same.r, same.measured), (2, 2));
}

#[test]
fn fill_all_squares_examples() {
    let grid = default_zoo(Family::GridZ2);
    let f = fill_all_squares(&grid.model, &subset(&grid, "x-axis"), &subset(&grid, "y-axis"), &frame(&grid)).unwrap();
    assert!(!f.passes);
    let w = f.witness.unwrap();
    assert_eq!((w.u.as_str(), w.v.as_str(), w.density_u, w.density_v), ("X", "Y", 10, 10));

    let lines = default_zoo(Family::ParallelLines);
    let f = fill_all_squares(&lines.model, &subset(&lines, "y0"), &subset(&lines, "y1"), &frame(&lines)).unwrap();
    assert_eq!((f.passes, f.t), (true, Some(1)));

    let diag = default_zoo(Family::DiagonalF2xDxD);
    let f = fill_all_squares(&diag.model, &subset(&diag, "A"), &subset(&diag, "B"), &frame(&diag)).unwrap();
    assert!(f.passes);
    assert_eq!(f.t, Some(f.k + 1));

    // Every gate of the whole space is the identity, so each square is filled
    // with closed defect 0, the strict constant being 1.
    let x = SubsetSpec::whole(&grid.model);
    let f = fill_all_squares(&grid.model, &x, &x, &frame(&grid)).unwrap();
    assert_eq!((f.defect_full, f.t), (0, Some(1)));
}

#[test]
fn dichotomy_examples() {
    let grid = default_zoo(Family::GridZ2);
    let (m, f) = (&grid.model, frame(&grid));
    let point = SubsetSpec::new(m, "p", Provenance::Arbitrary, [grid_point(&grid, 2, 3)]).unwrap();
    let d = orth_dichotomy(m, &point, &f, &[1]).unwrap();
    assert_eq!((d.theta, d.holds_at.clone()), (Some(1), vec![(1, true)]));
    let whole = orth_dichotomy(m, &SubsetSpec::whole(m), &f, &[]).unwrap();
    assert_eq!(whole.theta, Some(0));

    let diag = default_zoo(Family::DiagonalF2xDxD);
    let d = orth_dichotomy(&diag.model, &subset(&diag, "A"), &frame(&diag), &[]).unwrap();
    assert!(!d.passes);
    let w = d.witness.unwrap();
    assert_eq!((w.u.as_str(), w.v.as_str()), ("La:e", "W1"));
}

#[test]
fn hulls() {
    let z = zoo(Family::GridZ2, 2, 1);
    let m = &z.model;
    let b = Budgets::default();
    let point = SubsetSpec::new(m, "p", Provenance::Arbitrary, [grid_point(&z, 1, 1)]).unwrap();
    let h = hull(m, &point, one(), 1, &b).unwrap();
    assert_eq!(h.members, point.members.to_usizes());

    let corners = SubsetSpec::new(m, "c", Provenance::Arbitrary, [grid_point(&z, -2, -2), grid_point(&z, 2, 2)]).unwrap();
    let h = hull(m, &corners, one(), 1, &b).unwrap();
    assert!(!h.partial && h.contains_seed);
    assert_eq!(h.members.len(), 25);

    // Two axis points: the hull stays on the axis, within Λ(1) = 0 of it.
    let g = default_zoo(Family::GridZ2);
    let ends = SubsetSpec::new(&g.model, "e", Provenance::Arbitrary, [grid_point(&g, -3, 0), grid_point(&g, 3, 0)]).unwrap();
    let h = hull(&g.model, &ends, one(), 2, &b).unwrap();
    let labels: Vec<(i64, i64)> = h.members.iter().map(|&v| grid_coords(g.model.ambient().label(v))).collect();
    assert_eq!(labels, (-3..=3).map(|x| (x, 0)).collect::<Vec<_>>());
}
