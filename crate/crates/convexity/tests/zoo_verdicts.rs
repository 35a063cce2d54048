use hhs_action::GroupHierarchy;
use hhs_amalgam::{check_hypotheses, AmalgamData, Factor};
use hhs_coarse::Rational64;
use hhs_convexity::*;
use hhs_model::HierarchicalModel;
use hhs_zoo::f2xdxd::{F2xD2, DECLARED_E, REDUCED_E};
use hhs_zoo::zoo::{Family, ZooModel};

mod common;
use common::*;

fn twisted(h: &F2xD2, n: i64, m: u64) -> AmalgamData<'_, F2xD2> {
    AmalgamData::new(
        h,
        vec![Factor::cyclic("A", "A", h.a_generator(n)).unwrap(), Factor::cyclic("B", "B", h.b_generator(n)).unwrap()],
        vec![h.identity()],
        Box::new(|f, _| Some(if f == 0 { F2xD2::a_line() } else { F2xD2::b_line() })),
        m,
    )
    .unwrap()
}

fn drift(z: &ZooModel, h: &F2xD2) -> DriftReport {
    let m = &z.model;
    let d = twisted(h, z.params.twist, z.params.twist as u64);
    let locate = |u: &<F2xD2 as hhs_model::Hierarchy>::Domain| m.domains().id(&h.describe_domain(u)).ok();
    let sample = drift_qualifying(m, &d, 2, &locate).unwrap();
    no_drift_check(m, &frame(z), &subset(z, "A"), &subset(z, "B"), sample).unwrap()
}

#[test]
fn drift_in_the_diagonal_window_is_along_w1() {
    let z = default_zoo(Family::DiagonalF2xDxD);
    let r = drift(&z, &F2xD2::new(DECLARED_E));
    assert_eq!(r.sample.unlocated, 0);
    assert_eq!(r.sample.pairs, 32);
    let names: Vec<&str> = r.domains.iter().map(|d| d.domain.as_str()).collect();
    assert_eq!(names, vec!["W1", "W2", "W12"]);
    assert!(!r.passes);
    assert_eq!(r.witness.as_deref(), Some("W1"));
}

#[test]
fn without_dihedral_factors_drift_is_vacuous() {
    let z = default_zoo(Family::ProductF2);
    let r = drift(&z, &F2xD2::reduced(REDUCED_E));
    assert!(r.vacuous && r.passes);
    assert_eq!(r.r, Some(0));
}

fn combined(z: &ZooModel, h: &F2xD2, a: &SubsetSpec, b: &SubsetSpec, product: &SubsetSpec) -> CombinedReport {
    let d = twisted(h, z.params.twist, z.params.twist as u64);
    let hyp = check_hypotheses(&d, 2).unwrap();
    let subsets = AmalgamSubsets { a, b, product };
    combined_amalgam_convexity(&z.model, &frame(z), &subsets, &hyp, drift(z, h), &Budgets::default()).unwrap()
}

#[test]
fn the_diagonal_window_reproduces_the_counterexample() {
    let z = default_zoo(Family::DiagonalF2xDxD);
    let h = F2xD2::new(DECLARED_E);
    let r = combined(&z, &h, &subset(&z, "A"), &subset(&z, "B"), &subset(&z, "A*B"));
    assert!(r.hqc_a.passes && r.hqc_b.passes && r.fill.passes);
    assert!(!r.drift.passes);
    assert!(!r.hqc_product.passes);
    assert!(r.counterexample);
    // At N = 1 the scale hypothesis fails, so neither theorem is contradicted.
    assert!(!r.hypotheses_hold);
    assert!(r.quasiconvex_combination.consistent && r.strong_combination.consistent);
    let w = r.hqc_product.witness_family.last().unwrap();
    assert_eq!((w.point.as_str(), w.defect, w.distance), ("e,-8,8", 0, 16));
}

#[test]
fn without_dihedral_factors_the_product_is_hqc() {
    let z = default_zoo(Family::ProductF2);
    let h = F2xD2::reduced(REDUCED_E);
    let r = combined(&z, &h, &subset(&z, "A"), &subset(&z, "B"), &subset(&z, "A*B"));
    assert!(r.hqc_product.passes && r.drift.passes && r.fill.passes);
    assert!(!r.counterexample);
    assert!(r.quasiconvex_combination.consistent);
    assert_eq!(r.frak_t, Some(100 * r.theta.unwrap() + 100 * r.e + 4 * r.r.unwrap() + 1));
}

#[test]
fn a_trivial_factor_leaves_the_other() {
    let z = default_zoo(Family::ProductF2);
    let h = F2xD2::reduced(REDUCED_E);
    let id = SubsetSpec::new(&z.model, "C", Provenance::Subgroup, [z.basepoint]).unwrap();
    let b = subset(&z, "B");
    let r = combined(&z, &h, &id, &b, &b);
    assert!(r.hqc_product.passes);
}

fn assert_union_iff_fill(m: &HierarchicalModel, f: &Frame, a: &SubsetSpec, b: &SubsetSpec) -> (bool, bool) {
    let budgets = Budgets::default();
    let tol = default_tolerances(m);
    let factors = hqc_check(m, a, &tol, f, &budgets).unwrap().passes && hqc_check(m, b, &tol, f, &budgets).unwrap().passes;
    assert!(factors, "{} and {} should be HQC", a.name, b.name);
    let union = SubsetSpec::new(m, "union", Provenance::Arbitrary, a.members.iter().chain(b.members.iter())).unwrap();
    let hqc = hqc_check(m, &union, &tol, f, &budgets).unwrap().passes;
    let fill = fill_all_squares(m, a, b, f).unwrap().passes;
    assert_eq!(hqc, fill, "{} ∪ {}", a.name, b.name);
    (hqc, fill)
}

#[test]
fn union_is_hqc_exactly_when_squares_fill() {
    let cases = [
        (Family::GridZ2, "x-axis", "y-axis", false),
        (Family::ParallelLines, "y0", "y1", true),
        (Family::TreeFreeGroup, "a-axis", "ab-axis", true),
        (Family::ProductF2, "A", "B", true),
        (Family::DiagonalF2xDxD, "A", "B", true),
    ];
    for (family, a, b, expected) in cases {
        let z = default_zoo(family);
        let got = assert_union_iff_fill(&z.model, &frame(&z), &subset(&z, a), &subset(&z, b));
        assert_eq!(got, (expected, expected), "{family}");
    }
}

#[test]
fn kappa_and_lambda_bound_each_other() {
    let budgets = Budgets { path_pairs: 1000, ..Budgets::default() };
    for family in [Family::GridZ2, Family::ParallelLines, Family::TreeFreeGroup] {
        let z = default_zoo(family);
        let (m, f) = (&z.model, frame(&z));
        for s in &z.subsets {
            let s = subset(&z, &s.name);
            let k = hqc_check(m, &s, &default_tolerances(m), &f, &budgets).unwrap();
            let l = hqc_via_paths(m, &s, &default_path_lambdas(), &f, &budgets).unwrap();
            assert_eq!(k.passes, l.passes, "{family} {}", s.name);
        }
    }
}

#[test]
fn hulls_share_one_gauge() {
    let z = default_zoo(Family::GridZ2);
    let (m, f, b) = (&z.model, frame(&z), Budgets { path_pairs: 100_000, ..Budgets::default() });
    let seeds: [&[(i64, i64)]; 4] = [&[(0, 0), (3, 2)], &[(-2, 1), (1, -2)], &[(0, 0), (2, 0), (0, 2)], &[(-1, -1), (1, 3), (3, 0)]];
    for seed in seeds {
        let z0 = SubsetSpec::new(m, "z", Provenance::Arbitrary, seed.iter().map(|&(x, y)| grid_point(&z, x, y))).unwrap();
        let h = hull(m, &z0, Rational64::from_integer(1), 2, &b).unwrap();
        assert!(h.contains_seed && !h.partial, "{seed:?} {}", h.members.len());
        let report = hqc_check(m, &h.to_subset(m, "hull").unwrap(), &[0, 1, 2], &f, &b).unwrap();
        assert!(report.passes);
        // Hulls here are unions of coordinate boxes: κ(R) ≤ 2R.
        for s in &report.kappa.samples {
            assert!(Rational64::from_integer(s.full as i64) <= s.input * 2, "{seed:?}");
        }
    }
}
