use hhs_action::{tabulate, verify_automorphism, Automorphism, GroupHierarchy};
use hhs_model::{audit, AuditOptions};
use hhs_zoo::f2xdxd::{build_f2xdxd, build_window, F2xD2, FreeWindow};
use hhs_zoo::free::{dihedral, FreeWord};
use hhs_zoo::{build, parse_reference, Family, ZooParams};

fn word_metric(a: &hhs_zoo::f2xdxd::Elt, b: &hhs_zoo::f2xdxd::Elt) -> u32 {
    let h = F2xD2::new(2);
    let g = h.multiply(&h.inverse(a), b);
    g.f.len() as u32 + g.p1.unsigned_abs() as u32 + g.p2.unsigned_abs() as u32
}

#[test]
fn window_metric_is_the_word_metric() {
    let w = build_f2xdxd(4, 2).unwrap();
    let g = w.model.ambient();
    let pts = w.index.points();
    for s in (0..pts.len()).step_by(7) {
        let d = g.distances_from(s);
        for t in 0..pts.len() {
            assert_eq!(d[t], word_metric(&pts[s], &pts[t]), "{} {}", g.label(s), g.label(t));
        }
    }
}

#[test]
fn coordinate_windows_are_exact() {
    let w = build_f2xdxd(4, 2).unwrap();
    let h = &w.closed;
    for (u, dom) in w.index.domains().iter().enumerate() {
        let cs = w.index.coords(u);
        let g = w.model.coord(u);
        for i in 0..cs.len() {
            let d = g.distances_from(i);
            for j in 0..cs.len() {
                assert_eq!(Some(d[j]), hhs_model::Hierarchy::coord_distance(h, dom, &cs[i], &cs[j]));
            }
        }
    }
}

#[test]
fn every_generator_is_a_window_automorphism() {
    let w = build_f2xdxd(4, 2).unwrap();
    let h = &w.closed;
    let spec = h.generators();
    let mut gens: Vec<_> = (0..spec.len()).map(|i| spec.element(i).clone()).collect();
    gens.push(h.a_generator(2));
    gens.push(h.b_generator(2));
    for g in gens {
        for g in [g.clone(), h.inverse(&g)] {
            let a = tabulate(h, &w.index, &g);
            let check = verify_automorphism(&w.model, &a).unwrap();
            assert!(check.holds, "{:?}: {:?}", g, check.failures);
            assert!(check.squares_checked > 0);
            if g.f.is_empty() && g.p1 % 2 == 0 && g.p2 % 2 == 0 {
                continue;
            }
            assert!(check.coverage_percent() < 100.0);
        }
    }
    let id = tabulate(h, &w.index, &h.identity());
    assert_eq!(id, Automorphism::identity(&w.model));
    assert!(verify_automorphism(&w.model, &id).unwrap().holds);
}

#[test]
fn generator_a_shifts_its_line_and_fixes_the_dihedral_lines() {
    let w = build_f2xdxd(4, 2).unwrap();
    let h = &w.closed;
    let a = tabulate(h, &w.index, &h.generators().element(0).clone());
    let la = w.model.domains().id("La:e").unwrap();
    assert_eq!(a.domain_map[la], Some(la as u32));
    let c = w.model.coord(la);
    for k in -4..4 {
        let from = c.vertex(&k.to_string()).unwrap();
        let to = c.vertex(&(k + 1).to_string()).unwrap();
        assert_eq!(a.coord_isos[la][from], Some(to as u32));
    }
    for name in ["W1", "W2"] {
        let u = w.model.domains().id(name).unwrap();
        assert_eq!(a.domain_map[u], Some(u as u32));
        assert!(a.coord_isos[u].iter().enumerate().all(|(i, j)| *j == Some(i as u32)));
    }
}

#[test]
fn words_compose_and_cancel() {
    let w = build_f2xdxd(4, 2).unwrap();
    let h = &w.closed;
    let spec = h.generators();
    let id = Automorphism::identity(&w.model);
    for text in ["a a^-1", "x1 x1", "b^2 y2 b^-2 y2", ""] {
        let g = spec.evaluate(h, &spec.parse(text).unwrap());
        assert_eq!(g, h.identity(), "{text}");
    }
    for (u, v) in [("a", "b"), ("a^2 x1", "y1 b^-1"), ("x2 y2", "a")] {
        let (wu, wv) = (spec.parse(u).unwrap(), spec.parse(v).unwrap());
        let (gu, gv) = (spec.evaluate(h, &wu), spec.evaluate(h, &wv));
        let composed = tabulate(h, &w.index, &gu).compose(&tabulate(h, &w.index, &gv));
        let direct = tabulate(h, &w.index, &spec.evaluate(h, &wu.concat(&wv)));
        assert!(composed.agrees_with(&direct));
        assert!(direct.x_map.iter().zip(&composed.x_map).all(|(d, c)| c.is_none() || d.is_some()));
        let back = tabulate(h, &w.index, &h.inverse(&gu)).compose(&tabulate(h, &w.index, &gu));
        assert!(back.agrees_with(&id));
    }
    let g = spec.evaluate(h, &spec.parse("a^2 x1 x2").unwrap());
    assert_eq!(g, h.a_generator(2));
    assert_eq!((g.p1, g.p2), (dihedral::X, dihedral::X));
}

#[test]
fn zoo_models_pass_the_audit_at_their_declared_constant() {
    let opts = AuditOptions { kappas: vec![1, 2], ..AuditOptions::default() };
    let cases = [
        (Family::ProductF2xDxD, ZooParams { n: 4, twist: 2 }),
        (Family::ProductF2, ZooParams { n: 5, twist: 2 }),
        (Family::GridZ2, ZooParams { n: 6, twist: 1 }),
        (Family::ParallelLines, ZooParams { n: 3, twist: 1 }),
        (Family::TreeFreeGroup, ZooParams { n: 4, twist: 1 }),
    ];
    for (family, params) in cases {
        let z = build(family, params).unwrap();
        let report = audit(&z.model, &opts);
        assert!(report.passes(), "{family}: {:?}", report.failures());
        assert_eq!(report.audited_e, Some(z.model.e()), "{family}");
        assert!(!report.partial(), "{family}");
    }
}

#[test]
fn product_model_has_complexity_four_and_reduced_three() {
    let z = build(Family::ProductF2xDxD, ZooParams { n: 4, twist: 2 }).unwrap();
    assert_eq!(z.model.domains().complexity(), Some(4));
    let r = build(Family::ProductF2, ZooParams { n: 4, twist: 2 }).unwrap();
    assert_eq!(r.model.domains().complexity(), Some(3));
    let t = build(Family::TreeFreeGroup, ZooParams { n: 3, twist: 1 }).unwrap();
    assert_eq!(t.model.domains().complexity(), Some(1));
}

#[test]
fn subgroups_meet_only_in_the_identity() {
    let z = build(Family::ProductF2xDxD, ZooParams { n: 6, twist: 1 }).unwrap();
    let (a, b) = (&z.subset("A").unwrap().members, &z.subset("B").unwrap().members);
    let common: Vec<usize> = a.iter().filter(|x| b.contains(x)).copied().collect();
    assert_eq!(common.len(), 1);
    assert_eq!(z.model.ambient().label(common[0]), "e,0,0");
    // (a x1 x2)^k has dihedral parts (k mod 2, k mod 2).
    assert_eq!(a.len(), 13);
    let ab = &z.subset("A*B").unwrap().members;
    assert!(a.iter().chain(b).all(|x| ab.contains(x)));
}

#[test]
fn too_small_radius_is_rejected() {
    assert!(build_f2xdxd(5, 4).is_err());
    assert!(build_f2xdxd(6, 4).is_ok() || cfg!(debug_assertions));
    assert!(build(Family::GridZ2, ZooParams { n: 0, twist: 1 }).is_err());
}

#[test]
fn headers_identify_the_closed_form() {
    let z = build(Family::ProductF2xDxD, ZooParams { n: 4, twist: 2 }).unwrap();
    assert_eq!(parse_reference(&z.header), Some((Family::ProductF2xDxD, ZooParams { n: 4, twist: 2 })));
    assert!(z.header.iter().any(|l| l.contains("W1 and W2")));
    for f in Family::ALL {
        assert_eq!(f.name().parse::<Family>().unwrap(), f);
    }
}

#[test]
fn single_point_lines_are_not_materialised() {
    let w = build_window(F2xD2::new(2), FreeWindow::Prefixes(vec![FreeWord::from_letters([1, 2, 1])]), 0).unwrap();
    let names: Vec<&str> = w.model.domains().names().iter().map(String::as_str).collect();
    assert_eq!(names, ["S", "T", "W1", "W2", "Q1", "Q2", "W12", "La:e", "Lb:a", "La:ab"]);
}
