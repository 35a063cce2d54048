use hhs_action::GroupHierarchy;
use hhs_amalgam::{
    build_chain, certify_nontrivial, check_hypotheses, measure_element, verify_chain, verify_injectivity, AmalgamData,
    AmalgamError, ChainCertificate, ChainStatus, Claim, Factor, InjectivityStatus, Nontriviality,
};
use hhs_action::Word;
use hhs_coarse::Rational64;
use hhs_zoo::f2xdxd::{Dom, Elt, F2xD2};
use hhs_zoo::free::{FreeWord, TreeVertex};

mod common;
use common::{closed, twisted};

fn values(cert: &ChainCertificate, claim: Claim) -> Vec<i64> {
    cert.values(claim).map(|m| m.value.unwrap()).collect()
}

#[test]
fn hypotheses_hold_at_the_scale_threshold() {
    let h = closed();
    let d = twisted(&h, 200, 200);
    let r = check_hypotheses(&d, 2).unwrap();
    assert!(r.holds(), "{:?}", r.failures);
    assert_eq!(r.sampled_elements, 8);
    assert_eq!(r.sampled_pairs, 32);
    assert_eq!((r.max_diameter, r.max_cross_distance), (0, 0));
    assert_eq!(r.max_valid_m, Some(200));
    assert!(r.max_valid_meets_scale);
    assert!(r.witnesses_transverse);
    // d_{L_a}(x₀, (a^N x₁x₂)^k x₀) = |k|·N.
    let mut t: Vec<(String, u32)> = r.elements.iter().map(|e| (e.word.clone(), e.translation.unwrap())).collect();
    t.sort();
    assert_eq!(
        t,
        vec![
            ("A".into(), 200),
            ("A^-1".into(), 200),
            ("A^-2".into(), 400),
            ("A^2".into(), 400),
            ("B".into(), 200),
            ("B^-1".into(), 200),
            ("B^-2".into(), 400),
            ("B^2".into(), 400)
        ]
    );
}

#[test]
fn maximal_valid_m_grows_with_slope_one() {
    let h = closed();
    let ns = [1i64, 2, 5, 17, 60, 199, 200, 250];
    let maxes: Vec<u64> = ns.iter().map(|&n| check_hypotheses(&twisted(&h, n, 200), 3).unwrap().max_valid_m.unwrap()).collect();
    for w in 0..ns.len() - 1 {
        assert_eq!(maxes[w + 1] - maxes[w], (ns[w + 1] - ns[w]) as u64);
    }
    // The measured threshold for M ≥ 100E with E = 2.
    let threshold = ns.iter().zip(&maxes).find(|(_, &m)| m >= 200).map(|(&n, _)| n);
    assert_eq!(threshold, Some(200));
}

#[test]
fn undersized_twist_fails_and_injectivity_refuses() {
    let h = closed();
    let small = twisted(&h, 10, 10);
    let r = check_hypotheses(&small, 2).unwrap();
    assert_eq!(r.failures, vec!["scale".to_string()]);
    assert_eq!(r.max_valid_m, Some(10));
    assert!(!r.max_valid_meets_scale);
    let inj = verify_injectivity(&small, 4, 2).unwrap();
    assert_eq!(inj.status, InjectivityStatus::Refused { failures: vec!["scale".into()] });
    assert_eq!(inj.words_tested, 0);

    let too_big_m = twisted(&h, 10, 200);
    assert_eq!(check_hypotheses(&too_big_m, 2).unwrap().failures, vec!["translation".to_string()]);
}

#[test]
fn common_elements_and_missing_witnesses_are_rejected() {
    let h = closed();
    let d = twisted(&h, 200, 200);
    let e = measure_element(&d, 0, &Word::identity(), &h.identity());
    assert!(matches!(e, Err(AmalgamError::ElementInCommon(_))));

    let blind = AmalgamData::new(
        &h,
        vec![Factor::cyclic("A", "A", h.a_generator(3)).unwrap(), Factor::cyclic("B", "B", h.b_generator(3)).unwrap()],
        vec![h.identity()],
        Box::new(|f, _| if f == 0 { Some(F2xD2::a_line()) } else { None }),
        200,
    )
    .unwrap();
    assert!(matches!(check_hypotheses(&blind, 1), Err(AmalgamError::MissingWitness(_))));

    let not_a_group = AmalgamData::new(
        &h,
        vec![Factor::cyclic("A", "A", h.a_generator(3)).unwrap()],
        vec![h.identity(), h.a_generator(3)],
        Box::new(|_, _| Some(F2xD2::a_line())),
        200,
    );
    assert!(matches!(not_a_group, Err(AmalgamError::Unsupported(_))));
}

fn line(rep: FreeWord, gen: i8) -> Dom {
    Dom::Line(TreeVertex { rep, gen })
}

#[test]
fn three_syllable_chain_has_the_derived_values() {
    let h = closed();
    let n = 200;
    let d = twisted(&h, n, 200);
    let word = d.parse_word("A B A").unwrap();
    let chain = build_chain(&d, &word).unwrap();
    let an = FreeWord::power(1, n);
    let anbn = an.mul(&FreeWord::power(2, n));
    assert_eq!(chain.domains, vec![line(FreeWord::identity(), 1), line(an.clone(), 2), line(anbn.clone(), 1)]);
    // x₁y₁x₁ sits at dihedral position 3.
    assert_eq!(chain.cosets[3], vec![Elt::new(anbn.mul(&an), 3, 3)]);

    let cert = verify_chain(&d, &chain);
    assert_eq!(cert.status, ChainStatus::Verified);
    assert_eq!(values(&cert, Claim::Translation), vec![200, 200, 200]);
    assert_eq!(values(&cert, Claim::AdjacentProjection), vec![0, 0, 0, 0]);
    // The same separation is compared once against 4M/5 − 4E and once against 6E.
    assert_eq!(values(&cert, Claim::ConsecutiveSeparation), vec![200, 200]);
    let bounds: Vec<String> = cert.values(Claim::ConsecutiveSeparation).map(|m| m.bound.to_string()).collect();
    assert_eq!(bounds, vec!["152", "12"]);
    assert_eq!(values(&cert, Claim::FarProjection), vec![0; 6]);
    assert_eq!(values(&cert, Claim::LargeProjection), vec![200, 200]);
    assert_eq!(cert.final_bound, Some(Rational64::from_integer(200)));
    assert_eq!(cert.chain, vec!["La:e", "Lb:a^200", "La:a^200b^200"]);
}

#[test]
fn final_bound_at_m_equal_to_100e() {
    let h = closed();
    let d = twisted(&h, 200, 200);
    let cert = verify_chain(&d, &build_chain(&d, &d.parse_word("A^-1 B^2 A").unwrap()).unwrap());
    assert!(cert.verified());
    // 9/10·M − 5E = 85E.
    let large = cert.values(Claim::LargeProjection).next().unwrap();
    assert_eq!(large.bound, Rational64::from_integer(85 * 2));
    assert!(cert.final_bound.unwrap() >= Rational64::from_integer(170));
    let close: Vec<String> = cert.values(Claim::CosetCloseness).map(|m| m.bound.to_string()).collect();
    assert!(close.iter().all(|b| b == "30"));
    assert_eq!(cert.values(Claim::CosetCloseness).count(), 4);
}

#[test]
fn single_syllable_chain_is_the_translation() {
    let h = closed();
    let d = twisted(&h, 200, 200);
    let cert = verify_chain(&d, &build_chain(&d, &d.parse_word("B^-2").unwrap()).unwrap());
    assert!(cert.verified());
    assert_eq!(cert.chain.len(), 1);
    assert_eq!(cert.final_bound, Some(Rational64::from_integer(400)));
    assert!(cert.final_bound.unwrap() >= Rational64::from_integer(d.m() as i64));
}

#[test]
fn unreduced_words_are_rejected() {
    let h = closed();
    let d = twisted(&h, 200, 200);
    let twice = d.parse_word("A A").unwrap();
    assert_eq!(twice.len(), 2);
    assert!(matches!(build_chain(&d, &twice), Err(AmalgamError::NotReduced(_))));
    assert!(build_chain(&d, &d.parse_word("A^2").unwrap()).is_ok());
    assert!(matches!(build_chain(&d, &d.parse_word("A^2 | A^-1 | B").unwrap()), Err(AmalgamError::NotReduced(_))));
    assert!(d.parse_word("A B | B").unwrap_err().to_string().contains("mixes factors"));
}

#[test]
fn nontriviality_decisions() {
    let h = closed();
    let d = twisted(&h, 200, 200);
    assert_eq!(certify_nontrivial(&d, &[]).unwrap(), Nontriviality::Trivial);
    assert_eq!(certify_nontrivial(&d, &d.parse_word("A B B^-1 A^-1").unwrap()).unwrap(), Nontriviality::Trivial);
    match certify_nontrivial(&d, &d.parse_word("A B").unwrap()).unwrap() {
        Nontriviality::Evaluated { syllables: 2, nontrivial: true, .. } => {}
        other => panic!("{other:?}"),
    }
    // Reduces to A^2 B A, a three-syllable certificate.
    match certify_nontrivial(&d, &d.parse_word("A A B A").unwrap()).unwrap() {
        Nontriviality::Certified { certificate } => {
            assert_eq!(certificate.word, "A^2 | B | A");
            assert!(certificate.final_bound.unwrap() > Rational64::from_integer(0));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn injectivity_on_small_bounds() {
    let h = closed();
    let d = twisted(&h, 200, 200);
    let r = verify_injectivity(&d, 1, 1).unwrap();
    assert_eq!(r.status, InjectivityStatus::Passed);
    assert_eq!((r.words_tested, r.reduced_words), (4, 4));

    let r = verify_injectivity(&d, 4, 2).unwrap();
    assert_eq!(r.status, InjectivityStatus::Passed);
    assert_eq!(r.factor_ball_sizes, vec![5, 5]);
    assert_eq!(r.words_tested, 8 + 64 + 512 + 4096);
    assert_eq!(r.reduced_words, 2 * (4 + 16 + 64 + 256));
    assert_eq!(r.chains_certified, 2 * (64 + 256));
    assert!(r.disagreements.is_empty() && r.intersection_violations.is_empty());
    // Freely trivial sequences such as A A^-1 exist among the tested words.
    assert!(r.trivial_in_amalgam > 0);
}

#[test]
fn measurements_outside_a_window_are_partial() {
    let h = closed();
    let d = twisted(&h, 200, 200).with_window("F-ball of radius 6", Box::new(|x: &Elt| x.f.len() <= 6));
    let cert = verify_chain(&d, &build_chain(&d, &d.parse_word("A B A").unwrap()).unwrap());
    assert_eq!(cert.status, ChainStatus::Partial);
    assert_eq!(cert.window.as_deref(), Some("F-ball of radius 6"));
    assert!(check_hypotheses(&d, 1).unwrap().partial);
    assert!(matches!(verify_injectivity(&d, 2, 1).unwrap().status, InjectivityStatus::Refused { .. }));
}

#[test]
fn certificates_round_trip_through_json() {
    let h = closed();
    let d = twisted(&h, 200, 200);
    let cert = verify_chain(&d, &build_chain(&d, &d.parse_word("B A^2 B^-1 A").unwrap()).unwrap());
    let json = serde_json::to_string(&cert).unwrap();
    let back: ChainCertificate = serde_json::from_str(&json).unwrap();
    assert_eq!(back, cert);
    assert!(json.contains("\"claim\":\"large-projection\""));
}

#[test]
fn the_reduced_product_also_certifies() {
    // Without the dihedral factors, A = ⟨a^N⟩ and B = ⟨b^N⟩ in the free group; E = 1.
    let h = F2xD2::reduced(1);
    let d = AmalgamData::new(
        &h,
        vec![Factor::cyclic("A", "A", h.a_generator(100)).unwrap(), Factor::cyclic("B", "B", h.b_generator(100)).unwrap()],
        vec![h.identity()],
        Box::new(|f, _| Some(if f == 0 { F2xD2::a_line() } else { F2xD2::b_line() })),
        100,
    )
    .unwrap();
    assert!(check_hypotheses(&d, 2).unwrap().holds());
    assert_eq!(verify_injectivity(&d, 3, 2).unwrap().status, InjectivityStatus::Passed);
}
