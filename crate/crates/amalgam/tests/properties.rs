use hhs_action::{GroupHierarchy, Word};
use hhs_amalgam::{
    abstract_normal_form, build_chain, certify_nontrivial, verify_chain, verify_transverse_row, AmalgamError,
    ChainStatus, Claim, FactorSyllable, RowOutcome,
};
use hhs_coarse::Rational64;
use hhs_model::{Hierarchy, Relation};
use hhs_zoo::f2xdxd::{Dom, Elt};
use hhs_zoo::free::{FreeWord, TreeVertex};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::{closed, twisted};

fn reduced_word(max_k: usize) -> impl Strategy<Value = (bool, Vec<i64>)> {
    (any::<bool>(), prop::collection::vec(prop_oneof![-3i64..=-1, 1i64..=3], 1..=max_k))
}

fn syllables(
    d: &hhs_amalgam::AmalgamData<'_, hhs_zoo::f2xdxd::F2xD2>,
    start_b: bool,
    exps: &[i64],
) -> Vec<FactorSyllable<Elt>> {
    exps.iter()
        .enumerate()
        .map(|(i, &k)| d.syllable((i + start_b as usize) % 2, &Word::letter(0, k)))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduced_words_are_certified((start_b, exps) in reduced_word(7)) {
        let h = closed();
        let d = twisted(&h, 200, 200);
        let word = syllables(&d, start_b, &exps);
        let cert = verify_chain(&d, &build_chain(&d, &word).unwrap());
        prop_assert_eq!(&cert.status, &ChainStatus::Verified);
        let (m, e) = (200i64, 2i64);
        prop_assert!(cert.final_bound.unwrap() >= Rational64::new(9 * m - 50 * e, 10));
        prop_assert!(d.evaluate(&word) != h.identity());
        prop_assert!(h.act_point(&d.evaluate(&word), &h.basepoint()) != h.basepoint());
        for x in cert.values(Claim::TransverseRow).filter(|x| x.indices.len() == 3) {
            prop_assert!(x.value.unwrap() > 2 * e);
        }
        for x in cert.values(Claim::CosetCloseness) {
            prop_assert!(Rational64::from_integer(x.value.unwrap()) <= Rational64::new(m + 50 * e, 10));
        }
        prop_assert!(certify_nontrivial(&d, &word).unwrap().proves_nontrivial());
    }

    #[test]
    fn normal_form_detects_exactly_the_trivial_words(
        letters in prop::collection::vec((0usize..2, prop_oneof![-2i64..=-1, 1i64..=2]), 0..8),
        mirror in any::<bool>(),
    ) {
        let h = closed();
        let d = twisted(&h, 5, 200);
        let mut word: Vec<FactorSyllable<Elt>> = letters.iter().map(|&(f, k)| d.syllable(f, &Word::letter(0, k))).collect();
        if mirror {
            let inv: Vec<FactorSyllable<Elt>> =
                letters.iter().rev().map(|&(f, k)| d.syllable(f, &Word::letter(0, -k))).collect();
            word.extend(inv);
        }
        let nf = abstract_normal_form(&d, &word);
        prop_assert_eq!(nf.is_trivial(&h.identity()), d.evaluate(&word) == h.identity());
        if mirror {
            prop_assert!(nf.is_trivial(&h.identity()));
        }
        // The normal form alternates and re-evaluates to the same element.
        for w in nf.syllables.windows(2) {
            prop_assert!(w[0].0 != w[1].0);
        }
        let back = nf.syllables.iter().fold(h.identity(), |g, (_, t)| h.multiply(&g, t));
        prop_assert_eq!(h.multiply(&back, &nf.tail), d.evaluate(&word));
    }
}

fn line(rep: FreeWord, gen: i8) -> Dom {
    Dom::Line(TreeVertex { rep, gen })
}

#[test]
fn transverse_row_boundary_cases() {
    let h = closed();
    let e = 2;
    assert_eq!(verify_transverse_row(&h, &[line(FreeWord::identity(), 1), line(FreeWord::identity(), 2)], e).unwrap(), RowOutcome::Vacuous);
    // d_{L_a}(L_b, a^k L_b) = k.
    let row = |k: i64| vec![line(FreeWord::identity(), 2), line(FreeWord::identity(), 1), line(FreeWord::power(1, k), 2)];
    assert_eq!(h.rho_distance(&row(13)[1], &row(13)[0], &row(13)[2]), Some(13));
    assert_eq!(verify_transverse_row(&h, &row(13), e).unwrap(), RowOutcome::Holds { min_separation: 13 });
    assert_eq!(h.relation(&row(13)[0], &row(13)[2]), Relation::Transverse);
    assert!(matches!(verify_transverse_row(&h, &row(12), e).unwrap(), RowOutcome::PreconditionUnmet { .. }));
    // A nested pair breaks adjacency.
    assert!(matches!(
        verify_transverse_row(&h, &[line(FreeWord::identity(), 1), Dom::T, Dom::W1], e).unwrap(),
        RowOutcome::PreconditionUnmet { .. }
    ));
}

/// Three pairwise transverse domains with one relative projection missing.
struct Broken;

impl Hierarchy for Broken {
    type Point = u8;
    type Domain = u8;
    type Coord = i64;

    fn constant(&self) -> u32 {
        1
    }

    fn relation(&self, u: &u8, v: &u8) -> Relation {
        if u == v {
            Relation::Equal
        } else {
            Relation::Transverse
        }
    }

    fn project(&self, _u: &u8, _x: &u8) -> Option<Vec<i64>> {
        Some(vec![0])
    }

    fn rho(&self, from: &u8, to: &u8) -> Option<Vec<i64>> {
        match (from, to) {
            (0, 1) => Some(vec![0]),
            (2, 1) => Some(vec![10]),
            _ => None,
        }
    }

    fn coord_distance(&self, _u: &u8, a: &i64, b: &i64) -> Option<u32> {
        Some(a.abs_diff(*b) as u32)
    }
}

#[test]
fn missing_rho_is_a_relation_table_error() {
    assert_eq!(verify_transverse_row(&Broken, &[0, 1, 2], 1).unwrap(), RowOutcome::Holds { min_separation: 10 });
    assert!(matches!(verify_transverse_row(&Broken, &[0, 1, 2, 0], 1), Err(AmalgamError::RelationTable(_))));
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> FreeWord {
    let len = rng.gen_range(0..=max_len);
    FreeWord::from_letters((0..len).map(|_| [1i8, -1, 2, -2][rng.gen_range(0..4)]))
}

/// Rows of lines in the Bass–Serre tree: either walked along a random
/// alternating word with random perturbations, or drawn independently.
fn random_row(rng: &mut ChaCha8Rng) -> Vec<Dom> {
    let k = rng.gen_range(3..=7);
    if rng.gen_bool(0.7) {
        let mut gen = if rng.gen_bool(0.5) { 1i8 } else { 2 };
        let mut prefix = FreeWord::identity();
        let mut out = Vec::new();
        for _ in 0..k {
            let wobble = if rng.gen_bool(0.3) { random_word(rng, 3) } else { FreeWord::identity() };
            out.push(Dom::Line(TreeVertex::coset(&prefix.mul(&wobble), gen)));
            let step = rng.gen_range(1..=30) * if rng.gen_bool(0.5) { 1 } else { -1 };
            prefix = prefix.mul(&FreeWord::power(gen, step));
            gen = 3 - gen;
        }
        out
    } else {
        (0..k).map(|_| Dom::Line(TreeVertex::coset(&random_word(rng, 40), if rng.gen_bool(0.5) { 1 } else { 2 }))).collect()
    }
}

#[test]
fn a_thousand_admissible_rows_satisfy_the_conclusion() {
    let h = closed();
    let e = h.constant();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut admissible, mut unmet, mut tries) = (0, 0, 0);
    while admissible < 1000 {
        tries += 1;
        assert!(tries < 200_000, "too few admissible rows");
        match verify_transverse_row(&h, &random_row(&mut rng), e).unwrap() {
            RowOutcome::Holds { min_separation } => {
                assert!(min_separation > 2 * e);
                admissible += 1;
            }
            RowOutcome::PreconditionUnmet { .. } => unmet += 1,
            other => panic!("violation: {other:?}"),
        }
    }
    assert!(unmet > 0);
}

#[test]
fn chain_rows_from_words_are_admissible() {
    let h = closed();
    let d = twisted(&h, 200, 200);
    let word = d.parse_word("A B^-1 A^2 B A^-1").unwrap();
    let chain = build_chain(&d, &word).unwrap();
    assert!(matches!(verify_transverse_row(&h, &chain.domains, 2).unwrap(), RowOutcome::Holds { min_separation: 200 }));
}
