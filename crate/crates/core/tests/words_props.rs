use std::collections::BTreeSet;

use funnelgroup::schottky::SchottkyGroup;
use funnelgroup::words::{self, layer_size, WordsError};
use funnelgroup::{Letter, Word, DEFAULT_WORD_CAP};
use proptest::prelude::*;

const EPS: f64 = 1e-9;

fn worked() -> SchottkyGroup {
    SchottkyGroup::from_pairs(&[(2.0, 8.0), (10.0, 12.0)]).unwrap()
}

fn reduced_word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..2 * rank, 0..=max_len).prop_map(|raw| {
        let mut w = Word::empty();
        for i in raw {
            if let Some(next) = w.extended(Letter::from_index(i)) {
                w = next;
            }
        }
        w
    })
}

#[test]
fn enumeration_counts_match_growth_formula() {
    for rank in 1..=4usize {
        for depth in 1..=6usize {
            let layer = words::enumerate(rank, depth, DEFAULT_WORD_CAP).unwrap();
            let expected = 2 * rank * (2 * rank - 1).pow(depth as u32 - 1);
            assert_eq!(layer.words.len(), expected, "rank {rank} depth {depth}");
            assert_eq!(layer_size(rank, depth), Some(expected as u64));
            let distinct: BTreeSet<&Word> = layer.words.iter().collect();
            assert_eq!(distinct.len(), expected);
            assert!(layer.words.iter().all(|w| w.len() == depth));
        }
    }
}

#[test]
fn enumeration_rejects_overflow_and_empty_requests() {
    assert!(matches!(
        words::enumerate(2, 20, DEFAULT_WORD_CAP),
        Err(WordsError::DepthOverflow { .. })
    ));
    assert!(matches!(
        words::enumerate(2, 3, 10),
        Err(WordsError::DepthOverflow { .. })
    ));
    assert_eq!(
        words::enumerate(0, 3, DEFAULT_WORD_CAP),
        Err(WordsError::EmptyRequest)
    );
    assert_eq!(layer_size(64, 64), None);
}

#[test]
fn worked_group_is_free_up_to_length_eight() {
    let hit = words::freeness_sample(&worked(), 8, DEFAULT_WORD_CAP, EPS).unwrap();
    assert_eq!(hit, None);
}

#[test]
fn worked_group_is_purely_hyperbolic_up_to_length_six() {
    let sample = words::purely_hyperbolic_sample(&worked(), 6, DEFAULT_WORD_CAP, EPS).unwrap();
    assert!(sample.all_hyperbolic);
    let expected: u64 = (1..=6).map(|k| layer_size(2, k).unwrap()).sum();
    assert_eq!(sample.words_checked, expected);
}

#[test]
fn word_text_round_trip() {
    let w: Word = "+1-2-2+3".parse().unwrap();
    assert_eq!(w, Word::from_signed(&[1, -2, -2, 3]).unwrap());
    assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
    assert!("+1-1".parse::<Word>().is_err());
    assert!("+0".parse::<Word>().is_err());
    assert!("1".parse::<Word>().is_err());
    assert_eq!("e".parse::<Word>().unwrap(), Word::empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn evaluation_is_a_homomorphism(u in reduced_word(2, 5), v in reduced_word(2, 5)) {
        let g = worked();
        let (left, right) = (words::evaluate(&u, &g), words::evaluate(&v, &g));
        let product = words::evaluate(&u.concat(&v), &g);
        let separate = left.compose(&right);
        // Cancellation at the junction costs about |U|·|V| units of rounding.
        let size = |m: &funnelgroup::ExtendedMobiusMap| {
            m.coefficients().iter().fold(1.0f64, |acc, x| acc.max(x.abs()))
        };
        prop_assert!(product.approx_eq(&separate, 1e-12 * size(&left) * size(&right)));
    }

    #[test]
    fn inverse_word_evaluates_to_inverse(u in reduced_word(3, 6)) {
        let g = SchottkyGroup::from_pairs(&[(1.0, 2.0), (3.0, 4.0), (6.0, 7.0)]).unwrap();
        let m = words::evaluate(&u, &g).compose(&words::evaluate(&u.inverse(), &g));
        prop_assert!(m.is_identity(1e-6));
        prop_assert!(u.concat(&u.inverse()).is_empty());
    }

    #[test]
    fn nonempty_reduced_words_are_not_identity(u in reduced_word(2, 8)) {
        prop_assume!(!u.is_empty());
        prop_assert!(!words::evaluate(&u, &worked()).is_identity(EPS));
    }

    #[test]
    fn canonical_order_matches_letter_index(i in 0..8usize, j in 0..8usize) {
        let (a, b) = (Letter::from_index(i), Letter::from_index(j));
        prop_assert_eq!(a.cmp(&b), i.cmp(&j));
        prop_assert_eq!(a.index(), i);
    }

    #[test]
    fn text_round_trip(u in reduced_word(3, 7)) {
        prop_assert_eq!(u.to_string().parse::<Word>().unwrap(), u);
    }
}
