use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use tightmaps::codes::{
    count_marked_paths, enumerate_words, tree_to_word, word_to_tree, Variant, WordForm,
};
use tightmaps::counts::{
    count_tight, slicings, slicings_from_tight, tight_from_slicings, BoundarySpec,
};
use tightmaps::forests::{count_twotype, count_twotype_constrained, Kind, TypeArray};
use tightmaps::mapgen::oracle_count;
use tightmaps::numeric::Rational;

fn lengths(max_n: usize, max_d: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max_d, 3..=max_n)
        .prop_filter("not all zero", |v| v.iter().any(|&d| d > 0))
}

fn spec(v: &[u32]) -> BoundarySpec {
    BoundarySpec::new(v.to_vec()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tight_count_is_symmetric(v in lengths(6, 7), seed in any::<u64>()) {
        let mut w = v.clone();
        // a seeded Fisher-Yates shuffle
        let mut s = seed;
        for i in (1..w.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            w.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(count_tight(&spec(&v)).unwrap(), count_tight(&spec(&w)).unwrap());
        prop_assert_eq!(slicings(&spec(&v)).unwrap(), slicings(&spec(&w)).unwrap());
    }

    #[test]
    fn odd_number_of_odd_lengths_vanishes(v in lengths(6, 7)) {
        let s = spec(&v);
        if s.odd_count() % 2 == 1 {
            prop_assert!(count_tight(&s).unwrap().is_zero());
            prop_assert!(slicings(&s).unwrap().is_zero());
        }
    }

    #[test]
    fn substitution_round_trips(v in lengths(5, 6)) {
        let s = spec(&v);
        prop_assert_eq!(tight_from_slicings(&s).unwrap(), count_tight(&s).unwrap());
        prop_assert_eq!(slicings_from_tight(&s).unwrap(), slicings(&s).unwrap());
    }

    #[test]
    fn tight_counts_never_exceed_slicings(v in lengths(5, 6)) {
        let s = spec(&v);
        prop_assert!(count_tight(&s).unwrap() <= slicings(&s).unwrap());
        prop_assert!(count_tight(&s).unwrap() >= BigInt::zero());
    }

    #[test]
    fn formula_matches_oracle(v in lengths(5, 4).prop_filter("dart cap", |v| v.iter().sum::<u32>() <= 10)) {
        let s = spec(&v);
        let tight = oracle_count(&v, true, 10, None).unwrap().value;
        prop_assert_eq!(tight, Rational::from_integer(count_tight(&s).unwrap()));
        let all = oracle_count(&v, false, 10, None).unwrap().value;
        prop_assert_eq!(all, Rational::from_integer(slicings(&s).unwrap()));
    }

    #[test]
    fn marked_path_counts_ignore_mark_order(d in 1u32..9, eps in -1i64..=1, marks in prop::collection::vec(0u8..=1, 0..4), seed in any::<u32>()) {
        let mut shuffled = marks.clone();
        shuffled.rotate_left(seed as usize % marks.len().max(1));
        prop_assert_eq!(count_marked_paths(d, eps, &marks), count_marked_paths(d, eps, &shuffled));
    }

    #[test]
    fn words_decode_and_re_encode(m in 1u32..6, k in 0u32..4, form in 0u8..3) {
        let (wf, variant) = match form {
            0 => (WordForm::UdForm1 { m, k }, Variant::P),
            1 => (WordForm::UdForm2 { m, k }, Variant::Q),
            _ => (WordForm::UdForm3 { m: tightmaps::HalfInt::from_twice(2 * m as i64 - 1), k }, Variant::Quasi),
        };
        for w in enumerate_words(wf) {
            let t = word_to_tree(&w, variant).unwrap();
            prop_assert_eq!(tree_to_word(&t, variant).unwrap(), w);
        }
    }

    #[test]
    fn forest_circular_sum(types in prop::collection::vec(any::<bool>(), 1..6), seed in any::<u64>()) {
        // a random consistent array: shuffle the non-super-root vertex types into child slots
        let n = types.len();
        let kind = |b: bool| if b { Kind::B } else { Kind::A };
        let mut own: Vec<Kind> = types.iter().map(|&b| kind(b)).collect();
        own[0] = Kind::A;
        let mut slots = own.clone();
        let mut s = seed;
        for i in (1..slots.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            slots.swap(i, (s >> 33) as usize % (i + 1));
        }
        let mut w = vec![vec![Kind::O]; n + 1];
        for i in 1..=n {
            w[i] = vec![own[i - 1]];
        }
        for t in slots {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            w[(s >> 33) as usize % (n + 1)].push(t);
        }
        let w = TypeArray::new(w);
        let k0 = w.w[0].len() - 1;
        let summed: BigInt = (0..k0).map(|j| count_twotype_constrained(&w.rotate_roots(j)).unwrap()).sum();
        prop_assert_eq!(summed, count_twotype(&w).unwrap());
    }
}
