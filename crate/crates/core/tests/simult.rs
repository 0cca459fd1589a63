mod common;

use bimachine::oracle::suffix_matches;
use bimachine::synth::{random_regex, rng};
use bimachine::{build_simult_matcher, Regex, SimultMatcher};
use common::all_words;
use proptest::prelude::*;
use rand::Rng;

fn oracle_sets(patterns: &[Regex], w: &[bimachine::SymbolId], k: usize) -> Vec<Vec<usize>> {
    (0..=w.len())
        .map(|end| {
            (1..=patterns.len())
                .filter(|&j| suffix_matches(&patterns[j - 1], &w[..end], k))
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn minimization_does_not_change_matches(seed in any::<u64>(), n in 1usize..=5) {
        let mut g = rng(seed);
        let patterns: Vec<Regex> = (0..n).map(|_| random_regex(&mut g, 3, 3)).collect();
        let raw = SimultMatcher::build_with(&patterns, 3, false).unwrap();
        let min = SimultMatcher::build_with(&patterns, 3, true).unwrap();
        prop_assert!(min.num_states() <= raw.num_states());
        for w in all_words(3, 6) {
            prop_assert_eq!(raw.match_positions(&w).unwrap(), min.match_positions(&w).unwrap());
        }
    }

    #[test]
    fn nullable_patterns_match_at_start(seed in any::<u64>(), n in 1usize..=5) {
        let mut g = rng(seed);
        let patterns: Vec<Regex> = (0..n).map(|_| random_regex(&mut g, 3, 3)).collect();
        let m = build_simult_matcher(&patterns, 3).unwrap();
        for (i, p) in patterns.iter().enumerate() {
            if bimachine::oracle::regex_matches(p, &[], 3) {
                prop_assert!(m.tau(m.start()).contains(i + 1));
            }
        }
        prop_assert_eq!(m.dfsa().num_symbols(), 3);
        prop_assert!(m.dfsa().is_complete());
    }
}

#[test]
fn oracle_equivalence_small_families() {
    let mut g = rng(99);
    for _ in 0..40 {
        let k = g.gen_range(2..=3);
        let n = g.gen_range(1..=6);
        let patterns: Vec<Regex> = (0..n).map(|_| random_regex(&mut g, k, 3)).collect();
        let m = build_simult_matcher(&patterns, k).unwrap();
        for w in all_words(k, 6) {
            let got: Vec<Vec<usize>> = m
                .match_positions(&w)
                .unwrap()
                .iter()
                .map(|s| s.to_vec())
                .collect();
            assert_eq!(got, oracle_sets(&patterns, &w, k), "{patterns:?} {w:?}");
        }
    }
}
