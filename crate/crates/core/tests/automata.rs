mod common;

use bimachine::automata::{compile_nfa, determinize, minimize};
use bimachine::oracle::regex_matches;
use bimachine::synth::{random_regex, rng};
use bimachine::{Regex, SymbolId};
use common::all_words;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn nfa_dfa_and_tree_matcher_agree(seed in any::<u64>(), k in 1usize..=4) {
        let r = random_regex(&mut rng(seed), k, 4);
        let nfa = compile_nfa(&[(1, r.clone())], k);
        let dfa = determinize(&nfa);
        for w in all_words(k, if k > 2 { 5 } else { 7 }) {
            let expected = regex_matches(&r, &w, k);
            prop_assert_eq!(nfa.accepts(&w), expected, "nfa {:?} on {:?}", r, w);
            prop_assert_eq!(dfa.accepts(&w), expected, "dfa {:?} on {:?}", r, w);
        }
    }

    #[test]
    fn minimize_preserves_language_and_color(seed in any::<u64>(), k in 1usize..=3) {
        let mut g = rng(seed);
        let patterns: Vec<(usize, Regex)> =
            (1..=3).map(|j| (j, random_regex(&mut g, k, 3))).collect();
        let d = determinize(&compile_nfa(&patterns, k));
        let m = minimize(&d);
        prop_assert!(m.num_states() <= d.num_states());
        for w in all_words(k, 6) {
            prop_assert_eq!(d.accepts(&w), m.accepts(&w));
            let before = d.run(&w).ok().map(|p| d.color(*p.last().unwrap()).cloned());
            let after = m.run(&w).ok().map(|p| m.color(*p.last().unwrap()).cloned());
            prop_assert_eq!(before, after);
        }
    }

    #[test]
    fn reverse_twice_is_identity(seed in any::<u64>()) {
        let r = random_regex(&mut rng(seed), 3, 4);
        let rr = r.reverse().reverse();
        for w in all_words(3, 6) {
            prop_assert_eq!(regex_matches(&r, &w, 3), regex_matches(&rr, &w, 3));
        }
    }

    #[test]
    fn reverse_mirrors_words(seed in any::<u64>()) {
        let r = random_regex(&mut rng(seed), 2, 4);
        let rev = r.reverse();
        for w in all_words(2, 6) {
            let mirrored: Vec<SymbolId> = w.iter().rev().copied().collect();
            prop_assert_eq!(regex_matches(&r, &w, 2), regex_matches(&rev, &mirrored, 2));
        }
    }

    #[test]
    fn determinized_machines_are_functional_and_reachable(seed in any::<u64>()) {
        let r = random_regex(&mut rng(seed), 3, 4);
        let d = determinize(&compile_nfa(&[(1, r)], 3));
        let mut pairs = std::collections::HashSet::new();
        for (q, a, _) in d.transitions() {
            prop_assert!(pairs.insert((q, a)));
        }
        prop_assert_eq!(d.trim().num_states(), d.num_states());
    }
}

#[test]
fn star_of_pair_reverses_by_enumeration() {
    let (a, b) = (Regex::sym(0), Regex::sym(1));
    let r = Regex::star(Regex::Concat(vec![a.clone(), b.clone()]));
    let expected = Regex::star(Regex::Concat(vec![b, a]));
    assert_eq!(r.reverse(), expected);
    for w in all_words(2, 6) {
        let mirrored: Vec<SymbolId> = w.iter().rev().copied().collect();
        assert_eq!(
            regex_matches(&r, &w, 2),
            regex_matches(&expected, &mirrored, 2)
        );
    }
}

#[test]
fn tagged_union_membership_up_to_four() {
    let ab = Regex::Concat(vec![Regex::sym(0), Regex::sym(1)]);
    let nfa = compile_nfa(&[(1, ab.clone()), (2, Regex::sym(1))], 2);
    let d = determinize(&nfa);
    for w in all_words(2, 4) {
        let mut tags = Vec::new();
        if regex_matches(&ab, &w, 2) {
            tags.push(1);
        }
        if w == [SymbolId(1)] {
            tags.push(2);
        }
        assert_eq!(nfa.accepting_tags(&w), tags);
        assert_eq!(d.accepts(&w), !tags.is_empty());
        if let Ok(path) = d.run(&w) {
            assert_eq!(d.color(*path.last().unwrap()).unwrap().to_vec(), tags);
        }
    }
}
