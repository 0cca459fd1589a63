//! Brute-force reference semantics of the rule formalism.
//!
//! Everything here works directly on pattern trees with a position-set
//! matcher; nothing is compiled into automata. It is exponential in places
//! and meant for differential testing only.

use std::collections::BTreeSet;

use crate::alphabet::SymbolId;
use crate::error::{Error, Result};
use crate::regex::Regex;
use crate::rules::{Rule, RuleSet};

/// All `j` such that `w[start..j]` is in `L(r)`. `Any` matches symbols
/// `0..alphabet`.
pub fn match_ends(r: &Regex, w: &[SymbolId], start: usize, alphabet: usize) -> BTreeSet<usize> {
    let one = |ok: &dyn Fn(SymbolId) -> bool| -> BTreeSet<usize> {
        match w.get(start) {
            Some(&s) if ok(s) => BTreeSet::from([start + 1]),
            _ => BTreeSet::new(),
        }
    };
    match r {
        Regex::Empty => BTreeSet::from([start]),
        Regex::Symbol(a) => one(&|s| s == *a),
        Regex::Class(set) => one(&|s| set.contains(&s)),
        Regex::Any => one(&|s| s.index() < alphabet),
        Regex::Concat(parts) => {
            let mut cur = BTreeSet::from([start]);
            for p in parts {
                cur = cur
                    .iter()
                    .flat_map(|&i| match_ends(p, w, i, alphabet))
                    .collect();
                if cur.is_empty() {
                    break;
                }
            }
            cur
        }
        Regex::Union(parts) => parts
            .iter()
            .flat_map(|p| match_ends(p, w, start, alphabet))
            .collect(),
        Regex::Star(inner) => closure(inner, w, BTreeSet::from([start]), alphabet),
        Regex::Plus(inner) => closure(inner, w, match_ends(inner, w, start, alphabet), alphabet),
        Regex::Optional(inner) => {
            let mut s = match_ends(inner, w, start, alphabet);
            s.insert(start);
            s
        }
    }
}

fn closure(
    inner: &Regex,
    w: &[SymbolId],
    seed: BTreeSet<usize>,
    alphabet: usize,
) -> BTreeSet<usize> {
    let mut reached = seed.clone();
    let mut todo: Vec<usize> = seed.into_iter().collect();
    while let Some(i) = todo.pop() {
        for j in match_ends(inner, w, i, alphabet) {
            if reached.insert(j) {
                todo.push(j);
            }
        }
    }
    reached
}

/// Whole-word membership.
pub fn regex_matches(r: &Regex, w: &[SymbolId], alphabet: usize) -> bool {
    match_ends(r, w, 0, alphabet).contains(&w.len())
}

/// `w` matches `Σ*r`, i.e. some suffix of `w` is in `L(r)`.
pub fn suffix_matches(r: &Regex, w: &[SymbolId], alphabet: usize) -> bool {
    (0..=w.len()).any(|j| match_ends(r, w, j, alphabet).contains(&w.len()))
}

/// `w` matches `rΣ*`, i.e. some prefix of `w` is in `L(r)`.
pub fn prefix_matches(r: &Regex, w: &[SymbolId], alphabet: usize) -> bool {
    !match_ends(r, w, 0, alphabet).is_empty()
}

/// Left condition: `s_1 … s_{k-1}` matches `Σ*λ`.
fn left_ok(rule: &Rule, w: &[SymbolId], k: usize, alphabet: usize) -> bool {
    suffix_matches(&rule.lambda, &w[..k - 1], alphabet)
}

/// Right condition: `s_k … s_t` matches `φρΣ*`.
fn right_ok(rule: &Rule, w: &[SymbolId], k: usize, alphabet: usize) -> bool {
    rule.focus.contains(&w[k - 1]) && prefix_matches(&rule.rho, &w[k..], alphabet)
}

/// History condition: the fired indices so far match `I*π`.
fn history_ok(rule: &Rule, fired: &[usize], n: usize) -> bool {
    match &rule.pi {
        None => true,
        Some(pi) => {
            let h: Vec<SymbolId> = fired.iter().map(|&r| SymbolId((r - 1) as u32)).collect();
            suffix_matches(pi, &h, n)
        }
    }
}

/// Rules whose left and right contexts match at each position (1-based
/// indices, ascending).
pub fn oracle_match_sets(rs: &RuleSet, w: &[SymbolId]) -> Vec<Vec<usize>> {
    let k_sigma = rs.sigma.len();
    (1..=w.len())
        .map(|k| {
            rs.rules
                .iter()
                .enumerate()
                .filter(|(_, r)| left_ok(r, w, k, k_sigma) && right_ok(r, w, k, k_sigma))
                .map(|(i, _)| i + 1)
                .collect()
        })
        .collect()
}

/// Index of the firing rule at each position: the least index whose
/// contexts match.
pub fn oracle_tag(rs: &RuleSet, w: &[SymbolId]) -> Result<Vec<usize>> {
    oracle_match_sets(rs, w)
        .into_iter()
        .enumerate()
        .map(|(i, set)| {
            set.first()
                .copied()
                .ok_or(Error::EmptyIntersection { position: i + 1 })
        })
        .collect()
}

/// Left-to-right evaluation including the history condition.
pub fn oracle_extended(rs: &RuleSet, w: &[SymbolId]) -> Result<Vec<usize>> {
    let sets = oracle_match_sets(rs, w);
    let mut fired: Vec<usize> = Vec::with_capacity(w.len());
    for (i, set) in sets.iter().enumerate() {
        let r = set
            .iter()
            .copied()
            .find(|&r| history_ok(rs.rule(r), &fired, rs.len()))
            .ok_or(Error::EmptyIntersection { position: i + 1 })?;
        fired.push(r);
    }
    Ok(fired)
}

/// True if every rule in `seq` has matching contexts and history at its
/// position (priority is not enforced).
pub fn oracle_admissible(rs: &RuleSet, w: &[SymbolId], seq: &[usize]) -> bool {
    if seq.len() != w.len() {
        return false;
    }
    admissible_given(rs, &oracle_match_sets(rs, w), seq)
}

fn admissible_given(rs: &RuleSet, sets: &[Vec<usize>], seq: &[usize]) -> bool {
    (0..seq.len())
        .all(|i| sets[i].contains(&seq[i]) && history_ok(rs.rule(seq[i]), &seq[..i], rs.len()))
}

/// Upper bound on enumerated sequences.
pub const ENUMERATION_LIMIT: f64 = 1e6;

/// The `n` best admissible sequences found by exhaustive enumeration, ranked
/// by total score (descending), then lexicographically by index sequence.
pub fn oracle_best_sequence(
    rs: &RuleSet,
    scores: &[f64],
    w: &[SymbolId],
    n: usize,
) -> Result<Vec<(Vec<usize>, f64)>> {
    let count = (rs.len() as f64).powi(w.len() as i32);
    if count > ENUMERATION_LIMIT {
        return Err(Error::EnumerationGuard {
            count,
            limit: ENUMERATION_LIMIT,
        });
    }
    let sets = oracle_match_sets(rs, w);
    let mut all: Vec<(Vec<usize>, f64)> = Vec::new();
    let mut seq = vec![1usize; w.len()];
    loop {
        if admissible_given(rs, &sets, &seq) {
            let total = seq.iter().fold(0.0, |acc, &r| acc + scores[r - 1]);
            all.push((seq.clone(), total));
        }
        // odometer increment
        let mut i = seq.len();
        loop {
            if i == 0 {
                all.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
                all.truncate(n);
                return Ok(all);
            }
            i -= 1;
            if seq[i] < rs.len() {
                seq[i] += 1;
                break;
            }
            seq[i] = 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::{parse_grammar, tokenize_plain};
    use crate::rules::inject_default_rule;

    fn w(s: &[u32]) -> Vec<SymbolId> {
        s.iter().map(|&x| SymbolId(x)).collect()
    }

    #[test]
    fn matcher_basics() {
        let a = Regex::sym(0);
        let b = Regex::sym(1);
        let ab_star = Regex::star(Regex::Concat(vec![a.clone(), b.clone()]));
        assert!(regex_matches(&ab_star, &[], 2));
        assert!(regex_matches(&ab_star, &w(&[0, 1, 0, 1]), 2));
        assert!(!regex_matches(&ab_star, &w(&[0, 1, 0]), 2));
        assert!(regex_matches(&Regex::plus(Regex::Any), &w(&[1, 0]), 2));
        assert!(!regex_matches(&Regex::plus(Regex::Any), &[], 2));
        assert!(suffix_matches(&b, &w(&[0, 0, 1]), 2));
        assert!(prefix_matches(&a, &w(&[0, 1, 1]), 2));
        assert!(regex_matches(
            &Regex::star(Regex::star(a.clone())),
            &w(&[0, 0]),
            2
        ));
    }

    #[test]
    fn g1() {
        let rs = inject_default_rule(&parse_grammar("b / a / -> X;\n/ a / -> Y;").unwrap());
        let word = tokenize_plain("b a a", &rs.sigma);
        assert_eq!(oracle_tag(&rs, &word).unwrap(), vec![3, 1, 2]);
        assert_eq!(
            oracle_match_sets(&rs, &word),
            vec![vec![3], vec![1, 2, 3], vec![2, 3]]
        );
        assert_eq!(oracle_extended(&rs, &word).unwrap(), vec![3, 1, 2]);
    }

    #[test]
    fn default_only() {
        let rs = inject_default_rule(&parse_grammar("").unwrap());
        let d = rs.sigma.default_symbol().unwrap();
        assert_eq!(oracle_tag(&rs, &[d, d]).unwrap(), vec![1, 1]);
    }

    #[test]
    fn history_grammar() {
        let rs = inject_default_rule(&parse_grammar("2 : / a / -> X;\n/ a / -> Y;").unwrap());
        let word = tokenize_plain("a a a", &rs.sigma);
        assert_eq!(oracle_extended(&rs, &word).unwrap(), vec![2, 1, 2]);
        // relabelling rule 2 leaves the fired indices unchanged
        let rs2 = inject_default_rule(&parse_grammar("2 : / a / -> X;\n/ a / -> Q;").unwrap());
        assert_eq!(oracle_extended(&rs2, &word).unwrap(), vec![2, 1, 2]);
    }

    #[test]
    fn best_sequences() {
        let rs = inject_default_rule(&parse_grammar("b / a / -> X;\n/ a / -> Y;").unwrap());
        let word = tokenize_plain("a", &rs.sigma);
        let best = oracle_best_sequence(&rs, &[3.0, 2.0, 1.0], &word, 5).unwrap();
        assert_eq!(best, vec![(vec![2], 2.0), (vec![3], 1.0)]);
        let uniform =
            oracle_best_sequence(&rs, &[0.0; 3], &tokenize_plain("b a a", &rs.sigma), 1).unwrap();
        assert_eq!(
            uniform[0].0,
            oracle_extended(&rs, &tokenize_plain("b a a", &rs.sigma)).unwrap()
        );
        assert_eq!(uniform[0].0, vec![3, 1, 2]);
        let long = vec![word[0]; 20];
        assert!(matches!(
            oracle_best_sequence(&rs, &[0.0; 3], &long, 1),
            Err(Error::EnumerationGuard { .. })
        ));
    }
}
