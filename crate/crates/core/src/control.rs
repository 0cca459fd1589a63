//! Control strategies beyond "least matching index wins": reporting every
//! matching rule, and N-best search over scored rules.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::alphabet::SymbolId;
use crate::bimachine::Bimachine;
use crate::error::{Error, Result};
use crate::extended::ExtendedMachine;
use crate::idset::IdSet;
use crate::rules::RuleSet;

/// Set of rules whose left and right contexts both match, per position.
pub fn all_matching_rules(b: &Bimachine, w: &[SymbolId]) -> Vec<IdSet> {
    let right = b.right_states(w);
    let mut q = b.left().start();
    let mut out = Vec::with_capacity(w.len());
    for (i, &a) in w.iter().enumerate() {
        out.push(b.left().tau(q).intersection(b.right().tau(right[i + 1])));
        q = b.left().step(q, a).expect("left matcher is total over Σ");
    }
    out
}

/// Rules with an additive score per rule (higher is better). Probabilities
/// should be given as log-probabilities.
#[derive(Clone, Debug)]
pub struct ScoredRuleSet {
    pub rules: RuleSet,
    scores: Vec<f64>,
}

impl ScoredRuleSet {
    pub fn new(rules: RuleSet, scores: Vec<f64>) -> Result<ScoredRuleSet> {
        if scores.len() != rules.len() {
            return Err(Error::Grammar {
                line: 0,
                msg: format!("{} scores given for {} rules", scores.len(), rules.len()),
            });
        }
        Ok(ScoredRuleSet { rules, scores })
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn score(&self, rule: usize) -> f64 {
        self.scores[rule - 1]
    }
}

/// Parses `index score` lines (`#` comments allowed). Rules that are not
/// listed score 0.
pub fn parse_scores(text: &str, rule_count: usize) -> Result<Vec<f64>> {
    let mut scores = vec![0.0; rule_count];
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: String| Error::Grammar { line: i + 1, msg };
        let mut it = line.split_whitespace();
        let (Some(idx), Some(val), None) = (it.next(), it.next(), it.next()) else {
            return Err(bad(format!("expected `rule score`, got `{line}`")));
        };
        let idx: usize = idx
            .parse()
            .map_err(|_| bad(format!("bad rule index `{idx}`")))?;
        if idx == 0 || idx > rule_count {
            return Err(bad(format!("rule {idx} outside 1..={rule_count}")));
        }
        let val: f64 = val.parse().map_err(|_| bad(format!("bad score `{val}`")))?;
        scores[idx - 1] = val;
    }
    Ok(scores)
}

/// A partial or complete action sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct Hypothesis {
    pub rules: Vec<usize>,
    pub history_state: u32,
    pub total: f64,
}

/// Higher total first, then the lexicographically smaller rule sequence.
pub fn rank_order(a: (&[usize], f64), b: (&[usize], f64)) -> Ordering {
    b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0))
}

fn rank(a: &Hypothesis, b: &Hypothesis) -> Ordering {
    rank_order((&a.rules, a.total), (&b.rules, b.total))
}

/// Up to `n` best admissible rule sequences for `w`, best first.
///
/// Priority blocking is replaced by the scores: any rule whose left, right
/// and history contexts all match may fire. Hypotheses are merged on their
/// history state (the other two states depend only on the position), keeping
/// the `n` best per state, which makes the search exact.
pub fn n_best(m: &ExtendedMachine, scores: &[f64], w: &[SymbolId], n: usize) -> Vec<Hypothesis> {
    assert!(n >= 1, "N must be positive");
    let base = m.base();
    assert_eq!(scores.len(), base.rule_count());
    let right = base.right_states(w);
    let hist = m.history();

    let mut beam: BTreeMap<u32, Vec<Hypothesis>> = BTreeMap::new();
    beam.insert(
        hist.start(),
        vec![Hypothesis {
            rules: Vec::new(),
            history_state: hist.start(),
            total: 0.0,
        }],
    );
    let mut ql = base.left().start();
    for (i, &a) in w.iter().enumerate() {
        let context = base
            .left()
            .tau(ql)
            .intersection(base.right().tau(right[i + 1]));
        let mut next: BTreeMap<u32, Vec<Hypothesis>> = BTreeMap::new();
        for (&qh, hyps) in &beam {
            let admissible = context.intersection(hist.tau(qh));
            for rule in admissible.iter() {
                let target = m.advance(qh, rule);
                let bucket = next.entry(target).or_default();
                for h in hyps {
                    let mut rules = h.rules.clone();
                    rules.push(rule);
                    bucket.push(Hypothesis {
                        rules,
                        history_state: target,
                        total: h.total + scores[rule - 1],
                    });
                }
            }
        }
        for bucket in next.values_mut() {
            bucket.sort_by(rank);
            bucket.truncate(n);
        }
        beam = next;
        ql = base
            .left()
            .step(ql, a)
            .expect("left matcher is total over Σ");
    }
    let mut all: Vec<Hypothesis> = beam.into_values().flatten().collect();
    all.sort_by(rank);
    all.truncate(n);
    all
}
