//! Compilation of ranked rules into a bimachine and its two-pass application.
//!
//! The left matcher tracks which left contexts `Σ*λ_i` match the prefix read
//! so far. The right matcher runs over the reversed word and tracks which
//! `Σ*(φ_iρ_i)⁻¹` match, i.e. which `φ_iρ_iΣ*` match the remaining suffix.
//! At each position the firing rule is the minimum of the intersection.

use crate::alphabet::{Alphabet, SymbolId};
use crate::error::{Error, Result};
use crate::idset::IdSet;
use crate::par;
use crate::regex::Regex;
use crate::rules::{ActionId, RuleSet};
use crate::simult::SimultMatcher;

#[derive(Clone, Copy, Debug)]
pub struct CompileOptions {
    pub minimize: bool,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions { minimize: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimachine {
    left: SimultMatcher,
    right: SimultMatcher,
    sigma: Alphabet,
    actions: Vec<String>,
    rule_actions: Vec<ActionId>,
    priority: Vec<String>,
}

/// Per-position record produced by [`Bimachine::trace`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    /// 1-based position.
    pub position: usize,
    pub symbol: SymbolId,
    /// Left state after the preceding symbols.
    pub left_state: u32,
    /// Right state after reading the suffix from this position, backwards.
    pub right_state: u32,
    pub left_tau: IdSet,
    pub right_tau: IdSet,
    pub matching: IdSet,
    pub rule: usize,
    pub action: ActionId,
}

pub fn compile_bimachine(rs: &RuleSet) -> Result<Bimachine> {
    Bimachine::compile(rs, CompileOptions::default())
}

impl Bimachine {
    pub fn compile(rs: &RuleSet, opts: CompileOptions) -> Result<Bimachine> {
        let k = rs.sigma.len();
        let lambdas: Vec<Regex> = rs.rules.iter().map(|r| r.lambda.clone()).collect();
        let rights: Vec<Regex> = rs
            .rules
            .iter()
            .map(|r| r.focus_and_right().reverse())
            .collect();
        Ok(Bimachine {
            left: SimultMatcher::build_with(&lambdas, k, opts.minimize)?,
            right: SimultMatcher::build_with(&rights, k, opts.minimize)?,
            sigma: rs.sigma.clone(),
            actions: rs.actions.clone(),
            rule_actions: rs.rule_actions(),
            priority: rs.priority.clone(),
        })
    }

    /// Reassembles a machine from its parts (used by the loader).
    pub fn from_parts(
        left: SimultMatcher,
        right: SimultMatcher,
        sigma: Alphabet,
        actions: Vec<String>,
        rule_actions: Vec<ActionId>,
        priority: Vec<String>,
    ) -> Bimachine {
        assert_eq!(left.patterns(), rule_actions.len());
        assert_eq!(right.patterns(), rule_actions.len());
        Bimachine {
            left,
            right,
            sigma,
            actions,
            rule_actions,
            priority,
        }
    }

    pub fn left(&self) -> &SimultMatcher {
        &self.left
    }

    pub fn right(&self) -> &SimultMatcher {
        &self.right
    }

    pub fn sigma(&self) -> &Alphabet {
        &self.sigma
    }

    pub fn actions(&self) -> &[String] {
        &self.actions
    }

    pub fn priority(&self) -> &[String] {
        &self.priority
    }

    /// Number of rules.
    pub fn rule_count(&self) -> usize {
        self.rule_actions.len()
    }

    pub fn rule_action(&self, rule: usize) -> ActionId {
        self.rule_actions[rule - 1]
    }

    pub fn rule_actions(&self) -> &[ActionId] {
        &self.rule_actions
    }

    pub fn action_label(&self, a: ActionId) -> &str {
        &self.actions[a.0 as usize]
    }

    /// Right-matcher states indexed by position: entry `k` (for `k` in
    /// `1..=t`) is the state after reading `s_t … s_k`; entry `t + 1` is the
    /// start state. Entry 0 is unused and equals entry 1.
    pub fn right_states(&self, w: &[SymbolId]) -> Vec<u32> {
        let t = w.len();
        let mut out = vec![0; t + 2];
        let mut q = self.right.start();
        out[t + 1] = q;
        for k in (1..=t).rev() {
            q = self
                .right
                .step(q, w[k - 1])
                .expect("right matcher is total over Σ");
            out[k] = q;
        }
        out[0] = out[1];
        out
    }

    /// Rule selected by the state pair (the `g` form of the output function).
    pub fn select(&self, left_state: u32, right_state: u32) -> Option<usize> {
        self.left
            .tau(left_state)
            .min_common(self.right.tau(right_state))
    }

    /// `g(q←, q→)`: action of the least rule in `τ←(q←) ∩ τ→(q→)`.
    pub fn output_g(&self, left_state: u32, right_state: u32) -> Result<ActionId> {
        self.select(left_state, right_state)
            .map(|r| self.rule_action(r))
            .ok_or(Error::EmptyIntersection { position: 0 })
    }

    /// `h(q←, a, q→)` where `q→` is the right state before reading `a`.
    pub fn output_h(&self, left_state: u32, a: SymbolId, right_state: u32) -> Result<ActionId> {
        let next = self
            .right
            .step(right_state, a)
            .expect("right matcher is total over Σ");
        self.output_g(left_state, next)
    }

    /// Index of the firing rule at every position.
    pub fn apply_rules(&self, w: &[SymbolId]) -> Result<Vec<usize>> {
        let right = self.right_states(w);
        let mut q = self.left.start();
        let mut out = Vec::with_capacity(w.len());
        for (i, &a) in w.iter().enumerate() {
            let r = self
                .select(q, right[i + 1])
                .ok_or(Error::EmptyIntersection { position: i + 1 })?;
            out.push(r);
            q = self.left.step(q, a).expect("left matcher is total over Σ");
        }
        Ok(out)
    }

    /// Action emitted at every position.
    pub fn apply(&self, w: &[SymbolId]) -> Result<Vec<ActionId>> {
        Ok(self
            .apply_rules(w)?
            .into_iter()
            .map(|r| self.rule_action(r))
            .collect())
    }

    /// Applies the machine to many words, in parallel when enabled.
    pub fn apply_batch(&self, words: &[Vec<SymbolId>]) -> Result<Vec<Vec<ActionId>>> {
        par::map(words, |w| self.apply(w)).into_iter().collect()
    }

    pub fn trace(&self, w: &[SymbolId]) -> Result<Vec<TraceStep>> {
        let right = self.right_states(w);
        let mut q = self.left.start();
        let mut out = Vec::with_capacity(w.len());
        for (i, &a) in w.iter().enumerate() {
            let qr = right[i + 1];
            let left_tau = self.left.tau(q).clone();
            let right_tau = self.right.tau(qr).clone();
            let matching = left_tau.intersection(&right_tau);
            let rule = matching
                .first()
                .ok_or(Error::EmptyIntersection { position: i + 1 })?;
            out.push(TraceStep {
                position: i + 1,
                symbol: a,
                left_state: q,
                right_state: qr,
                left_tau,
                right_tau,
                matching,
                rule,
                action: self.rule_action(rule),
            });
            q = self.left.step(q, a).expect("left matcher is total over Σ");
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::inject_default_rule;

    fn sym(rs: &RuleSet, n: &str) -> SymbolId {
        rs.sigma.lookup(n).unwrap()
    }

    /// R1: b / a / → X; R2: / a / → Y; R3: default.
    fn g1() -> RuleSet {
        let mut rs = RuleSet::new(crate::alphabet::Alphabet::from_names(["a", "b"]));
        let (a, b) = (sym(&rs, "a"), sym(&rs, "b"));
        rs.add(None, Regex::Symbol(b), &[a], Regex::Empty, "X");
        rs.add(None, Regex::Empty, &[a], Regex::Empty, "Y");
        inject_default_rule(&rs)
    }

    fn word(rs: &RuleSet, s: &str) -> Vec<SymbolId> {
        s.chars().map(|c| sym(rs, &c.to_string())).collect()
    }

    fn labels(b: &Bimachine, acts: &[ActionId]) -> Vec<String> {
        acts.iter()
            .map(|a| b.action_label(*a).to_string())
            .collect()
    }

    #[test]
    fn default_only_grammar() {
        let rs = inject_default_rule(&RuleSet::new(Alphabet::from_names(["a", "b"])));
        let b = compile_bimachine(&rs).unwrap();
        // The right matcher separates the empty suffix (no match) from the rest.
        assert_eq!(b.left().num_states(), 1);
        assert_eq!(b.right().num_states(), 2);
        let w = word(&rs, "ab");
        assert_eq!(b.apply_rules(&w).unwrap(), vec![1, 1]);
        let q = b.left().start();
        let r = b.right().step(b.right().start(), w[0]).unwrap();
        assert_eq!(b.output_g(q, r).unwrap(), ActionId::VACUOUS);
    }

    #[test]
    fn g1_on_baa() {
        let rs = g1();
        let b = compile_bimachine(&rs).unwrap();
        let w = word(&rs, "baa");
        assert_eq!(labels(&b, &b.apply(&w).unwrap()), ["-", "X", "Y"]);
        let tr = b.trace(&w).unwrap();
        assert_eq!(tr[1].matching.to_vec(), vec![1, 2, 3]);
        assert_eq!(tr[1].rule, 1);
        assert_eq!(tr[2].matching.to_vec(), vec![2, 3]);
        assert!(b.trace(&[]).unwrap().is_empty());
        assert!(b.apply(&[]).unwrap().is_empty());
    }

    #[test]
    fn right_context_rule() {
        // R1: / a / b → X; R2: / a / → Y; default
        let mut rs = RuleSet::new(Alphabet::from_names(["a", "b"]));
        let (a, bs) = (sym(&rs, "a"), sym(&rs, "b"));
        rs.add(None, Regex::Empty, &[a], Regex::Symbol(bs), "X");
        rs.add(None, Regex::Empty, &[a], Regex::Empty, "Y");
        let rs = inject_default_rule(&rs);
        let b = compile_bimachine(&rs).unwrap();
        assert_eq!(labels(&b, &b.apply(&word(&rs, "ab")).unwrap()), ["X", "-"]);
        assert_eq!(labels(&b, &b.apply(&word(&rs, "aa")).unwrap()), ["Y", "Y"]);
    }

    #[test]
    fn missing_default_is_reported() {
        let mut rs = RuleSet::new(Alphabet::from_names(["a", "b"]));
        let a = sym(&rs, "a");
        rs.add(None, Regex::Empty, &[a], Regex::Empty, "Y");
        let b = compile_bimachine(&rs).unwrap();
        assert!(matches!(
            b.apply(&word(&rs, "ab")),
            Err(Error::EmptyIntersection { position: 2 })
        ));
    }

    #[test]
    fn h_and_g_agree_on_g1() {
        let rs = g1();
        let b = compile_bimachine(&rs).unwrap();
        for ql in 0..b.left().num_states() as u32 {
            for qr in 0..b.right().num_states() as u32 {
                for a in rs.sigma.symbols() {
                    let next = b.right().step(qr, a).unwrap();
                    assert_eq!(
                        b.output_h(ql, a, qr).unwrap(),
                        b.output_g(ql, next).unwrap()
                    );
                }
            }
        }
    }
}
