//! Rules whose left context also constrains the indices of the rules that
//! fired before, via a pattern `π` over rule indices.
//!
//! The history matcher `A_π` reads fired rule indices (symbol `k - 1` for rule
//! `k`) and runs in lockstep with the left matcher. A rule is admissible at a
//! position when the history so far matches `I*π_i`.

use crate::alphabet::SymbolId;
use crate::bimachine::{Bimachine, CompileOptions};
use crate::error::{Error, Result};
use crate::idset::IdSet;
use crate::par;
use crate::regex::Regex;
use crate::rules::{ActionId, RuleSet};
use crate::simult::SimultMatcher;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedMachine {
    base: Bimachine,
    history: SimultMatcher,
}

/// One position of an extended run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedStep {
    pub position: usize,
    pub left_state: u32,
    pub history_state: u32,
    pub right_state: u32,
    pub admissible: IdSet,
    pub rule: usize,
    pub action: ActionId,
}

pub fn compile_extended(rs: &RuleSet) -> Result<ExtendedMachine> {
    ExtendedMachine::compile(rs, CompileOptions::default())
}

impl ExtendedMachine {
    pub fn compile(rs: &RuleSet, opts: CompileOptions) -> Result<ExtendedMachine> {
        let n = rs.len();
        let mut pis = Vec::with_capacity(n);
        for (i, rule) in rs.rules.iter().enumerate() {
            let pi = rule.pi.clone().unwrap_or(Regex::Empty);
            if let Some(s) = pi.max_symbol() {
                if s.index() >= n {
                    return Err(Error::RuleIndexOutOfRange {
                        rule: i + 1,
                        index: s.index() + 1,
                        n,
                    });
                }
            }
            pis.push(pi);
        }
        Ok(ExtendedMachine {
            base: Bimachine::compile(rs, opts)?,
            history: SimultMatcher::build_with(&pis, n, opts.minimize)?,
        })
    }

    pub fn from_parts(base: Bimachine, history: SimultMatcher) -> ExtendedMachine {
        assert_eq!(history.patterns(), base.rule_count());
        assert_eq!(history.dfsa().num_symbols(), base.rule_count());
        ExtendedMachine { base, history }
    }

    pub fn base(&self) -> &Bimachine {
        &self.base
    }

    pub fn history(&self) -> &SimultMatcher {
        &self.history
    }

    /// History state after the given rule has fired.
    #[inline]
    pub fn advance(&self, history_state: u32, rule: usize) -> u32 {
        self.history
            .step(history_state, SymbolId((rule - 1) as u32))
            .expect("history matcher is total over rule indices")
    }

    pub fn trace(&self, w: &[SymbolId]) -> Result<Vec<ExtendedStep>> {
        let base = &self.base;
        let right = base.right_states(w);
        let (left, hist) = (base.left(), &self.history);
        let mut ql = left.start();
        let mut qh = hist.start();
        let mut out = Vec::with_capacity(w.len());
        for (i, &a) in w.iter().enumerate() {
            let qr = right[i + 1];
            let mut admissible = left.tau(ql).intersection(base.right().tau(qr));
            admissible.intersect_with(hist.tau(qh));
            let rule = admissible
                .first()
                .ok_or(Error::EmptyIntersection { position: i + 1 })?;
            out.push(ExtendedStep {
                position: i + 1,
                left_state: ql,
                history_state: qh,
                right_state: qr,
                admissible,
                rule,
                action: base.rule_action(rule),
            });
            qh = self.advance(qh, rule);
            ql = left.step(ql, a).expect("left matcher is total over Σ");
        }
        Ok(out)
    }

    /// Firing rule index at every position.
    pub fn apply_rules(&self, w: &[SymbolId]) -> Result<Vec<usize>> {
        let base = &self.base;
        let right = base.right_states(w);
        let (left, hist) = (base.left(), &self.history);
        let mut ql = left.start();
        let mut qh = hist.start();
        let mut out = Vec::with_capacity(w.len());
        for (i, &a) in w.iter().enumerate() {
            let rule = left
                .tau(ql)
                .min_common3(hist.tau(qh), base.right().tau(right[i + 1]))
                .ok_or(Error::EmptyIntersection { position: i + 1 })?;
            out.push(rule);
            qh = self.advance(qh, rule);
            ql = left.step(ql, a).expect("left matcher is total over Σ");
        }
        Ok(out)
    }

    pub fn apply(&self, w: &[SymbolId]) -> Result<Vec<ActionId>> {
        Ok(self
            .apply_rules(w)?
            .into_iter()
            .map(|r| self.base.rule_action(r))
            .collect())
    }

    pub fn apply_batch(&self, words: &[Vec<SymbolId>]) -> Result<Vec<Vec<ActionId>>> {
        par::map(words, |w| self.apply(w)).into_iter().collect()
    }
}
