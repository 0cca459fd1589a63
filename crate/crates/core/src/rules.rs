//! Ranked tagging rules `λ / φ / ρ -> ψ`, optionally prefixed by a history
//! pattern `π :` over the indices of previously fired rules.

use crate::alphabet::{Alphabet, SymbolId};
use crate::regex::Regex;

/// Index into a rule set's action table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActionId(pub u32);

impl ActionId {
    /// The default rule's action, rendered as `-`.
    pub const VACUOUS: ActionId = ActionId(0);
}

pub const VACUOUS_LABEL: &str = "-";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    /// Left context; the prefix before the focus must match `Σ*λ`.
    pub lambda: Regex,
    /// Sorted, non-empty set of symbols the focus item may be.
    pub focus: Vec<SymbolId>,
    /// Right context; the suffix after the focus must match `ρΣ*`.
    pub rho: Regex,
    pub action: ActionId,
    /// History pattern over rule indices, symbol `k - 1` standing for rule `k`.
    /// `None` means any history.
    pub pi: Option<Regex>,
}

impl Rule {
    /// `φρ` as one pattern.
    pub fn focus_and_right(&self) -> Regex {
        Regex::Concat(vec![
            Regex::class(self.focus.iter().copied()),
            self.rho.clone(),
        ])
    }
}

/// Rules in priority order (rule `i` lives at position `i - 1`) together with
/// the input alphabet and the action table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleSet {
    pub rules: Vec<Rule>,
    pub sigma: Alphabet,
    /// Action labels; entry 0 is always the vacuous action.
    pub actions: Vec<String>,
    /// Feature names in the order used to pick an item's symbol.
    pub priority: Vec<String>,
}

impl RuleSet {
    /// An empty rule set over `sigma`. The reserved default symbol is added
    /// if it is missing.
    pub fn new(mut sigma: Alphabet) -> Self {
        sigma.intern(crate::alphabet::DEFAULT_SYMBOL);
        RuleSet {
            rules: Vec::new(),
            sigma,
            actions: vec![VACUOUS_LABEL.to_string()],
            priority: vec!["name".to_string(), "pos".to_string()],
        }
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Rule by 1-based index.
    pub fn rule(&self, index: usize) -> &Rule {
        &self.rules[index - 1]
    }

    pub fn action_id(&mut self, label: &str) -> ActionId {
        if let Some(i) = self.actions.iter().position(|a| a == label) {
            return ActionId(i as u32);
        }
        self.actions.push(label.to_string());
        ActionId((self.actions.len() - 1) as u32)
    }

    pub fn action_label(&self, a: ActionId) -> &str {
        &self.actions[a.0 as usize]
    }

    /// Appends a rule and returns its index.
    pub fn push(&mut self, rule: Rule) -> usize {
        self.rules.push(rule);
        self.rules.len()
    }

    /// Convenience for building rule sets in code.
    pub fn add(
        &mut self,
        pi: Option<Regex>,
        lambda: Regex,
        focus: &[SymbolId],
        rho: Regex,
        action: &str,
    ) -> usize {
        let action = self.action_id(action);
        let mut focus = focus.to_vec();
        focus.sort();
        focus.dedup();
        self.push(Rule {
            lambda,
            focus,
            rho,
            action,
            pi,
        })
    }

    /// The rule that matches every context with the vacuous action.
    pub fn default_rule(&self) -> Rule {
        Rule {
            lambda: Regex::Empty,
            focus: self.sigma.symbols().collect(),
            rho: Regex::Empty,
            action: ActionId::VACUOUS,
            pi: None,
        }
    }

    pub fn has_default_rule(&self) -> bool {
        self.rules.last() == Some(&self.default_rule())
    }

    /// Action of every rule, in index order.
    pub fn rule_actions(&self) -> Vec<ActionId> {
        self.rules.iter().map(|r| r.action).collect()
    }
}

/// Appends the universal default rule unless it is already last.
///
/// With `λ = ρ = ε` the conditions `Σ*λ` and `φρΣ*` accept every prefix and
/// every non-empty suffix, so the default matches at every position.
pub fn inject_default_rule(rs: &RuleSet) -> RuleSet {
    let mut out = rs.clone();
    if !out.has_default_rule() {
        let d = out.default_rule();
        out.rules.push(d);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_grammar_gets_one_rule() {
        let rs = RuleSet::new(Alphabet::new());
        let d = inject_default_rule(&rs);
        assert_eq!(d.len(), 1);
        assert_eq!(d.rule(1).action, ActionId::VACUOUS);
        assert_eq!(d.rule(1).focus, vec![SymbolId(0)]);
    }

    #[test]
    fn injection_is_idempotent() {
        let mut rs = RuleSet::new(Alphabet::from_names(["a", "b"]));
        rs.add(None, Regex::Empty, &[SymbolId(0)], Regex::Empty, "X");
        let once = inject_default_rule(&rs);
        let twice = inject_default_rule(&once);
        assert_eq!(once.len(), 2);
        assert_eq!(once, twice);
    }

    #[test]
    fn actions_are_interned() {
        let mut rs = RuleSet::new(Alphabet::new());
        let x = rs.action_id("X");
        assert_eq!(rs.action_id("X"), x);
        assert_eq!(rs.action_id("-"), ActionId::VACUOUS);
        assert_eq!(rs.action_label(x), "X");
    }
}
