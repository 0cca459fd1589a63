//! Compiles ranked regular tagging rules into bimachines: a left-to-right and
//! a right-to-left deterministic automaton whose per-state pattern sets are
//! intersected to pick the firing rule at every position.
//!
//! ```
//! use bimachine::{compile_bimachine, inject_default_rule, parse_grammar, tokenize_plain};
//!
//! let rules = inject_default_rule(&parse_grammar("b / a / -> X;\n/ a / -> Y;").unwrap());
//! let machine = compile_bimachine(&rules).unwrap();
//! let word = tokenize_plain("b a a", &rules.sigma);
//! let tags: Vec<&str> = machine
//!     .apply(&word)
//!     .unwrap()
//!     .into_iter()
//!     .map(|a| machine.action_label(a))
//!     .collect();
//! assert_eq!(tags, ["-", "X", "Y"]);
//! ```

pub mod alphabet;
pub mod automata;
pub mod bimachine;
pub mod control;
pub mod error;
pub mod extended;
pub mod format;
pub mod grammar;
pub mod idset;
pub mod oracle;
pub mod par;
pub mod regex;
pub mod rules;
pub mod simult;
pub mod synth;

pub use alphabet::{Alphabet, SymbolId, DEFAULT_SYMBOL};
pub use bimachine::{compile_bimachine, Bimachine, CompileOptions, TraceStep};
pub use control::{all_matching_rules, n_best, Hypothesis, ScoredRuleSet};
pub use error::{Error, FormatError, Result};
pub use extended::{compile_extended, ExtendedMachine};
pub use format::{load_machine, save_machine, Machine, MachineStats};
pub use grammar::{parse_grammar, render_grammar, tokenize_items, tokenize_plain};
pub use idset::IdSet;
pub use regex::{parse_regex, Regex};
pub use rules::{inject_default_rule, ActionId, Rule, RuleSet};
pub use simult::{build_simult_matcher, SimultMatcher};
