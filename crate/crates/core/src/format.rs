//! Versioned text format for compiled machines.
//!
//! ```text
//! BIM 1
//! SIGMA <k>            followed by k symbol names, one per line
//! PRIORITY <f1> <f2>…  feature priority used to tokenize items
//! ACTIONS <n>          followed by the action label of rules 1..n
//! LEFT <states> <start>
//! <q> <sym> <q'>       one line per transition (sym indexes SIGMA)
//! TAU <q> <j1> <j2>…   one line per state
//! RIGHT <states> <start>
//! …                    same shape as LEFT
//! PI <states> <start>  optional; sym is a rule index 1..n
//! …
//! END
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::alphabet::{Alphabet, SymbolId};
use crate::automata::Dfsa;
use crate::bimachine::Bimachine;
use crate::error::{Error, FormatError, Result};
use crate::extended::ExtendedMachine;
use crate::idset::IdSet;
use crate::rules::{ActionId, VACUOUS_LABEL};
use crate::simult::SimultMatcher;

/// A loaded machine; files with a `PI` section are extended machines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Machine {
    Basic(Bimachine),
    Extended(ExtendedMachine),
}

impl Machine {
    pub fn base(&self) -> &Bimachine {
        match self {
            Machine::Basic(b) => b,
            Machine::Extended(m) => m.base(),
        }
    }

    pub fn history(&self) -> Option<&SimultMatcher> {
        match self {
            Machine::Basic(_) => None,
            Machine::Extended(m) => Some(m.history()),
        }
    }

    /// Firing rules under the machine's own control strategy.
    pub fn apply_rules(&self, w: &[SymbolId]) -> Result<Vec<usize>> {
        match self {
            Machine::Basic(b) => b.apply_rules(w),
            Machine::Extended(m) => m.apply_rules(w),
        }
    }

    pub fn apply(&self, w: &[SymbolId]) -> Result<Vec<ActionId>> {
        match self {
            Machine::Basic(b) => b.apply(w),
            Machine::Extended(m) => m.apply(w),
        }
    }

    pub fn stats(&self, compile_ms: u64) -> MachineStats {
        let b = self.base();
        MachineStats {
            left_states: b.left().num_states(),
            left_transitions: b.left().num_transitions(),
            right_states: b.right().num_states(),
            right_transitions: b.right().num_transitions(),
            pi_states: self.history().map(SimultMatcher::num_states),
            compile_ms,
        }
    }
}

/// Size and timing figures for one compiled machine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MachineStats {
    pub left_states: usize,
    pub left_transitions: usize,
    pub right_states: usize,
    pub right_transitions: usize,
    pub pi_states: Option<usize>,
    pub compile_ms: u64,
}

impl std::fmt::Display for MachineStats {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "left_states={} left_transitions={} right_states={} right_transitions={}",
            self.left_states, self.left_transitions, self.right_states, self.right_transitions
        )?;
        if let Some(p) = self.pi_states {
            write!(f, " pi_states={p}")?;
        }
        write!(f, " compile_ms={}", self.compile_ms)
    }
}

fn write_matcher(out: &mut String, name: &str, m: &SimultMatcher, symbol_offset: u32) {
    let d = m.dfsa();
    let _ = writeln!(out, "{name} {} {}", d.num_states(), d.start());
    for (q, a, t) in d.transitions() {
        let _ = writeln!(out, "{q} {} {t}", a.0 + symbol_offset);
    }
    for q in 0..d.num_states() as u32 {
        out.push_str(&format!("TAU {q}"));
        for j in m.tau(q).iter() {
            let _ = write!(out, " {j}");
        }
        out.push('\n');
    }
}

pub fn save_to_string(m: &Machine) -> String {
    let b = m.base();
    let mut out = String::from("BIM 1\n");
    let _ = writeln!(out, "SIGMA {}", b.sigma().len());
    for name in b.sigma().names() {
        let _ = writeln!(out, "{name}");
    }
    let _ = writeln!(out, "PRIORITY {}", b.priority().join(" "));
    let _ = writeln!(out, "ACTIONS {}", b.rule_count());
    for a in b.rule_actions() {
        let _ = writeln!(out, "{}", b.action_label(*a));
    }
    write_matcher(&mut out, "LEFT", b.left(), 0);
    write_matcher(&mut out, "RIGHT", b.right(), 0);
    if let Some(h) = m.history() {
        write_matcher(&mut out, "PI", h, 1);
    }
    out.push_str("END\n");
    out
}

pub fn save_machine(m: &Machine, path: &Path) -> std::io::Result<()> {
    fs::write(path, save_to_string(m))
}

pub fn load_machine(path: &Path) -> Result<Machine> {
    let text = fs::read_to_string(path).map_err(|e| {
        Error::Format(FormatError::Section {
            section: "file".into(),
            msg: e.to_string(),
        })
    })?;
    load_from_str(&text)
}

struct Lines<'a> {
    lines: std::iter::Peekable<std::str::Lines<'a>>,
}

fn section_err(section: &str, msg: impl Into<String>) -> Error {
    Error::Format(FormatError::Section {
        section: section.to_string(),
        msg: msg.into(),
    })
}

fn truncated(section: &str) -> Error {
    Error::Format(FormatError::Truncated {
        section: section.to_string(),
    })
}

impl<'a> Lines<'a> {
    fn next(&mut self, section: &str) -> Result<&'a str> {
        self.lines.next().ok_or_else(|| truncated(section))
    }

    /// Reads `KEYWORD a b …` and returns the remaining fields.
    fn header(&mut self, keyword: &str) -> Result<Vec<&'a str>> {
        let line = self.next(keyword)?;
        let mut it = line.split_whitespace();
        if it.next() != Some(keyword) {
            return Err(section_err(
                keyword,
                format!("expected `{keyword}`, found `{line}`"),
            ));
        }
        Ok(it.collect())
    }

    fn peek_keyword(&mut self) -> Option<&'a str> {
        self.lines.peek().and_then(|l| l.split_whitespace().next())
    }
}

fn number<T: std::str::FromStr>(section: &str, s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| section_err(section, format!("expected a number, found `{s}`")))
}

/// Reads one matcher section. `symbols` is the automaton's alphabet size and
/// `offset` is subtracted from serialized symbols.
fn read_matcher(
    lines: &mut Lines<'_>,
    section: &str,
    symbols: usize,
    patterns: usize,
    offset: u32,
) -> Result<SimultMatcher> {
    let head = lines.header(section)?;
    let [states, start] = head[..] else {
        return Err(section_err(section, "expected `<states> <start>`"));
    };
    let states: usize = number(section, states)?;
    let start: u32 = number(section, start)?;
    if states == 0 || start as usize >= states {
        return Err(section_err(section, "start state out of range"));
    }
    let mut transitions = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut tau: Vec<Option<IdSet>> = vec![None; states];
    loop {
        match lines.peek_keyword() {
            None | Some("RIGHT" | "PI" | "END") => break,
            _ => {}
        }
        let line = lines.next(section)?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.first() == Some(&"TAU") {
            let q: usize = number(section, fields.get(1).copied().unwrap_or(""))?;
            if q >= states {
                return Err(section_err(section, format!("TAU for unknown state {q}")));
            }
            let mut set = IdSet::empty(patterns);
            for f in &fields[2..] {
                let j: usize = number(section, f)?;
                if j == 0 || j > patterns {
                    return Err(section_err(
                        section,
                        format!("pattern index {j} out of range"),
                    ));
                }
                set.insert(j);
            }
            if tau[q].replace(set).is_some() {
                return Err(section_err(section, format!("duplicate TAU for state {q}")));
            }
            continue;
        }
        let [q, a, t] = fields[..] else {
            return Err(section_err(
                section,
                format!("malformed transition `{line}`"),
            ));
        };
        let q: u32 = number(section, q)?;
        let a: u32 = number(section, a)?;
        let t: u32 = number(section, t)?;
        let a = a
            .checked_sub(offset)
            .filter(|a| (*a as usize) < symbols)
            .ok_or_else(|| section_err(section, format!("symbol out of range in `{line}`")))?;
        if q as usize >= states || t as usize >= states {
            return Err(section_err(
                section,
                format!("state out of range in `{line}`"),
            ));
        }
        if !seen.insert((q, a)) {
            return Err(section_err(
                section,
                format!("duplicate transition in `{line}`"),
            ));
        }
        transitions.push((q, SymbolId(a), t));
    }
    let tau: Vec<IdSet> = tau
        .into_iter()
        .enumerate()
        .map(|(q, t)| t.ok_or_else(|| section_err(section, format!("missing TAU for state {q}"))))
        .collect::<Result<_>>()?;
    let dfsa = Dfsa::from_parts(
        states,
        symbols,
        start,
        transitions,
        vec![true; states],
        Some(tau),
    );
    Ok(SimultMatcher::from_dfsa(dfsa, patterns))
}

pub fn load_from_str(text: &str) -> Result<Machine> {
    let mut lines = Lines {
        lines: text.lines().peekable(),
    };
    let version = lines.next("BIM")?;
    if version.trim() != "BIM 1" {
        return Err(Error::Format(FormatError::Version(
            version.trim().to_string(),
        )));
    }

    let head = lines.header("SIGMA")?;
    let k: usize = number("SIGMA", head.first().copied().unwrap_or(""))?;
    let mut sigma = Alphabet::new();
    for _ in 0..k {
        let name = lines.next("SIGMA")?.trim();
        if name.is_empty() || sigma.lookup(name).is_some() {
            return Err(section_err("SIGMA", format!("bad symbol name `{name}`")));
        }
        sigma.intern(name);
    }
    if sigma.default_symbol().is_none() {
        return Err(section_err("SIGMA", "missing the default symbol"));
    }

    let mut priority = Vec::new();
    if lines.peek_keyword() == Some("PRIORITY") {
        priority = lines
            .header("PRIORITY")?
            .iter()
            .map(|s| s.to_string())
            .collect();
    }

    let head = lines.header("ACTIONS")?;
    let n: usize = number("ACTIONS", head.first().copied().unwrap_or(""))?;
    if n == 0 {
        return Err(section_err("ACTIONS", "a machine has at least one rule"));
    }
    let mut actions = vec![VACUOUS_LABEL.to_string()];
    let mut rule_actions = Vec::with_capacity(n);
    for _ in 0..n {
        let label = lines.next("ACTIONS")?.trim();
        let id = match actions.iter().position(|a| a == label) {
            Some(i) => i,
            None => {
                actions.push(label.to_string());
                actions.len() - 1
            }
        };
        rule_actions.push(ActionId(id as u32));
    }

    let left = read_matcher(&mut lines, "LEFT", k, n, 0)?;
    let right = read_matcher(&mut lines, "RIGHT", k, n, 0)?;
    let base = Bimachine::from_parts(left, right, sigma, actions, rule_actions, priority);
    let machine = if lines.peek_keyword() == Some("PI") {
        let pi = read_matcher(&mut lines, "PI", n, n, 1)?;
        Machine::Extended(ExtendedMachine::from_parts(base, pi))
    } else {
        Machine::Basic(base)
    };
    match lines.lines.next().map(str::trim) {
        Some("END") => Ok(machine),
        Some(other) => Err(section_err("END", format!("unexpected `{other}`"))),
        None => Err(truncated("END")),
    }
}
