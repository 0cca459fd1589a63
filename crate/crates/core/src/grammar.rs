//! Rule files and item tokenization.
//!
//! A grammar is a sequence of rules, each terminated by `;`:
//!
//! ```text
//! # comment
//! priority: name, pos
//!
//! [name=that] / [name=suspects] / -> [sense=2];
//! 1 2* : / a / b -> X;
//! ```
//!
//! Each rule reads `λ / φ / ρ -> ψ`, optionally prefixed with `π :` where `π`
//! is a pattern over rule indices. Rules are ranked by file order. Every
//! attribute-value pair (`f=v`) and every bare token is one input symbol.

use crate::alphabet::{Alphabet, SymbolId};
use crate::error::{Error, Result};
use crate::regex::{parse_regex_with, Regex};
use crate::rules::{Rule, RuleSet};

struct RawRule {
    line: usize,
    pi: Option<Regex>,
    lambda: Regex,
    focus_text: String,
    focus: Regex,
    rho: Regex,
    action: String,
}

/// Parses a rule file. The default rule is not added; see
/// [`inject_default_rule`](crate::rules::inject_default_rule).
pub fn parse_grammar(text: &str) -> Result<RuleSet> {
    let mut sigma = Alphabet::with_default();
    let mut priority: Option<Vec<String>> = None;
    let mut raw = Vec::new();

    let mut pending = String::new();
    let mut pending_line = 0;
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = line.split('#').next().unwrap_or("");
        if pending.trim().is_empty() {
            if let Some((name, value)) = directive(line) {
                match name {
                    "priority" => {
                        let feats: Vec<String> = value
                            .split(|c: char| c == ',' || c.is_whitespace())
                            .filter(|s| !s.is_empty())
                            .map(str::to_string)
                            .collect();
                        if feats.is_empty() {
                            return Err(Error::Grammar {
                                line: lineno,
                                msg: "empty priority list".into(),
                            });
                        }
                        priority = Some(feats);
                    }
                    other => {
                        return Err(Error::Grammar {
                            line: lineno,
                            msg: format!("unknown directive `{other}`"),
                        })
                    }
                }
                continue;
            }
        }
        let mut rest = line;
        while let Some(semi) = rest.find(';') {
            if pending.trim().is_empty() {
                pending_line = lineno;
            }
            pending.push_str(&rest[..semi]);
            if !pending.trim().is_empty() {
                raw.push(parse_rule(&pending, pending_line, &mut sigma)?);
            }
            pending.clear();
            rest = &rest[semi + 1..];
        }
        if pending.trim().is_empty() && !rest.trim().is_empty() {
            pending_line = lineno;
        }
        pending.push_str(rest);
        pending.push('\n');
    }
    if !pending.trim().is_empty() {
        return Err(Error::Grammar {
            line: pending_line,
            msg: "rule is not terminated by `;`".into(),
        });
    }

    let mut rs = RuleSet::new(sigma);
    if let Some(p) = priority {
        rs.priority = p;
    }
    let sigma_size = rs.sigma.len();
    for r in raw {
        let focus = r.focus.unit_symbols(sigma_size).ok_or(Error::FocusLength {
            line: r.line,
            focus: r.focus_text.trim().to_string(),
        })?;
        let action = rs.action_id(&r.action);
        rs.push(Rule {
            lambda: r.lambda,
            focus,
            rho: r.rho,
            action,
            pi: r.pi,
        });
    }
    Ok(rs)
}

/// `name: value` at the start of a line, where `name` is alphabetic and the
/// line holds no `/` (so it cannot be a rule).
fn directive(line: &str) -> Option<(&str, &str)> {
    let t = line.trim();
    let (name, value) = t.split_once(':')?;
    let name = name.trim();
    let ok = !name.is_empty()
        && name.starts_with(|c: char| c.is_ascii_alphabetic())
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        && !t.contains('/');
    ok.then_some((name, value.trim()))
}

fn parse_rule(stmt: &str, line: usize, sigma: &mut Alphabet) -> Result<RawRule> {
    let err = |msg: String| Error::Grammar { line, msg };
    let (lhs, rhs) = stmt
        .split_once("->")
        .ok_or_else(|| err("expected `λ / φ / ρ -> ψ`".into()))?;
    let parts: Vec<&str> = lhs.split('/').collect();
    if parts.len() != 3 {
        return Err(err(format!(
            "expected three `/`-separated fields before `->`, found {}",
            parts.len()
        )));
    }
    let (pi_text, lambda_text) = match parts[0].split_once(':') {
        Some((p, l)) => (Some(p), l),
        None => (None, parts[0]),
    };

    let mut intern = |name: &str| Some(sigma.intern(name));
    let field = |what: &str, text: &str, resolve: &mut dyn FnMut(&str) -> Option<SymbolId>| {
        parse_regex_with(text, resolve).map_err(|e| err(format!("{what}: {e}")))
    };
    let lambda = field("left context", lambda_text, &mut intern)?;
    let focus = field("focus", parts[1], &mut intern)?;
    let rho = field("right context", parts[2], &mut intern)?;
    let pi = match pi_text {
        Some(t) => Some(field("history pattern", t, &mut rule_index_symbol)?),
        None => None,
    };

    let action = action_label(rhs.trim());
    if action.is_empty() {
        return Err(err("missing action after `->`".into()));
    }
    Ok(RawRule {
        line,
        pi,
        lambda,
        focus_text: parts[1].to_string(),
        focus,
        rho,
        action,
    })
}

/// Rule index `k` (1-based, written in decimal) is symbol `k - 1` of the
/// history alphabet.
pub fn rule_index_symbol(token: &str) -> Option<SymbolId> {
    match token.parse::<u32>() {
        Ok(k) if k >= 1 => Some(SymbolId(k - 1)),
        _ => None,
    }
}

fn action_label(text: &str) -> String {
    let t = text.trim();
    match t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
        Some(inner) => inner.trim().to_string(),
        None => t.to_string(),
    }
}

/// Writes a rule set back in grammar syntax. A trailing default rule is
/// omitted since it is re-added by injection.
pub fn render_grammar(rs: &RuleSet) -> String {
    let mut out = format!("priority: {}\n", rs.priority.join(", "));
    let name = |s: SymbolId| rs.sigma.name(s).to_string();
    let rule_name = |s: SymbolId| (s.0 + 1).to_string();
    let n = if rs.has_default_rule() {
        rs.len() - 1
    } else {
        rs.len()
    };
    for rule in &rs.rules[..n] {
        if let Some(pi) = &rule.pi {
            out.push_str(&pi.render(&rule_name));
            out.push_str(" : ");
        }
        let side = |r: &Regex| match r {
            Regex::Empty => String::new(),
            r => r.render(&name),
        };
        let focus = if rule.focus.len() == 1 {
            name(rule.focus[0])
        } else {
            Regex::Class(rule.focus.clone()).render(&name)
        };
        let label = rs.action_label(rule.action);
        let label = if label.contains('=') || label.contains(char::is_whitespace) {
            format!("[{label}]")
        } else {
            label.to_string()
        };
        out.push_str(&format!(
            "{} / {} / {} -> {};\n",
            side(&rule.lambda),
            focus,
            side(&rule.rho),
            label
        ));
    }
    out
}

/// Maps feature-structure items (one per line, whitespace-separated
/// `feature=value` pairs) to symbols. Each item becomes its highest-priority
/// pair present in `sigma`, or the default symbol when none is.
pub fn tokenize_items<'a, I>(
    lines: I,
    sigma: &Alphabet,
    priority: &[String],
) -> Result<Vec<SymbolId>>
where
    I: IntoIterator<Item = &'a str>,
{
    let default = sigma
        .default_symbol()
        .expect("alphabet has a default symbol");
    let rank = |feature: &str| {
        priority
            .iter()
            .position(|p| p == feature)
            .unwrap_or(priority.len())
    };
    let mut out = Vec::new();
    for (i, line) in lines.into_iter().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut best: Option<(usize, SymbolId)> = None;
        for pair in line.split_whitespace() {
            let (f, v) = pair.split_once('=').ok_or_else(|| Error::MalformedItem {
                line: i + 1,
                text: line.to_string(),
            })?;
            if f.is_empty() || v.is_empty() {
                return Err(Error::MalformedItem {
                    line: i + 1,
                    text: line.to_string(),
                });
            }
            if let Some(id) = sigma.lookup(pair) {
                let r = rank(f);
                if best.is_none_or(|(b, _)| r < b) {
                    best = Some((r, id));
                }
            }
        }
        out.push(best.map_or(default, |(_, id)| id));
    }
    Ok(out)
}

/// Plain-token mode: each whitespace-separated token is a symbol name;
/// unknown tokens map to the default symbol.
pub fn tokenize_plain(text: &str, sigma: &Alphabet) -> Vec<SymbolId> {
    let default = sigma
        .default_symbol()
        .expect("alphabet has a default symbol");
    text.split_whitespace()
        .map(|t| sigma.lookup(t).unwrap_or(default))
        .collect()
}
