//! Regular expressions over an alphabet of symbols.
//!
//! Concrete syntax, with tokens separated by whitespace:
//!
//! ```text
//! a b          concatenation (juxtaposition)
//! a | b        union (binds weaker than concatenation)
//! a* a+ a?     postfix repetition
//! ( ... )      grouping; `()` is the empty word
//! .            any symbol of the input alphabet
//! [f=v|w]      class {f=v, f=w}; `[a|b]` is the class {a, b}
//! ```
//!
//! Symbol names are runs of characters other than whitespace and
//! `( ) | * + ? . [ ] ; / :`.
//!
//! The empty pattern denotes the empty word.

use crate::alphabet::{Alphabet, SymbolId};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Regex {
    /// The empty word.
    Empty,
    Symbol(SymbolId),
    /// Non-empty, sorted, duplicate-free set of symbols.
    Class(Vec<SymbolId>),
    /// Any symbol of the input alphabet.
    Any,
    Concat(Vec<Regex>),
    Union(Vec<Regex>),
    Star(Box<Regex>),
    Plus(Box<Regex>),
    Optional(Box<Regex>),
}

impl Regex {
    pub fn sym(id: u32) -> Regex {
        Regex::Symbol(SymbolId(id))
    }

    /// Builds a class, collapsing a singleton to a plain symbol.
    pub fn class<I: IntoIterator<Item = SymbolId>>(ids: I) -> Regex {
        let mut v: Vec<SymbolId> = ids.into_iter().collect();
        v.sort();
        v.dedup();
        assert!(!v.is_empty(), "symbol classes must be non-empty");
        if v.len() == 1 {
            Regex::Symbol(v[0])
        } else {
            Regex::Class(v)
        }
    }

    pub fn concat(mut parts: Vec<Regex>) -> Regex {
        match parts.len() {
            0 => Regex::Empty,
            1 => parts.pop().unwrap(),
            _ => Regex::Concat(parts),
        }
    }

    pub fn union(mut parts: Vec<Regex>) -> Regex {
        match parts.len() {
            0 => panic!("union needs at least one alternative"),
            1 => parts.pop().unwrap(),
            _ => Regex::Union(parts),
        }
    }

    pub fn star(r: Regex) -> Regex {
        Regex::Star(Box::new(r))
    }

    pub fn plus(r: Regex) -> Regex {
        Regex::Plus(Box::new(r))
    }

    pub fn optional(r: Regex) -> Regex {
        Regex::Optional(Box::new(r))
    }

    /// Mirror image: `L(r.reverse())` is the set of reversed words of `L(r)`.
    pub fn reverse(&self) -> Regex {
        match self {
            Regex::Empty | Regex::Symbol(_) | Regex::Class(_) | Regex::Any => self.clone(),
            Regex::Concat(parts) => Regex::Concat(parts.iter().rev().map(Regex::reverse).collect()),
            Regex::Union(parts) => Regex::Union(parts.iter().map(Regex::reverse).collect()),
            Regex::Star(r) => Regex::star(r.reverse()),
            Regex::Plus(r) => Regex::plus(r.reverse()),
            Regex::Optional(r) => Regex::optional(r.reverse()),
        }
    }

    /// Calls `f` on every symbol mentioned explicitly (not through `Any`).
    pub fn for_each_symbol(&self, f: &mut impl FnMut(SymbolId)) {
        match self {
            Regex::Empty | Regex::Any => {}
            Regex::Symbol(s) => f(*s),
            Regex::Class(ss) => ss.iter().copied().for_each(f),
            Regex::Concat(parts) | Regex::Union(parts) => {
                parts.iter().for_each(|p| p.for_each_symbol(f))
            }
            Regex::Star(r) | Regex::Plus(r) | Regex::Optional(r) => r.for_each_symbol(f),
        }
    }

    pub fn max_symbol(&self) -> Option<SymbolId> {
        let mut m = None;
        self.for_each_symbol(&mut |s| m = m.max(Some(s)));
        m
    }

    pub fn depth(&self) -> usize {
        match self {
            Regex::Empty | Regex::Symbol(_) | Regex::Class(_) | Regex::Any => 0,
            Regex::Concat(parts) | Regex::Union(parts) => {
                1 + parts.iter().map(Regex::depth).max().unwrap_or(0)
            }
            Regex::Star(r) | Regex::Plus(r) | Regex::Optional(r) => 1 + r.depth(),
        }
    }

    /// If every word of the language has length exactly one, returns the set
    /// of those symbols. `Any` expands to `0..sigma_size`.
    pub fn unit_symbols(&self, sigma_size: usize) -> Option<Vec<SymbolId>> {
        let mut out = match self {
            Regex::Symbol(s) => vec![*s],
            Regex::Class(ss) => ss.clone(),
            Regex::Any => (0..sigma_size as u32).map(SymbolId).collect(),
            Regex::Union(parts) => {
                let mut v = Vec::new();
                for p in parts {
                    v.extend(p.unit_symbols(sigma_size)?);
                }
                v
            }
            Regex::Concat(parts) if parts.len() == 1 => parts[0].unit_symbols(sigma_size)?,
            _ => return None,
        };
        out.sort();
        out.dedup();
        (!out.is_empty()).then_some(out)
    }

    /// Renders in the concrete syntax accepted by [`parse_regex`], fully
    /// parenthesized so that reparsing yields an identical tree.
    pub fn render(&self, name: &impl Fn(SymbolId) -> String) -> String {
        match self {
            Regex::Empty => "()".to_string(),
            Regex::Symbol(s) => name(*s),
            Regex::Class(ss) => {
                let items: Vec<String> = ss.iter().map(|s| name(*s)).collect();
                format!("[{}]", items.join("|"))
            }
            Regex::Any => ".".to_string(),
            Regex::Concat(parts) => {
                let items: Vec<String> = parts.iter().map(|p| p.render(name)).collect();
                format!("({})", items.join(" "))
            }
            Regex::Union(parts) => {
                let items: Vec<String> = parts.iter().map(|p| p.render(name)).collect();
                format!("({})", items.join(" | "))
            }
            Regex::Star(r) => format!("({})*", r.render(name)),
            Regex::Plus(r) => format!("({})+", r.render(name)),
            Regex::Optional(r) => format!("({})?", r.render(name)),
        }
    }

    pub fn render_with(&self, alphabet: &Alphabet) -> String {
        self.render(&|s| alphabet.name(s).to_string())
    }
}

/// Parses `text` against a fixed alphabet; unknown names are errors.
pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<Regex> {
    parse_regex_with(text, &mut |name| alphabet.lookup(name))
}

/// Parses `text`, resolving each symbol name through `resolve`. A `None` from
/// the resolver is reported as an unknown symbol.
pub fn parse_regex_with(
    text: &str,
    resolve: &mut dyn FnMut(&str) -> Option<SymbolId>,
) -> Result<Regex> {
    let tokens = lex(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end: text.len(),
        resolve,
    };
    let r = p.union()?;
    if let Some(t) = p.tokens.get(p.pos) {
        return Err(Error::Syntax {
            pos: t.pos,
            msg: format!("unexpected `{}`", t.kind.show()),
        });
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq)]
enum TokKind {
    LParen,
    RParen,
    Bar,
    Star,
    Plus,
    Question,
    Dot,
    Ident(String),
    /// Raw bracket body, without the brackets.
    Bracket(String),
}

impl TokKind {
    fn show(&self) -> String {
        match self {
            TokKind::LParen => "(".into(),
            TokKind::RParen => ")".into(),
            TokKind::Bar => "|".into(),
            TokKind::Star => "*".into(),
            TokKind::Plus => "+".into(),
            TokKind::Question => "?".into(),
            TokKind::Dot => ".".into(),
            TokKind::Ident(s) => s.clone(),
            TokKind::Bracket(s) => format!("[{s}]"),
        }
    }
}

#[derive(Debug)]
struct Tok {
    kind: TokKind,
    pos: usize,
}

fn is_ident_char(c: char) -> bool {
    !c.is_whitespace() && !"()|*+?.[];/:".contains(c)
}

fn lex(text: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        let kind = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '(' => TokKind::LParen,
            ')' => TokKind::RParen,
            '|' => TokKind::Bar,
            '*' => TokKind::Star,
            '+' => TokKind::Plus,
            '?' => TokKind::Question,
            '.' => TokKind::Dot,
            '[' => {
                chars.next();
                let mut body = String::new();
                loop {
                    match chars.next() {
                        Some((_, ']')) => break,
                        Some((_, c)) => body.push(c),
                        None => {
                            return Err(Error::Syntax {
                                pos,
                                msg: "unterminated `[`".into(),
                            })
                        }
                    }
                }
                out.push(Tok {
                    kind: TokKind::Bracket(body),
                    pos,
                });
                continue;
            }
            c if is_ident_char(c) => {
                let mut s = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if !is_ident_char(c) {
                        break;
                    }
                    s.push(c);
                    chars.next();
                }
                out.push(Tok {
                    kind: TokKind::Ident(s),
                    pos,
                });
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    pos,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        chars.next();
        out.push(Tok { kind, pos });
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Tok>,
    pos: usize,
    end: usize,
    resolve: &'a mut dyn FnMut(&str) -> Option<SymbolId>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&TokKind> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |t| t.pos)
    }

    fn union(&mut self) -> Result<Regex> {
        let mut alts = vec![self.concat()?];
        while self.peek() == Some(&TokKind::Bar) {
            self.pos += 1;
            alts.push(self.concat()?);
        }
        Ok(Regex::union(alts))
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut parts = Vec::new();
        while let Some(k) = self.peek() {
            if matches!(k, TokKind::Bar | TokKind::RParen) {
                break;
            }
            parts.push(self.postfix()?);
        }
        Ok(Regex::concat(parts))
    }

    fn postfix(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        loop {
            r = match self.peek() {
                Some(TokKind::Star) => Regex::star(r),
                Some(TokKind::Plus) => Regex::plus(r),
                Some(TokKind::Question) => Regex::optional(r),
                _ => return Ok(r),
            };
            self.pos += 1;
        }
    }

    fn resolve(&mut self, name: &str, pos: usize) -> Result<SymbolId> {
        (self.resolve)(name).ok_or_else(|| Error::UnknownSymbol {
            name: name.to_string(),
            pos,
        })
    }

    fn atom(&mut self) -> Result<Regex> {
        let pos = self.offset();
        let kind = match self.tokens.get(self.pos) {
            Some(t) => t.kind.clone(),
            None => {
                return Err(Error::Syntax {
                    pos,
                    msg: "unexpected end of pattern".into(),
                })
            }
        };
        self.pos += 1;
        match kind {
            TokKind::Ident(name) => Ok(Regex::Symbol(self.resolve(&name, pos)?)),
            TokKind::Dot => Ok(Regex::Any),
            TokKind::Bracket(body) => self.bracket(&body, pos),
            TokKind::LParen => {
                let r = self.union()?;
                if self.peek() != Some(&TokKind::RParen) {
                    return Err(Error::Syntax {
                        pos: self.offset(),
                        msg: "expected `)`".into(),
                    });
                }
                self.pos += 1;
                Ok(r)
            }
            other => Err(Error::Syntax {
                pos,
                msg: format!("unexpected `{}`", other.show()),
            }),
        }
    }

    /// `[f=v|w|g=x]` → {f=v, f=w, g=x}; `[a|b]` → {a, b}.
    fn bracket(&mut self, body: &str, pos: usize) -> Result<Regex> {
        let mut feature: Option<&str> = None;
        let mut ids = Vec::new();
        for item in body.split('|') {
            let item = item.trim();
            if item.is_empty() {
                return Err(Error::Syntax {
                    pos,
                    msg: format!("empty alternative in `[{body}]`"),
                });
            }
            if item.split_whitespace().count() > 1 {
                return Err(Error::Syntax {
                    pos,
                    msg: format!(
                        "`[{body}]`: an item maps to a single feature-value symbol, so conjunctions of several features are not supported"
                    ),
                });
            }
            let name = match item.split_once('=') {
                Some((f, v)) if !f.is_empty() && !v.is_empty() => {
                    feature = Some(f);
                    item.to_string()
                }
                Some(_) => {
                    return Err(Error::Syntax {
                        pos,
                        msg: format!("malformed feature pair `{item}`"),
                    })
                }
                None => match feature {
                    Some(f) => format!("{f}={item}"),
                    None => item.to_string(),
                },
            };
            ids.push(self.resolve(&name, pos)?);
        }
        if ids.is_empty() {
            return Err(Error::Syntax {
                pos,
                msg: "empty class".into(),
            });
        }
        Ok(Regex::class(ids))
    }
}
