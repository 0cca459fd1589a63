use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{name}` at offset {pos}")]
    UnknownSymbol { name: String, pos: usize },
    #[error("pattern {pattern} uses symbol {symbol} outside the {alphabet}-symbol alphabet")]
    SymbolOutOfRange {
        pattern: usize,
        symbol: u32,
        alphabet: usize,
    },
    #[error("line {line}: {msg}")]
    Grammar { line: usize, msg: String },
    #[error("line {line}: the focus must denote a single item (one symbol or symbol class), got `{focus}`")]
    FocusLength { line: usize, focus: String },
    #[error(
        "rule {rule}: history pattern references rule {index}, but rules are numbered 1..={n}"
    )]
    RuleIndexOutOfRange { rule: usize, index: usize, n: usize },
    #[error("line {line}: malformed item `{text}`")]
    MalformedItem { line: usize, text: String },
    #[error("no rule applies at position {position}; the grammar lacks its default rule")]
    EmptyIntersection { position: usize },
    #[error("enumeration of {count} sequences exceeds the limit of {limit}")]
    EnumerationGuard { count: f64, limit: f64 },
    #[error("machine file: {0}")]
    Format(#[from] FormatError),
}

/// Problems reading a serialized machine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("unsupported version `{0}` (expected `BIM 1`)")]
    Version(String),
    #[error("section {section}: {msg}")]
    Section { section: String, msg: String },
    #[error("section {section}: unexpected end of file")]
    Truncated { section: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
