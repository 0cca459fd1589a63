//! NFA and DFSA construction, determinization, minimization and runs.

mod dfsa;
mod nfa;

pub use dfsa::{determinize, minimize, Dfsa, Rejection};
pub use nfa::{compile_nfa, Nfa};
