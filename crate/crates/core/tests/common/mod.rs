#![allow(dead_code)]

use bimachine::SymbolId;

/// Every word over `0..k` of length at most `max_len`, shortest first.
pub fn all_words(k: usize, max_len: usize) -> Vec<Vec<SymbolId>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Vec<SymbolId>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(frontier.len() * k);
        for w in &frontier {
            for a in 0..k as u32 {
                let mut v = w.clone();
                v.push(SymbolId(a));
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub const SUSPECTS: &str = include_str!("../../grammars/suspects.rules");
pub const SUSPECTS_ITEMS: &str = include_str!("../../grammars/suspects.items");
pub const G1: &str = include_str!("../../grammars/g1.rules");
pub const HISTORY: &str = include_str!("../../grammars/history.rules");
