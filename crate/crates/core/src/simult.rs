//! Simultaneous matching of a family of patterns `Σ*β_1 … Σ*β_n` at every
//! prefix of a word, with one deterministic pass.

use crate::alphabet::SymbolId;
use crate::automata::{determinize, minimize, Dfsa, Nfa, Rejection};
use crate::error::{Error, Result};
use crate::idset::IdSet;
use crate::regex::Regex;

/// A deterministic acceptor over Σ whose states are annotated with `tau`,
/// the set of pattern indices `j` such that the word read so far matches
/// `Σ*β_j`. All states are final.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimultMatcher {
    dfsa: Dfsa,
    patterns: usize,
}

impl SimultMatcher {
    /// Builds the matcher for `patterns` (indexed from 1) over the symbols
    /// `0..sigma_size`.
    pub fn build(patterns: &[Regex], sigma_size: usize) -> Result<SimultMatcher> {
        Self::build_with(patterns, sigma_size, true)
    }

    pub fn build_with(
        patterns: &[Regex],
        sigma_size: usize,
        minimized: bool,
    ) -> Result<SimultMatcher> {
        for (i, p) in patterns.iter().enumerate() {
            if let Some(s) = p.max_symbol() {
                if s.index() >= sigma_size {
                    return Err(Error::SymbolOutOfRange {
                        pattern: i + 1,
                        symbol: s.0,
                        alphabet: sigma_size,
                    });
                }
            }
        }
        let n = patterns.len();
        // Markers $_j occupy sigma_size + j - 1.
        let marker = |j: usize| SymbolId((sigma_size + j - 1) as u32);

        let mut nfa = Nfa::new(sigma_size + n);
        let start = nfa.start();
        for a in 0..sigma_size as u32 {
            nfa.add_edge(start, SymbolId(a), start);
        }
        for (i, p) in patterns.iter().enumerate() {
            let j = i + 1;
            let (s, e) = nfa.add_regex(p, sigma_size);
            let f = nfa.add_state();
            nfa.add_eps(start, s);
            nfa.add_edge(e, marker(j), f);
            nfa.add_tag(f, j);
        }

        let marked = determinize(&nfa);
        let tau: Vec<IdSet> = (0..marked.num_states() as u32)
            .map(|q| {
                IdSet::from_ids(
                    n,
                    (1..=n).filter(|&j| {
                        marked
                            .next(q, marker(j))
                            .is_some_and(|t| marked.is_final(t))
                    }),
                )
            })
            .collect();
        let plain = marked
            .with_color(tau)
            .restrict_symbols(sigma_size)
            .with_all_final();
        let dfsa = if minimized { minimize(&plain) } else { plain };
        Ok(SimultMatcher { dfsa, patterns: n })
    }

    /// Wraps an existing colored automaton (used when loading machines).
    pub fn from_dfsa(dfsa: Dfsa, patterns: usize) -> SimultMatcher {
        assert!(dfsa.colors().is_some(), "matcher automata carry τ");
        SimultMatcher { dfsa, patterns }
    }

    pub fn dfsa(&self) -> &Dfsa {
        &self.dfsa
    }

    pub fn patterns(&self) -> usize {
        self.patterns
    }

    pub fn start(&self) -> u32 {
        self.dfsa.start()
    }

    pub fn num_states(&self) -> usize {
        self.dfsa.num_states()
    }

    pub fn num_transitions(&self) -> usize {
        self.dfsa.transition_count()
    }

    #[inline]
    pub fn tau(&self, q: u32) -> &IdSet {
        self.dfsa.color(q).expect("matcher automata carry τ")
    }

    #[inline]
    pub fn step(&self, q: u32, a: SymbolId) -> Option<u32> {
        self.dfsa.next(q, a)
    }

    /// State path over `w`, `w.len() + 1` entries.
    pub fn path(&self, w: &[SymbolId]) -> Result<Vec<u32>, Rejection> {
        self.dfsa.run(w)
    }

    /// `result[k]` = indices of the patterns matching `w[..k]` as a suffix.
    pub fn match_positions(&self, w: &[SymbolId]) -> Result<Vec<IdSet>, Rejection> {
        Ok(self
            .path(w)?
            .into_iter()
            .map(|q| self.tau(q).clone())
            .collect())
    }
}

/// Builds a minimized [`SimultMatcher`].
pub fn build_simult_matcher(patterns: &[Regex], sigma_size: usize) -> Result<SimultMatcher> {
    SimultMatcher::build(patterns, sigma_size)
}
