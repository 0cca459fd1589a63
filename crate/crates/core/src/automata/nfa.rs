use crate::alphabet::SymbolId;
use crate::regex::Regex;

/// ε-NFA with final states tagged by pattern indices (1-based).
#[derive(Clone, Debug)]
pub struct Nfa {
    num_symbols: usize,
    num_tags: usize,
    start: u32,
    /// Outgoing edges per state; `None` labels are ε-moves.
    edges: Vec<Vec<(Option<SymbolId>, u32)>>,
    tags: Vec<Vec<usize>>,
}

impl Nfa {
    /// Empty automaton with a single non-final start state.
    pub fn new(num_symbols: usize) -> Self {
        Nfa {
            num_symbols,
            num_tags: 0,
            start: 0,
            edges: vec![Vec::new()],
            tags: vec![Vec::new()],
        }
    }

    pub fn num_states(&self) -> usize {
        self.edges.len()
    }

    pub fn num_symbols(&self) -> usize {
        self.num_symbols
    }

    /// Largest tag value any final state may carry.
    pub fn num_tags(&self) -> usize {
        self.num_tags
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn edges(&self, q: u32) -> &[(Option<SymbolId>, u32)] {
        &self.edges[q as usize]
    }

    pub fn tags(&self, q: u32) -> &[usize] {
        &self.tags[q as usize]
    }

    pub fn add_state(&mut self) -> u32 {
        self.edges.push(Vec::new());
        self.tags.push(Vec::new());
        (self.edges.len() - 1) as u32
    }

    pub fn add_eps(&mut self, from: u32, to: u32) {
        self.edges[from as usize].push((None, to));
    }

    pub fn add_edge(&mut self, from: u32, sym: SymbolId, to: u32) {
        debug_assert!(sym.index() < self.num_symbols);
        self.edges[from as usize].push((Some(sym), to));
    }

    pub fn add_tag(&mut self, q: u32, tag: usize) {
        assert!(tag >= 1);
        self.num_tags = self.num_tags.max(tag);
        let t = &mut self.tags[q as usize];
        if !t.contains(&tag) {
            t.push(tag);
            t.sort_unstable();
        }
    }

    /// Thompson construction of `r` between fresh entry and exit states.
    /// `Any` stands for the symbols `0..sigma_size`.
    pub fn add_regex(&mut self, r: &Regex, sigma_size: usize) -> (u32, u32) {
        match r {
            Regex::Empty => {
                let s = self.add_state();
                (s, s)
            }
            Regex::Symbol(a) => {
                let (s, e) = (self.add_state(), self.add_state());
                self.add_edge(s, *a, e);
                (s, e)
            }
            Regex::Class(ids) => {
                let (s, e) = (self.add_state(), self.add_state());
                for a in ids {
                    self.add_edge(s, *a, e);
                }
                (s, e)
            }
            Regex::Any => {
                let (s, e) = (self.add_state(), self.add_state());
                for a in 0..sigma_size as u32 {
                    self.add_edge(s, SymbolId(a), e);
                }
                (s, e)
            }
            Regex::Concat(parts) => {
                let s = self.add_state();
                let mut cur = s;
                for p in parts {
                    let (ps, pe) = self.add_regex(p, sigma_size);
                    self.add_eps(cur, ps);
                    cur = pe;
                }
                (s, cur)
            }
            Regex::Union(parts) => {
                let (s, e) = (self.add_state(), self.add_state());
                for p in parts {
                    let (ps, pe) = self.add_regex(p, sigma_size);
                    self.add_eps(s, ps);
                    self.add_eps(pe, e);
                }
                (s, e)
            }
            Regex::Star(inner) => {
                let (s, e) = (self.add_state(), self.add_state());
                let (is, ie) = self.add_regex(inner, sigma_size);
                self.add_eps(s, is);
                self.add_eps(ie, e);
                self.add_eps(s, e);
                self.add_eps(ie, is);
                (s, e)
            }
            Regex::Plus(inner) => {
                let (s, e) = (self.add_state(), self.add_state());
                let (is, ie) = self.add_regex(inner, sigma_size);
                self.add_eps(s, is);
                self.add_eps(ie, e);
                self.add_eps(ie, is);
                (s, e)
            }
            Regex::Optional(inner) => {
                let (s, e) = (self.add_state(), self.add_state());
                let (is, ie) = self.add_regex(inner, sigma_size);
                self.add_eps(s, is);
                self.add_eps(ie, e);
                self.add_eps(s, e);
                (s, e)
            }
        }
    }

    /// ε-closure of a set of states, returned sorted.
    pub fn closure(&self, seed: impl IntoIterator<Item = u32>) -> Vec<u32> {
        let mut seen = vec![false; self.num_states()];
        let mut stack: Vec<u32> = Vec::new();
        for q in seed {
            if !seen[q as usize] {
                seen[q as usize] = true;
                stack.push(q);
            }
        }
        let mut out = Vec::new();
        while let Some(q) = stack.pop() {
            out.push(q);
            for &(label, to) in &self.edges[q as usize] {
                if label.is_none() && !seen[to as usize] {
                    seen[to as usize] = true;
                    stack.push(to);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Set of states reachable from `states` on `sym`, closed under ε.
    pub fn step(&self, states: &[u32], sym: SymbolId) -> Vec<u32> {
        let targets = states.iter().flat_map(|&q| {
            self.edges[q as usize]
                .iter()
                .filter(move |(l, _)| *l == Some(sym))
                .map(|&(_, t)| t)
        });
        self.closure(targets.collect::<Vec<_>>())
    }

    /// Tags of the final states reached after reading `w` (empty if rejected).
    pub fn accepting_tags(&self, w: &[SymbolId]) -> Vec<usize> {
        let mut cur = self.closure([self.start]);
        for &a in w {
            cur = self.step(&cur, a);
            if cur.is_empty() {
                return Vec::new();
            }
        }
        let mut tags: Vec<usize> = cur
            .iter()
            .flat_map(|&q| self.tags(q).iter().copied())
            .collect();
        tags.sort_unstable();
        tags.dedup();
        tags
    }

    pub fn accepts(&self, w: &[SymbolId]) -> bool {
        !self.accepting_tags(w).is_empty()
    }
}

/// Thompson NFA accepting the union of the tagged patterns; each pattern's
/// exit state is final and carries that pattern's index.
pub fn compile_nfa(patterns: &[(usize, Regex)], sigma_size: usize) -> Nfa {
    let mut nfa = Nfa::new(sigma_size);
    let start = nfa.start();
    for (tag, r) in patterns {
        let (s, e) = nfa.add_regex(r, sigma_size);
        nfa.add_eps(start, s);
        nfa.add_tag(e, *tag);
    }
    nfa
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &[u32]) -> Vec<SymbolId> {
        s.iter().map(|&x| SymbolId(x)).collect()
    }

    #[test]
    fn single_symbol() {
        let nfa = compile_nfa(&[(1, Regex::sym(0))], 2);
        assert_eq!(nfa.accepting_tags(&w(&[0])), vec![1]);
        assert!(!nfa.accepts(&w(&[])));
        assert!(!nfa.accepts(&w(&[0, 0])));
        assert!(!nfa.accepts(&w(&[1])));
    }

    #[test]
    fn star_accepts_epsilon() {
        let nfa = compile_nfa(&[(1, Regex::star(Regex::sym(0)))], 1);
        assert!(nfa.accepts(&[]));
        assert!(nfa.accepts(&w(&[0, 0, 0])));
    }

    #[test]
    fn distinct_tags() {
        let ab = Regex::Concat(vec![Regex::sym(0), Regex::sym(1)]);
        let nfa = compile_nfa(&[(1, ab), (2, Regex::sym(1))], 2);
        assert_eq!(nfa.accepting_tags(&w(&[0, 1])), vec![1]);
        assert_eq!(nfa.accepting_tags(&w(&[1])), vec![2]);
        assert!(nfa.accepting_tags(&w(&[1, 1])).is_empty());
    }
}
