use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use super::nfa::Nfa;
use crate::alphabet::SymbolId;
use crate::idset::IdSet;

const NONE: u32 = u32::MAX;

/// Where a run stopped because δ was undefined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rejection {
    /// 1-based position of the symbol that could not be read.
    pub position: usize,
    pub state: u32,
    pub symbol: SymbolId,
}

/// Deterministic automaton with a partial transition table and an optional
/// per-state color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfsa {
    num_symbols: usize,
    start: u32,
    /// Row-major `state * num_symbols + symbol`; `NONE` marks a missing edge.
    delta: Vec<u32>,
    finals: Vec<bool>,
    color: Option<Vec<IdSet>>,
}

impl Dfsa {
    /// Assembles an automaton from explicit transitions.
    ///
    /// Panics if a transition is out of range or not functional, or if the
    /// color map does not cover every state.
    pub fn from_parts(
        num_states: usize,
        num_symbols: usize,
        start: u32,
        transitions: impl IntoIterator<Item = (u32, SymbolId, u32)>,
        finals: Vec<bool>,
        color: Option<Vec<IdSet>>,
    ) -> Dfsa {
        assert!((start as usize) < num_states);
        assert_eq!(finals.len(), num_states);
        if let Some(c) = &color {
            assert_eq!(c.len(), num_states);
        }
        let mut delta = vec![NONE; num_states * num_symbols];
        for (q, a, t) in transitions {
            assert!((q as usize) < num_states && (t as usize) < num_states);
            assert!(a.index() < num_symbols);
            let slot = &mut delta[q as usize * num_symbols + a.index()];
            assert!(*slot == NONE || *slot == t, "δ must be functional");
            *slot = t;
        }
        Dfsa {
            num_symbols,
            start,
            delta,
            finals,
            color,
        }
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn num_symbols(&self) -> usize {
        self.num_symbols
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    #[inline]
    pub fn next(&self, q: u32, a: SymbolId) -> Option<u32> {
        let t = self.delta[q as usize * self.num_symbols + a.index()];
        (t != NONE).then_some(t)
    }

    pub fn is_final(&self, q: u32) -> bool {
        self.finals[q as usize]
    }

    pub fn color(&self, q: u32) -> Option<&IdSet> {
        self.color.as_ref().map(|c| &c[q as usize])
    }

    pub fn colors(&self) -> Option<&[IdSet]> {
        self.color.as_deref()
    }

    pub fn transition_count(&self) -> usize {
        self.delta.iter().filter(|t| **t != NONE).count()
    }

    /// All defined transitions in (state, symbol) order.
    pub fn transitions(&self) -> impl Iterator<Item = (u32, SymbolId, u32)> + '_ {
        let k = self.num_symbols;
        self.delta
            .iter()
            .enumerate()
            .filter(|&(_, &t)| t != NONE)
            .map(move |(i, &t)| ((i / k) as u32, SymbolId((i % k) as u32), t))
    }

    /// True when every state has a transition on every symbol.
    pub fn is_complete(&self) -> bool {
        self.delta.iter().all(|t| *t != NONE)
    }

    /// State path of `w`: `path[k]` is the state after `k` symbols.
    pub fn run(&self, w: &[SymbolId]) -> Result<Vec<u32>, Rejection> {
        let mut path = Vec::with_capacity(w.len() + 1);
        let mut q = self.start;
        path.push(q);
        for (i, &a) in w.iter().enumerate() {
            q = self.next(q, a).ok_or(Rejection {
                position: i + 1,
                state: q,
                symbol: a,
            })?;
            path.push(q);
        }
        Ok(path)
    }

    pub fn accepts(&self, w: &[SymbolId]) -> bool {
        self.run(w)
            .map(|p| self.is_final(*p.last().unwrap()))
            .unwrap_or(false)
    }

    /// Drops all transitions on symbols `>= keep` and trims states that are
    /// no longer reachable.
    pub fn restrict_symbols(&self, keep: usize) -> Dfsa {
        assert!(keep <= self.num_symbols);
        let transitions: Vec<_> = self
            .transitions()
            .filter(|(_, a, _)| a.index() < keep)
            .collect();
        Dfsa::from_parts(
            self.num_states(),
            keep,
            self.start,
            transitions,
            self.finals.clone(),
            self.color.clone(),
        )
        .trim()
    }

    pub fn with_all_final(mut self) -> Dfsa {
        self.finals.iter_mut().for_each(|f| *f = true);
        self
    }

    pub fn with_color(mut self, color: Vec<IdSet>) -> Dfsa {
        assert_eq!(color.len(), self.num_states());
        self.color = Some(color);
        self
    }

    /// Keeps only states reachable from the start, numbered in breadth-first
    /// order (symbols visited in increasing order).
    pub fn trim(&self) -> Dfsa {
        let n = self.num_states();
        let mut order = vec![NONE; n];
        let mut queue = VecDeque::from([self.start]);
        order[self.start as usize] = 0;
        let mut kept = vec![self.start];
        while let Some(q) = queue.pop_front() {
            for a in 0..self.num_symbols as u32 {
                if let Some(t) = self.next(q, SymbolId(a)) {
                    if order[t as usize] == NONE {
                        order[t as usize] = kept.len() as u32;
                        kept.push(t);
                        queue.push_back(t);
                    }
                }
            }
        }
        let transitions: Vec<_> = self
            .transitions()
            .filter(|(q, _, _)| order[*q as usize] != NONE)
            .map(|(q, a, t)| (order[q as usize], a, order[t as usize]))
            .collect();
        Dfsa::from_parts(
            kept.len(),
            self.num_symbols,
            0,
            transitions,
            kept.iter().map(|&q| self.finals[q as usize]).collect(),
            self.color
                .as_ref()
                .map(|c| kept.iter().map(|&q| c[q as usize].clone()).collect()),
        )
    }
}

/// Subset construction with ε-closure. Only subsets reachable from the start
/// are built; a subset's color is the union of its members' final tags.
pub fn determinize(nfa: &Nfa) -> Dfsa {
    let k = nfa.num_symbols();
    let width = nfa.num_tags();
    let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut subsets: Vec<Vec<u32>> = Vec::new();
    let mut delta: Vec<u32> = Vec::new();

    let start = nfa.closure([nfa.start()]);
    ids.insert(start.clone(), 0);
    subsets.push(start);

    let mut next = 0;
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); k];
    while next < subsets.len() {
        for b in buckets.iter_mut() {
            b.clear();
        }
        for &q in &subsets[next] {
            for &(label, t) in nfa.edges(q) {
                if let Some(a) = label {
                    buckets[a.index()].push(t);
                }
            }
        }
        for bucket in &buckets {
            if bucket.is_empty() {
                delta.push(NONE);
                continue;
            }
            let target = nfa.closure(bucket.iter().copied());
            let id = match ids.get(&target) {
                Some(&id) => id,
                None => {
                    let id = subsets.len() as u32;
                    ids.insert(target.clone(), id);
                    subsets.push(target);
                    id
                }
            };
            delta.push(id);
        }
        next += 1;
    }

    let color: Vec<IdSet> = subsets
        .iter()
        .map(|s| IdSet::from_ids(width, s.iter().flat_map(|&q| nfa.tags(q).iter().copied())))
        .collect();
    let finals = subsets
        .iter()
        .map(|s| s.iter().any(|&q| !nfa.tags(q).is_empty()))
        .collect();
    Dfsa {
        num_symbols: k,
        start: 0,
        delta,
        finals,
        color: Some(color),
    }
}

/// Hopcroft partition refinement. The initial partition groups states by
/// (final?, color), so both the language and the color seen along every
/// word are preserved. Missing transitions go to an implicit sink that is
/// never merged with a real state. The result is trimmed and numbered in
/// breadth-first order.
pub fn minimize(d: &Dfsa) -> Dfsa {
    let d = d.trim();
    let n = d.num_states();
    let k = d.num_symbols;
    let sink = n as u32;
    let total = n + 1;

    let target = |q: u32, a: usize| -> u32 {
        if q == sink {
            sink
        } else {
            let t = d.delta[q as usize * k + a];
            if t == NONE {
                sink
            } else {
                t
            }
        }
    };

    // inverse[t * k + a] = states moving to t on a
    let mut inverse: Vec<Vec<u32>> = vec![Vec::new(); total * k];
    for q in 0..total as u32 {
        for a in 0..k {
            inverse[target(q, a) as usize * k + a].push(q);
        }
    }

    let mut block_of = vec![0usize; total];
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    {
        let mut by_key: BTreeMap<(bool, Option<&IdSet>), usize> = BTreeMap::new();
        for q in 0..n as u32 {
            let key = (d.is_final(q), d.color(q));
            let b = *by_key.entry(key).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(q);
            block_of[q as usize] = b;
        }
        blocks.push(vec![sink]);
        block_of[sink as usize] = blocks.len() - 1;
    }

    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for b in 0..blocks.len() {
        for a in 0..k {
            queue.push_back((b, a));
            pending.insert((b, a));
        }
    }

    while let Some((splitter, a)) = queue.pop_front() {
        pending.remove(&(splitter, a));
        let mut touched: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for &q in &blocks[splitter] {
            for &p in &inverse[q as usize * k + a] {
                touched.entry(block_of[p as usize]).or_default().push(p);
            }
        }
        for (y, inside) in touched {
            if inside.len() == blocks[y].len() {
                continue;
            }
            let new_id = blocks.len();
            for &p in &inside {
                block_of[p as usize] = new_id;
            }
            blocks[y].retain(|p| block_of[*p as usize] == y);
            blocks.push(inside);
            for c in 0..k {
                if pending.contains(&(y, c)) {
                    pending.insert((new_id, c));
                    queue.push_back((new_id, c));
                } else {
                    let smaller = if blocks[y].len() <= blocks[new_id].len() {
                        y
                    } else {
                        new_id
                    };
                    pending.insert((smaller, c));
                    queue.push_back((smaller, c));
                }
            }
        }
    }

    let sink_block = block_of[sink as usize];
    debug_assert_eq!(blocks[sink_block].len(), 1);
    // Dense ids for real blocks, then let trim() renumber canonically.
    let mut dense = vec![NONE; blocks.len()];
    let mut reps: Vec<u32> = Vec::new();
    for (b, members) in blocks.iter().enumerate() {
        if b != sink_block && !members.is_empty() {
            dense[b] = reps.len() as u32;
            reps.push(members[0]);
        }
    }
    let mut transitions = Vec::new();
    for (i, &q) in reps.iter().enumerate() {
        for a in 0..k {
            let t = target(q, a);
            if t != sink {
                transitions.push((i as u32, SymbolId(a as u32), dense[block_of[t as usize]]));
            }
        }
    }
    Dfsa::from_parts(
        reps.len(),
        k,
        dense[block_of[d.start as usize]],
        transitions,
        reps.iter().map(|&q| d.is_final(q)).collect(),
        d.color
            .as_ref()
            .map(|c| reps.iter().map(|&q| c[q as usize].clone()).collect()),
    )
    .trim()
}
