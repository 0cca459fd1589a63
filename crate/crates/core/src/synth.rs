//! Seeded generators for random patterns, rule sets and words, used by the
//! differential tests, the benchmarks and the `generate` command.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{Alphabet, SymbolId};
use crate::regex::Regex;
use crate::rules::{inject_default_rule, RuleSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random pattern over symbols `0..sigma_size` with nesting depth at most
/// `depth`.
pub fn random_regex<R: Rng>(rng: &mut R, sigma_size: usize, depth: usize) -> Regex {
    let leaf = |rng: &mut R| match rng.gen_range(0..10) {
        0 => Regex::Empty,
        1 => Regex::Any,
        2 | 3 if sigma_size > 1 => {
            let mut ids: Vec<SymbolId> = (0..sigma_size as u32).map(SymbolId).collect();
            ids.shuffle(rng);
            Regex::class(ids.into_iter().take(2))
        }
        _ => Regex::Symbol(SymbolId(rng.gen_range(0..sigma_size as u32))),
    };
    if depth == 0 || rng.gen_bool(0.3) {
        return leaf(rng);
    }
    match rng.gen_range(0..6) {
        0 | 1 => {
            let n = rng.gen_range(2..=3);
            Regex::Concat(
                (0..n)
                    .map(|_| random_regex(rng, sigma_size, depth - 1))
                    .collect(),
            )
        }
        2 => {
            let n = rng.gen_range(2..=3);
            Regex::Union(
                (0..n)
                    .map(|_| random_regex(rng, sigma_size, depth - 1))
                    .collect(),
            )
        }
        3 => Regex::star(random_regex(rng, sigma_size, depth - 1)),
        4 => Regex::plus(random_regex(rng, sigma_size, depth - 1)),
        _ => Regex::optional(random_regex(rng, sigma_size, depth - 1)),
    }
}

pub fn random_word<R: Rng>(rng: &mut R, sigma_size: usize, max_len: usize) -> Vec<SymbolId> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| SymbolId(rng.gen_range(0..sigma_size as u32)))
        .collect()
}

#[derive(Clone, Copy, Debug)]
pub struct RandomGrammar {
    /// Upper bound on rules, including the injected default.
    pub max_rules: usize,
    /// Upper bound on |Σ|, including the default symbol.
    pub max_sigma: usize,
    pub max_depth: usize,
    /// Probability that a rule carries a history pattern.
    pub history: f64,
}

impl Default for RandomGrammar {
    fn default() -> Self {
        RandomGrammar {
            max_rules: 8,
            max_sigma: 5,
            max_depth: 3,
            history: 0.0,
        }
    }
}

/// Random rule set, default rule included. Symbols are named `s1, s2, …`
/// and actions `A1, A2, …` (actions repeat across rules at random).
pub fn random_rule_set<R: Rng>(rng: &mut R, cfg: RandomGrammar) -> RuleSet {
    let k = rng.gen_range(2..=cfg.max_sigma.max(2));
    let mut sigma = Alphabet::with_default();
    for i in 1..k {
        sigma.intern(&format!("s{i}"));
    }
    let mut rs = RuleSet::new(sigma);
    let user_rules = rng.gen_range(0..cfg.max_rules.max(1));
    let n = user_rules + 1;
    for _ in 0..user_rules {
        let depth = rng.gen_range(0..=cfg.max_depth);
        let lambda = random_regex(rng, k, depth);
        let depth = rng.gen_range(0..=cfg.max_depth);
        let rho = random_regex(rng, k, depth);
        let mut focus: Vec<SymbolId> = (0..k as u32).map(SymbolId).collect();
        focus.shuffle(rng);
        focus.truncate(rng.gen_range(1..=2));
        let pi = rng
            .gen_bool(cfg.history)
            .then(|| random_regex(rng, n, cfg.max_depth.min(2)));
        let label = format!("A{}", rng.gen_range(1..=user_rules.max(1)));
        rs.add(pi, lambda, &focus, rho, &label);
    }
    inject_default_rule(&rs)
}

/// Scores that are exact in binary floating point, so sums do not depend on
/// evaluation order.
pub fn random_scores<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| rng.gen_range(-8..=8) as f64 * 0.25)
        .collect()
}

/// A tagging-style grammar: `symbols` word-like symbols, contexts of up to
/// three items (single symbols, small classes, `.` and the occasional
/// repeated class), foci drawn from a small set of ambiguous words. The
/// default rule is not included.
pub fn synthetic_grammar(seed: u64, rules: usize, symbols: usize) -> RuleSet {
    let mut rng = rng(seed);
    let mut sigma = Alphabet::with_default();
    for i in 0..symbols.max(2) {
        let feature = if i % 4 == 0 { "pos" } else { "name" };
        sigma.intern(&format!("{feature}=w{i}"));
    }
    let k = sigma.len();
    let mut rs = RuleSet::new(sigma);
    let foci: Vec<SymbolId> = (1..k as u32).step_by(7).map(SymbolId).collect();
    let item = |rng: &mut ChaCha8Rng| -> Regex {
        match rng.gen_range(0..10) {
            0 => Regex::Any,
            1 | 2 => Regex::class((0..3).map(|_| SymbolId(rng.gen_range(1..k as u32)))),
            3 => Regex::star(Regex::class(
                (0..2).map(|_| SymbolId(rng.gen_range(1..k as u32))),
            )),
            _ => Regex::Symbol(SymbolId(rng.gen_range(1..k as u32))),
        }
    };
    let context = |rng: &mut ChaCha8Rng| -> Regex {
        let len = rng.gen_range(0..=3);
        Regex::concat((0..len).map(|_| item(rng)).collect())
    };
    for _ in 0..rules {
        let lambda = context(&mut rng);
        let rho = context(&mut rng);
        let focus = [*foci.choose(&mut rng).unwrap()];
        let label = format!("sense={}", rng.gen_range(1..=3));
        rs.add(None, lambda, &focus, rho, &label);
    }
    rs
}

/// Uniformly random word over a rule set's alphabet.
pub fn synthetic_text(seed: u64, rs: &RuleSet, len: usize) -> Vec<SymbolId> {
    let mut rng = rng(seed);
    let k = rs.sigma.len() as u32;
    (0..len).map(|_| SymbolId(rng.gen_range(0..k))).collect()
}
