//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use bimachine::format::{load_from_str, save_to_string, Machine};
use bimachine::oracle::{oracle_best_sequence, oracle_extended, oracle_tag, suffix_matches};
use bimachine::par::map_range;
use bimachine::synth::{
    random_regex, random_rule_set, random_scores, random_word, rng, synthetic_grammar,
    synthetic_text, RandomGrammar,
};
use bimachine::{
    compile_bimachine, compile_extended, inject_default_rule, n_best, parse_grammar,
    tokenize_items, RuleSet, SimultMatcher, SymbolId,
};
use rand::Rng;

const BASIC_CASES: u64 = 1000;
const EXTENDED_CASES: u64 = 500;
const SIMULT_FAMILIES: u64 = 200;
const HG_GRAMMARS: u64 = 20;
const NBEST_CASES: u64 = 100;
const SCALE_RULES: usize = 40;
const SCALE_SYMBOLS: usize = 60;
const SCALE_TOKENS: usize = 10_000;
const COMPILE_LIMIT: Duration = Duration::from_secs(10);
const TAG_LIMIT: Duration = Duration::from_secs(1);

struct Report {
    failed: usize,
    clock: Instant,
}

impl Report {
    fn check(&mut self, name: &str, ok: bool, detail: String) {
        println!(
            "{} {name}: {detail} [{:.1}s]",
            if ok { "PASS" } else { "FAIL" },
            self.clock.elapsed().as_secs_f64()
        );
        self.clock = Instant::now();
        if !ok {
            self.failed += 1;
        }
    }
}

fn count_mismatches<F: Fn(u64) -> usize + Sync + Send>(cases: u64, f: F) -> usize {
    map_range(cases as usize, |i| f(i as u64)).into_iter().sum()
}

fn basic_oracle() -> (bool, String) {
    let bad = count_mismatches(BASIC_CASES, |seed| {
        let mut g = rng(seed);
        let rs = random_rule_set(&mut g, RandomGrammar::default());
        let b = compile_bimachine(&rs).unwrap();
        let w = random_word(&mut g, rs.sigma.len(), 10);
        usize::from(b.apply_rules(&w).ok() != oracle_tag(&rs, &w).ok())
    });
    (bad == 0, format!("{BASIC_CASES} cases, {bad} mismatches"))
}

fn extended_oracle() -> (bool, String) {
    let cfg = RandomGrammar {
        max_rules: 6,
        max_sigma: 4,
        history: 0.6,
        ..Default::default()
    };
    let bad = count_mismatches(EXTENDED_CASES, |seed| {
        let mut g = rng(10_000 + seed);
        let rs = random_rule_set(&mut g, cfg);
        let m = compile_extended(&rs).unwrap();
        let w = random_word(&mut g, rs.sigma.len(), 8);
        usize::from(m.apply_rules(&w) != oracle_extended(&rs, &w))
    });
    (
        bad == 0,
        format!("{EXTENDED_CASES} cases, {bad} mismatches"),
    )
}

fn suspects() -> (RuleSet, bool, String) {
    let rs = inject_default_rule(&parse_grammar(common::SUSPECTS).unwrap());
    let b = compile_bimachine(&rs).unwrap();
    let w = tokenize_items(common::SUSPECTS_ITEMS.lines(), &rs.sigma, &rs.priority).unwrap();
    let trace = b.trace(&w).unwrap();
    let label = b.action_label(trace[2].action).to_string();
    let set = &trace[2].matching;
    let ok = label == "sense=1" && set.contains(2) && set.contains(3);
    (rs, ok, format!("word 3 tagged {label}, match set {set}"))
}

fn simult_oracle() -> (bool, String) {
    let bad = count_mismatches(SIMULT_FAMILIES, |seed| {
        let mut g = rng(20_000 + seed);
        let k = g.gen_range(2..=4);
        let n = g.gen_range(1..=6);
        let patterns: Vec<_> = (0..n).map(|_| random_regex(&mut g, k, 3)).collect();
        let m = SimultMatcher::build(&patterns, k).unwrap();
        // every prefix of a word is itself enumerated, so checking the last
        // position of each word covers all positions
        common::all_words(k, 7)
            .iter()
            .filter(|w| {
                let q = *m.path(w).unwrap().last().unwrap();
                let expected: Vec<usize> = (1..=n)
                    .filter(|&j| suffix_matches(&patterns[j - 1], w, k))
                    .collect();
                m.tau(q).to_vec() != expected
            })
            .count()
    });
    (
        bad == 0,
        format!("{SIMULT_FAMILIES} families, {bad} mismatching words"),
    )
}

fn h_g_agreement() -> (bool, String) {
    let mut triples = 0usize;
    let mut bad = 0usize;
    for seed in 0..HG_GRAMMARS {
        let rs = random_rule_set(&mut rng(30_000 + seed), RandomGrammar::default());
        let b = compile_bimachine(&rs).unwrap();
        for ql in 0..b.left().num_states() as u32 {
            for qr in 0..b.right().num_states() as u32 {
                for a in rs.sigma.symbols() {
                    let next = b.right().step(qr, a).unwrap();
                    triples += 1;
                    bad += usize::from(b.output_h(ql, a, qr) != b.output_g(ql, next));
                }
            }
        }
    }
    (
        bad == 0,
        format!("{HG_GRAMMARS} grammars, {triples} triples, {bad} disagreements"),
    )
}

fn n_best_oracle() -> (bool, String) {
    let cfg = RandomGrammar {
        max_rules: 6,
        max_sigma: 4,
        history: 0.4,
        ..Default::default()
    };
    let bad = count_mismatches(NBEST_CASES, |seed| {
        let mut g = rng(40_000 + seed);
        let rs = random_rule_set(&mut g, cfg);
        let scores = random_scores(&mut g, rs.len());
        let m = compile_extended(&rs).unwrap();
        let w = random_word(&mut g, rs.sigma.len(), 6);
        let got: Vec<(Vec<usize>, f64)> = n_best(&m, &scores, &w, 3)
            .into_iter()
            .map(|h| (h.rules, h.total))
            .collect();
        usize::from(got != oracle_best_sequence(&rs, &scores, &w, 3).unwrap())
    });
    (
        bad == 0,
        format!("{NBEST_CASES} cases, N=3, {bad} mismatches"),
    )
}

fn asymmetry(rs: &RuleSet) -> (bool, String) {
    let b = compile_bimachine(rs).unwrap();
    let (ls, rs_) = (b.left().num_states(), b.right().num_states());
    let (lt, rt) = (b.left().num_transitions(), b.right().num_transitions());
    (
        ls < rs_ && lt < rt,
        format!("left {ls} states/{lt} transitions, right {rs_} states/{rt} transitions"),
    )
}

fn scale() -> (bool, String) {
    let rs = inject_default_rule(&synthetic_grammar(1, SCALE_RULES, SCALE_SYMBOLS));
    let t0 = Instant::now();
    let b = compile_bimachine(&rs).unwrap();
    let compile = t0.elapsed();
    let text = synthetic_text(2, &rs, SCALE_TOKENS);
    let t1 = Instant::now();
    let out = b.apply(&text).unwrap();
    let tag = t1.elapsed();
    let ok = compile < COMPILE_LIMIT && tag < TAG_LIMIT && out.len() == SCALE_TOKENS;
    (
        ok,
        format!(
            "{SCALE_RULES} rules compile in {:.3}s (< {}s), {SCALE_TOKENS} tokens tagged in {:.4}s (< {}s)",
            compile.as_secs_f64(),
            COMPILE_LIMIT.as_secs(),
            tag.as_secs_f64(),
            TAG_LIMIT.as_secs()
        ),
    )
}

fn round_trip(suspects: &RuleSet) -> (bool, String) {
    let mut suite: Vec<(RuleSet, bool)> = vec![
        (suspects.clone(), false),
        (
            inject_default_rule(&parse_grammar(common::G1).unwrap()),
            false,
        ),
        (
            inject_default_rule(&parse_grammar(common::HISTORY).unwrap()),
            true,
        ),
        (
            inject_default_rule(&synthetic_grammar(1, SCALE_RULES, SCALE_SYMBOLS)),
            false,
        ),
    ];
    let cfg = RandomGrammar {
        history: 0.5,
        ..Default::default()
    };
    for seed in 0..50 {
        suite.push((random_rule_set(&mut rng(50_000 + seed), cfg), seed % 2 == 1));
    }
    let mut bad = 0;
    for (i, (rs, extended)) in suite.iter().enumerate() {
        let m = if *extended {
            Machine::Extended(compile_extended(rs).unwrap())
        } else {
            Machine::Basic(compile_bimachine(rs).unwrap())
        };
        let loaded = load_from_str(&save_to_string(&m)).unwrap();
        let mut g = rng(60_000 + i as u64);
        let words: Vec<Vec<SymbolId>> = (0..50)
            .map(|_| random_word(&mut g, rs.sigma.len(), 12))
            .collect();
        if loaded != m || words.iter().any(|w| loaded.apply(w) != m.apply(w)) {
            bad += 1;
        }
    }
    (
        bad == 0,
        format!("{} grammars, {bad} differ after reload", suite.len()),
    )
}

fn main() {
    let mut report = Report {
        failed: 0,
        clock: Instant::now(),
    };
    let (ok, d) = basic_oracle();
    report.check("oracle equivalence, basic", ok, d);
    let (ok, d) = extended_oracle();
    report.check("oracle equivalence, extended", ok, d);
    let (suspects_rs, ok, d) = suspects();
    report.check("suspects worked example", ok, d);
    let (ok, d) = simult_oracle();
    report.check("simultaneous matcher correctness", ok, d);
    let (ok, d) = h_g_agreement();
    report.check("h/g agreement", ok, d);
    let (ok, d) = n_best_oracle();
    report.check("n-best correctness", ok, d);
    let (ok, d) = asymmetry(&suspects_rs);
    report.check("left/right asymmetry", ok, d);
    let (ok, d) = scale();
    report.check("scale smoke test", ok, d);
    let (ok, d) = round_trip(&suspects_rs);
    report.check("serialization round trip", ok, d);
    if report.failed > 0 {
        println!("{} criteria failed", report.failed);
        std::process::exit(1);
    }
}
