use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use bimachine::control::parse_scores;
use bimachine::format::{load_machine, save_machine, Machine};
use bimachine::synth::synthetic_grammar;
use bimachine::{
    all_matching_rules, inject_default_rule, n_best, parse_grammar, render_grammar, tokenize_items,
    tokenize_plain, Bimachine, CompileOptions, Error, ExtendedMachine, Regex, SimultMatcher,
    SymbolId,
};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "bimc",
    version,
    about = "Compile tagging rules into bimachines and apply them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a grammar into a machine file.
    Compile(CompileArgs),
    /// Tag items read from stdin or a file.
    Tag(TagArgs),
    /// Print machine sizes.
    Stats(StatsArgs),
    /// Print a seeded synthetic grammar.
    Generate(GenerateArgs),
}

#[derive(Args)]
struct CompileArgs {
    #[arg(long)]
    grammar: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Honour history patterns (`π :` prefixes).
    #[arg(long)]
    extended: bool,
    #[arg(long)]
    no_minimize: bool,
}

#[derive(Args)]
struct TagArgs {
    #[arg(long)]
    machine: PathBuf,
    /// Input file; stdin when absent.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Print states and match sets for every position.
    #[arg(long)]
    trace: bool,
    /// Print every rule whose contexts match, not only the firing one.
    #[arg(long)]
    all_matches: bool,
    /// Print the N best rule sequences under `--scores`.
    #[arg(long, requires = "scores")]
    nbest: Option<usize>,
    /// `rule score` lines.
    #[arg(long)]
    scores: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct StatsSource {
    #[arg(long)]
    machine: Option<PathBuf>,
    /// Compile this grammar and report its sizes and compile time.
    #[arg(long)]
    grammar: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    source: StatsSource,
    #[arg(long)]
    extended: bool,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, default_value_t = 40)]
    rules: usize,
    #[arg(long, default_value_t = 60)]
    symbols: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum Failure {
    Usage(String),
    Grammar(String),
    Machine(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Format(_) => Failure::Machine(e.to_string()),
            Error::Syntax { .. }
            | Error::UnknownSymbol { .. }
            | Error::SymbolOutOfRange { .. }
            | Error::Grammar { .. }
            | Error::FocusLength { .. }
            | Error::RuleIndexOutOfRange { .. } => Failure::Grammar(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn io_usage(path: &Path, e: io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

fn compile_grammar(
    path: &Path,
    extended: bool,
    opts: CompileOptions,
) -> Result<(Machine, u64), Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Grammar(format!("{}: {e}", path.display())))?;
    let rs = inject_default_rule(&parse_grammar(&text)?);
    let t0 = Instant::now();
    let m = if extended {
        Machine::Extended(ExtendedMachine::compile(&rs, opts)?)
    } else {
        Machine::Basic(Bimachine::compile(&rs, opts)?)
    };
    Ok((m, t0.elapsed().as_millis() as u64))
}

fn compile(args: CompileArgs) -> Result<(), Failure> {
    let opts = CompileOptions {
        minimize: !args.no_minimize,
    };
    let (m, ms) = compile_grammar(&args.grammar, args.extended, opts)?;
    save_machine(&m, &args.out).map_err(|e| io_usage(&args.out, e))?;
    println!("{}", m.stats(ms));
    Ok(())
}

fn stats(args: StatsArgs) -> Result<(), Failure> {
    let line = match (args.source.machine, args.source.grammar) {
        (Some(path), _) => load_machine(&path)?.stats(0),
        (None, Some(path)) => {
            let (m, ms) = compile_grammar(&path, args.extended, CompileOptions::default())?;
            m.stats(ms)
        }
        (None, None) => unreachable!("clap enforces one source"),
    };
    println!("{line}");
    Ok(())
}

fn generate(args: GenerateArgs) -> Result<(), Failure> {
    print!(
        "{}",
        render_grammar(&synthetic_grammar(args.seed, args.rules, args.symbols))
    );
    Ok(())
}

/// Input items with their display form.
fn read_items(text: &str, m: &Bimachine) -> Result<(Vec<String>, Vec<SymbolId>), Failure> {
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    if lines.iter().any(|l| l.contains('=')) {
        let symbols = tokenize_items(lines.iter().copied(), m.sigma(), m.priority())?;
        let shown = lines.iter().map(|l| display_item(l)).collect();
        Ok((shown, symbols))
    } else {
        let shown = text.split_whitespace().map(str::to_string).collect();
        Ok((shown, tokenize_plain(text, m.sigma())))
    }
}

fn display_item(line: &str) -> String {
    let mut pairs = line.split_whitespace().filter_map(|p| p.split_once('='));
    let first = pairs.clone().next().map(|(_, v)| v);
    pairs
        .find(|(f, _)| *f == "name")
        .map(|(_, v)| v)
        .or(first)
        .unwrap_or(line.trim())
        .to_string()
}

/// Treats a machine without history patterns as one whose patterns are all `I*`.
fn as_extended(m: Machine) -> Result<ExtendedMachine, Failure> {
    match m {
        Machine::Extended(e) => Ok(e),
        Machine::Basic(b) => {
            let n = b.rule_count();
            let history = SimultMatcher::build(&vec![Regex::Empty; n], n)?;
            Ok(ExtendedMachine::from_parts(b, history))
        }
    }
}

fn tag(args: TagArgs) -> Result<(), Failure> {
    let machine = load_machine(&args.machine)?;
    let text = match &args.input {
        Some(p) => fs::read_to_string(p).map_err(|e| io_usage(p, e))?,
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
            s
        }
    };
    let (shown, w) = read_items(&text, machine.base())?;
    let mut out = io::BufWriter::new(io::stdout().lock());
    let b = machine.base().clone();

    let result = if let Some(n) = args.nbest {
        if n == 0 {
            return Err(Failure::Usage("--nbest must be positive".into()));
        }
        let path = args.scores.as_ref().expect("clap requires --scores");
        let scores_text = fs::read_to_string(path).map_err(|e| io_usage(path, e))?;
        let scores = parse_scores(&scores_text, b.rule_count())?;
        let m = as_extended(machine)?;
        let mut res = Ok(());
        for (rank, h) in n_best(&m, &scores, &w, n).iter().enumerate() {
            res = res.and(writeln!(out, "# {} total={}", rank + 1, h.total));
            for (tok, &r) in shown.iter().zip(&h.rules) {
                res = res.and(writeln!(out, "{tok}\t{}", b.action_label(b.rule_action(r))));
            }
        }
        res
    } else if args.trace {
        let mut res = Ok(());
        match &machine {
            Machine::Basic(m) => {
                for (tok, s) in shown.iter().zip(m.trace(&w)?) {
                    res = res.and(writeln!(
                        out,
                        "{tok}\t{}\trule={} left={} right={} left_tau={} right_tau={} match={}",
                        b.action_label(s.action),
                        s.rule,
                        s.left_state,
                        s.right_state,
                        s.left_tau,
                        s.right_tau,
                        s.matching
                    ));
                }
            }
            Machine::Extended(m) => {
                for (tok, s) in shown.iter().zip(m.trace(&w)?) {
                    res = res.and(writeln!(
                        out,
                        "{tok}\t{}\trule={} left={} history={} right={} admissible={}",
                        b.action_label(s.action),
                        s.rule,
                        s.left_state,
                        s.history_state,
                        s.right_state,
                        s.admissible
                    ));
                }
            }
        }
        res
    } else {
        let acts = machine.apply(&w)?;
        let sets = args.all_matches.then(|| all_matching_rules(&b, &w));
        let mut res = Ok(());
        for (i, (tok, a)) in shown.iter().zip(&acts).enumerate() {
            res = res.and(match &sets {
                Some(s) => writeln!(out, "{tok}\t{}\t{}", b.action_label(*a), s[i]),
                None => writeln!(out, "{tok}\t{}", b.action_label(*a)),
            });
        }
        res
    };
    result
        .and(out.flush())
        .map_err(|e| Failure::Usage(format!("stdout: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Compile(a) => compile(a),
        Command::Tag(a) => tag(a),
        Command::Stats(a) => stats(a),
        Command::Generate(a) => generate(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (1, m),
                Failure::Grammar(m) => (2, m),
                Failure::Machine(m) => (3, m),
            };
            eprintln!("bimc: {msg}");
            ExitCode::from(code)
        }
    }
}
