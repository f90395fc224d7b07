//! Command-line surface: expansions, classification reports, language
//! queries, constructions, and a batch corpus runner.

use std::error::Error;
use std::io::Read;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use symshift::classify::{
    classify_report, constants, kl_digits, natural_approx_above, natural_approx_below,
    q_kl_enclosure,
};
use symshift::construct::{
    build_delta_theta, construct_dense, construct_strong, construct_strong_nospec,
    construct_weak, Chooser, ConstructionTrace,
};
use symshift::expansion::{base_from_alpha, AlgebraicBase};
use symshift::poly::{q_to_f64, Q, QPoly};
use symshift::shiftlang::{ShiftAutomaton, ShiftKind, SpecNumber, SyncMethod};
use symshift::words::{parse_seq, Digit, EpSeq, Word};

#[derive(Parser)]
#[command(name = "symshift", version, about = "Symbolic dynamics of symmetric shifts for non-integer base expansions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Human,
    Machine,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Symmetric,
    Greedy,
}

impl From<Kind> for ShiftKind {
    fn from(k: Kind) -> ShiftKind {
        match k {
            Kind::Symmetric => ShiftKind::Symmetric,
            Kind::Greedy => ShiftKind::Greedy,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a quasi-greedy or greedy digit prefix for a base
    Expand {
        /// base spec: "p/q", "root:<coeffs>:<lo>:<hi>" (constant first), or "alpha:<SEQ>"
        #[arg(long)]
        base: String,
        #[arg(long = "M")]
        m: Digit,
        #[arg(long)]
        digits: usize,
        /// greedy instead of quasi-greedy digits
        #[arg(long)]
        greedy: bool,
    },
    /// Full classification report for a quasi-greedy sequence
    Classify {
        #[arg(long)]
        alpha: String,
        #[arg(long = "M")]
        m: Digit,
        /// scan depth for irreducibility / approximants
        #[arg(long, default_value_t = 64)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Output::Human)]
        output: Output,
    },
    /// Language queries on the shift
    Lang {
        #[command(subcommand)]
        action: LangAction,
    },
    /// Topological entropy of the presentation
    Entropy {
        #[arg(long)]
        alpha: String,
        #[arg(long = "M")]
        m: Digit,
        #[arg(long, value_enum, default_value_t = Kind::Symmetric)]
        kind: Kind,
    },
    /// Specification number s_n
    Specnum {
        #[arg(long)]
        alpha: String,
        #[arg(long = "M")]
        m: Digit,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 64)]
        cap: usize,
        /// use connectors of length at most k instead of exactly k
        #[arg(long)]
        at_most: bool,
    },
    /// Search for an intrinsically synchronizing word
    Syncword {
        #[arg(long)]
        alpha: String,
        #[arg(long = "M")]
        m: Digit,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
    },
    /// Natural approximations of alpha from below or above
    Approx {
        #[arg(long)]
        alpha: String,
        #[arg(long = "M")]
        m: Digit,
        #[arg(long, value_enum, default_value_t = Direction::Below)]
        direction: Direction,
        #[arg(long, default_value_t = 8)]
        count: usize,
    },
    /// Run an iterative base construction and print its trace
    Construct {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long)]
        seed: String,
        #[arg(long = "M")]
        m: Digit,
        #[arg(long, default_value_t = 2)]
        steps: usize,
        /// comma-separated N_n or t_n schedule (weak / dense)
        #[arg(long)]
        schedule: Option<String>,
        #[arg(long, value_enum, default_value_t = ChooseArg::Smallest)]
        chooser: ChooseArg,
        #[arg(long, value_enum, default_value_t = Output::Human)]
        output: Output,
    },
    /// Print q_G, q_T and the Komornik-Loreti base for an alphabet
    Constants {
        #[arg(long = "M")]
        m: Digit,
        /// bisection rounds for the q_KL enclosure
        #[arg(long, default_value_t = 40)]
        rounds: usize,
    },
    /// Classify a corpus of `M<TAB>SEQ` lines (file or stdin), one JSON report per line
    Batch {
        /// input path; reads stdin when omitted
        #[arg(long)]
        file: Option<String>,
        #[arg(long, default_value_t = 64)]
        depth: usize,
    },
    /// Build the dense-orbit words delta and theta
    DeltaTheta {
        #[arg(long)]
        alpha: String,
        #[arg(long = "M")]
        m: Digit,
        #[arg(long, default_value_t = 2)]
        t: usize,
    },
}

#[derive(Subcommand)]
enum LangAction {
    /// Number of admissible words of length n
    Count {
        #[arg(long)]
        alpha: String,
        #[arg(long = "M")]
        m: Digit,
        #[arg(long)]
        n: usize,
    },
    /// List the admissible words of length n
    List {
        #[arg(long)]
        alpha: String,
        #[arg(long = "M")]
        m: Digit,
        #[arg(long)]
        n: usize,
    },
    /// Dump the deterministic presentation as a transition table
    Export {
        #[arg(long)]
        alpha: String,
        #[arg(long = "M")]
        m: Digit,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    Below,
    Above,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Strong,
    Weak,
    Dense,
    StrongNospec,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ChooseArg {
    Smallest,
    Largest,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn parse_base(spec: &str, m: Digit) -> Result<AlgebraicBase, Box<dyn Error>> {
    if let Some(rest) = spec.strip_prefix("alpha:") {
        let alpha = parse_seq(rest, m)?;
        return Ok(base_from_alpha(&alpha)?);
    }
    if let Some(rest) = spec.strip_prefix("root:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 3 {
            return Err("root spec is root:<coeffs>:<lo>:<hi>".into());
        }
        let coeffs: Vec<Q> = parts[0]
            .split(',')
            .map(Q::from_str)
            .collect::<Result<_, _>>()?;
        let lo = Q::from_str(parts[1])?;
        let hi = Q::from_str(parts[2])?;
        return Ok(AlgebraicBase::from_poly_root(m, QPoly::new(coeffs), lo, hi)?);
    }
    // rational p/q or plain integer
    Ok(AlgebraicBase::from_rational(m, Q::from_str(spec)?)?)
}

fn parse_alpha(s: &str, m: Digit) -> Result<EpSeq, Box<dyn Error>> {
    Ok(parse_seq(s, m)?)
}

fn fmt_interval(lo: f64, hi: f64) -> String {
    format!("[{:.9}, {:.9}]", lo, hi)
}

fn word_str(w: &Word) -> String {
    w.to_string()
}

fn run(cli: Cli) -> Result<(), Box<dyn Error>> {
    match cli.cmd {
        Cmd::Expand { base, m, digits, greedy } => {
            let q = parse_base(&base, m)?;
            if greedy {
                let (w, _halt) = q.greedy_digits(digits)?;
                println!("{}", word_str(&w));
            } else {
                println!("{}", word_str(&q.quasi_greedy_digits(digits)?));
            }
        }
        Cmd::Classify { alpha, m, depth, output } => {
            let a = parse_alpha(&alpha, m)?;
            let report = classify_report(&a, depth)?;
            match output {
                Output::Machine => println!("{}", serde_json::to_string(&report)?),
                Output::Human => {
                    println!("alpha            = {}", report.alpha);
                    println!("in V-hat         = {:?}", report.in_vhat);
                    println!("in U             = {:?}", report.in_u);
                    println!("in closure(U)    = {:?}", report.in_closure_u);
                    println!("irreducible      = {:?}", report.irreducible);
                    println!("star-irreducible = {:?}", report.star_irreducible);
                    println!("strong/weak      = {:?}", report.strong_weak);
                    println!("specification    = {:?}", report.spec);
                    println!("transitive       = {:?}", report.transitive);
                    println!("mixing           = {:?}", report.mixing);
                    println!("SFT              = {:?}", report.sft);
                    println!("sofic            = {}", report.sofic);
                    if let Some((lo, hi)) = report.entropy_ln {
                        println!("entropy (ln)     = {}", fmt_interval(lo, hi));
                    }
                    if let Some((lo, hi)) = report.dimension {
                        println!("dimension        = {}", fmt_interval(lo, hi));
                    }
                    for a in &report.approx_below {
                        println!("approx below     n={} seq={} q in [{:.9}, {:.9}]", a.n, a.alpha, a.q_lo, a.q_hi);
                    }
                    for n in &report.notes {
                        println!("note: {}", n);
                    }
                }
            }
        }
        Cmd::Lang { action } => match action {
            LangAction::Count { alpha, m, n } => {
                let a = parse_alpha(&alpha, m)?;
                let aut = ShiftAutomaton::build(&a, ShiftKind::Symmetric)?;
                println!("{}", aut.bn_counts(n)[n - 1]);
            }
            LangAction::List { alpha, m, n } => {
                let a = parse_alpha(&alpha, m)?;
                let aut = ShiftAutomaton::build(&a, ShiftKind::Symmetric)?;
                for w in aut.enumerate_bn(n) {
                    println!("{}", word_str(&w));
                }
            }
            LangAction::Export { alpha, m } => {
                let a = parse_alpha(&alpha, m)?;
                let aut = ShiftAutomaton::build(&a, ShiftKind::Symmetric)?;
                print!("{}", aut.export());
            }
        },
        Cmd::Entropy { alpha, m, kind } => {
            let a = parse_alpha(&alpha, m)?;
            let aut = ShiftAutomaton::build(&a, kind.into())?;
            let e = aut.entropy();
            println!("lambda     in {}", fmt_interval(e.lambda.0, e.lambda.1));
            println!("h (ln)     in {}", fmt_interval(e.h_ln.0, e.h_ln.1));
            println!("normalized in {}", fmt_interval(e.h_normalized.0, e.h_normalized.1));
        }
        Cmd::Specnum { alpha, m, n, cap, at_most } => {
            let a = parse_alpha(&alpha, m)?;
            let aut = ShiftAutomaton::build(&a, ShiftKind::Symmetric)?;
            let r = aut.spec_number(n, cap, at_most);
            match r.verdict {
                SpecNumber::Value(k) => println!("{k}"),
                SpecNumber::NoneUpTo(c) => println!("none<={c}"),
            }
            if let Some((u, v)) = r.witness {
                println!("witness: {} .. {}", word_str(&u), word_str(&v));
            }
        }
        Cmd::Syncword { alpha, m, max_len } => {
            let a = parse_alpha(&alpha, m)?;
            let aut = ShiftAutomaton::build(&a, ShiftKind::Symmetric)?;
            let r = aut.find_sync_word(max_len);
            match (r.word, r.method) {
                (Some(w), SyncMethod::NonFactor) => {
                    println!("{} (admissible non-factor of alpha)", word_str(&w))
                }
                (Some(w), _) => println!("{} (by state collapse)", word_str(&w)),
                (None, _) => println!("none<={}", r.max_len),
            }
        }
        Cmd::Approx { alpha, m, direction, count } => {
            let a = parse_alpha(&alpha, m)?;
            match direction {
                Direction::Below => {
                    let r = natural_approx_below(&a, count)?;
                    for item in &r.items {
                        println!("n={} seq={}", item.n, item.seq);
                    }
                    if r.terminated {
                        println!("terminated (alpha not in closure(U))");
                    }
                }
                Direction::Above => {
                    for (n, seq) in natural_approx_above(&a, count)? {
                        println!("m={} seq={}", n, seq);
                    }
                }
            }
        }
        Cmd::Construct { target, seed, m, steps, schedule, chooser, output } => {
            let s = parse_alpha(&seed, m)?;
            let sched: Vec<usize> = match &schedule {
                Some(text) => text
                    .split(',')
                    .map(|x| x.trim().parse::<usize>())
                    .collect::<Result<_, _>>()?,
                None => Vec::new(),
            };
            let trace = match target {
                Target::Strong => construct_strong(
                    &s,
                    steps,
                    if chooser == ChooseArg::Largest { Chooser::LargestValid } else { Chooser::SmallestValid },
                )?,
                Target::Weak => construct_weak(&s, &sched, steps)?,
                Target::Dense => construct_dense(&s, &sched, steps)?,
                Target::StrongNospec => construct_strong_nospec(&s, steps)?,
            };
            print_trace(&trace, output)?;
        }
        Cmd::Constants { m, rounds } => {
            let c = constants(m)?;
            let (glo, ghi) = c.q_g.enclosure_width(&Q::new(1.into(), 1_000_000_000.into()));
            println!("q_G  in [{:.9}, {:.9}]  alpha = {}", q_to_f64(&glo), q_to_f64(&ghi), c.alpha_qg);
            println!("alpha(q_T) = {}", c.alpha_qt);
            let (klo, khi) = q_kl_enclosure(m, rounds)?;
            println!("q_KL in [{:.9}, {:.9}]", q_to_f64(&klo), q_to_f64(&khi));
            let prefix: String = kl_digits(m, 16).iter().map(|d| d.to_string()).collect();
            println!("alpha(q_KL) prefix = {prefix}");
        }
        Cmd::Batch { file, depth } => {
            let text = match file {
                Some(p) => std::fs::read_to_string(p)?,
                None => {
                    let mut buf = String::new();
                    std::io::stdin().read_to_string(&mut buf)?;
                    buf
                }
            };
            let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
            let mut out: Vec<Option<String>> = vec![None; lines.len()];
            let workers = std::thread::available_parallelism().map_or(4, |n| n.get());
            std::thread::scope(|scope| {
                for (chunk_i, chunk) in out.chunks_mut(lines.len().div_ceil(workers).max(1)).enumerate() {
                    let stride = lines.len().div_ceil(workers).max(1);
                    let lines = &lines;
                    scope.spawn(move || {
                        for (j, slot) in chunk.iter_mut().enumerate() {
                            *slot = Some(batch_line(lines[chunk_i * stride + j], depth));
                        }
                    });
                }
            });
            for line in out.into_iter().flatten() {
                println!("{line}");
            }
        }
        Cmd::DeltaTheta { alpha, m, t } => {
            let a = parse_alpha(&alpha, m)?;
            let dt = build_delta_theta(&a, t)?;
            println!("delta = {}", word_str(&dt.delta));
            println!("theta = {}", word_str(&dt.theta));
            println!("checks = {}", serde_json::to_string(&dt.checks)?);
        }
    }
    Ok(())
}

fn batch_line(line: &str, depth: usize) -> String {
    let run = || -> Result<String, Box<dyn Error>> {
        let (ms, seq) = line
            .split_once('\t')
            .ok_or("batch lines are M<TAB>SEQ")?;
        let m: Digit = ms.trim().parse()?;
        let a = parse_seq(seq.trim(), m)?;
        Ok(serde_json::to_string(&classify_report(&a, depth)?)?)
    };
    run().unwrap_or_else(|e| {
        json!({ "schema": "symshift.error/1", "input": line, "error": e.to_string() }).to_string()
    })
}

fn print_trace(trace: &ConstructionTrace, output: Output) -> Result<(), Box<dyn Error>> {
    match output {
        Output::Machine => {
            let steps: Vec<_> = trace
                .steps
                .iter()
                .map(|s| {
                    json!({
                        "index": s.index,
                        "parameter": s.parameter,
                        "alpha": s.alpha.to_string(),
                        "verified": s.verified,
                    })
                })
                .collect();
            let v = json!({
                "schema": "symshift.construction/1",
                "target": trace.target,
                "seed": trace.seed.to_string(),
                "steps": steps,
                "limit_prefix": trace.limit_prefix.to_string(),
                "all_verified": trace.all_verified(),
            });
            println!("{v}");
        }
        Output::Human => {
            println!("target: {:?}   seed: {}", trace.target, trace.seed);
            for s in &trace.steps {
                let checks: Vec<String> = s
                    .verified
                    .iter()
                    .map(|(name, ok)| format!("{name}={}", if *ok { "ok" } else { "FAIL" }))
                    .collect();
                println!("step {}: param={} alpha={} [{}]", s.index, s.parameter, s.alpha, checks.join(" "));
            }
            println!("limit prefix: {}", trace.limit_prefix);
            println!("all verified: {}", trace.all_verified());
        }
    }
    Ok(())
}
