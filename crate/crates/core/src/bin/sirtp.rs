//! Command-line interface: solve, verify, oracle, bench and render.
//!
//! Exit codes: 0 success, 1 semantic failure (a check failed), 2 usage or
//! malformed input, 3 internal invariant breach.

use clap::{Parser, Subcommand, ValueEnum};
use sirtp::analysis::{check_isomorphism, check_tiling, CheckReport};
use sirtp::bench::{emit_csv, run_family, BenchOptions, Family};
use sirtp::doc::{self, OracleDocument, PairDocument, TraceDocument};
use sirtp::geom::{PairingMode, PartitionPair, SirtpInstance};
use sirtp::oracle::{min_sirtp, Budget};
use sirtp::solver;
use sirtp::svg::render_svg;
use std::process::ExitCode;
use std::time::Duration;

const EXIT_OK: u8 = 0;
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "sirtp", about = "Strict integral rectangle transformation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Algorithm {
    Algsirtp,
    Euclid,
    SquareTransfer,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Strict,
    Rotational,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyName {
    Successor,
    Coprime,
    RatioBand,
}

#[derive(Subcommand)]
enum Command {
    /// Solve SIRTP(p, q) and print the partition size.
    Solve {
        p: u64,
        q: u64,
        #[arg(long, value_enum, default_value = "algsirtp")]
        algorithm: Algorithm,
        /// Write the pair as JSON.
        #[arg(long)]
        emit: Option<std::path::PathBuf>,
        /// Write the pair as SVG.
        #[arg(long)]
        svg: Option<std::path::PathBuf>,
        /// Pixels per unit in SVG output.
        #[arg(long, default_value_t = sirtp::svg::DEFAULT_SCALE)]
        scale: u64,
        /// Print the recursion trace.
        #[arg(long)]
        trace: bool,
    },
    /// Verify a pair document: exact tilings plus isomorphism.
    Verify {
        path: std::path::PathBuf,
        #[arg(long, value_enum, default_value = "strict")]
        mode: Mode,
    },
    /// Exhaustive integer-grid minimum for a small instance.
    Oracle {
        p: u64,
        q: u64,
        /// Raise the p*q cap (default 36).
        #[arg(long)]
        max_area: Option<u64>,
        /// Time budget in milliseconds.
        #[arg(long)]
        budget_ms: Option<u64>,
        /// Write the result (with witness) as JSON.
        #[arg(long)]
        emit: Option<std::path::PathBuf>,
    },
    /// Solve an instance family and emit CSV.
    Bench {
        #[arg(long, value_enum)]
        family: FamilyName,
        /// First p (successor family).
        #[arg(long, default_value_t = 2)]
        from: u64,
        /// Last p (successor family).
        #[arg(long, default_value_t = 10)]
        to: u64,
        /// Instance count (random families).
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        p_max: u64,
        /// Mandatory for random families.
        #[arg(long)]
        seed: Option<u64>,
        /// Band width for the ratio-band family.
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[arg(long, default_value_t = 36)]
        oracle_cap: u64,
        /// Include wall-time columns (breaks byte determinism).
        #[arg(long)]
        times: bool,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Render a pair document as SVG.
    Render {
        path: std::path::PathBuf,
        #[arg(long)]
        out: std::path::PathBuf,
        #[arg(long, default_value_t = sirtp::svg::DEFAULT_SCALE)]
        scale: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Solve { p, q, algorithm, emit, svg, scale, trace } => {
            cmd_solve(p, q, algorithm, emit, svg, scale, trace)
        }
        Command::Verify { path, mode } => cmd_verify(&path, mode),
        Command::Oracle { p, q, max_area, budget_ms, emit } => {
            cmd_oracle(p, q, max_area, budget_ms, emit)
        }
        Command::Bench { family, from, to, n, p_max, seed, eps, oracle_cap, times, out } => {
            cmd_bench(family, from, to, n, p_max, seed, eps, oracle_cap, times, out)
        }
        Command::Render { path, out, scale } => cmd_render(&path, &out, scale),
    };
    ExitCode::from(code)
}

fn usage_error(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn verify_pair(pair: &PartitionPair, mode: PairingMode) -> Vec<String> {
    let mut msgs = Vec::new();
    let collect = |label: &str, report: &CheckReport, msgs: &mut Vec<String>| {
        for v in &report.violations {
            msgs.push(format!("{label}: {:?}: {}", v.kind, v.description));
        }
    };
    collect("side a", &check_tiling(&pair.a), &mut msgs);
    collect("side b", &check_tiling(&pair.b), &mut msgs);
    collect("pairing", &check_isomorphism(pair, mode), &mut msgs);
    msgs
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    p: u64,
    q: u64,
    algorithm: Algorithm,
    emit: Option<std::path::PathBuf>,
    svg: Option<std::path::PathBuf>,
    scale: u64,
    trace: bool,
) -> u8 {
    if p < 1 || q < 1 {
        return usage_error("sides must be positive");
    }
    let inst = SirtpInstance::new(p, q);
    let need_geometry = emit.is_some() || svg.is_some();

    let (size, pair): (u128, Option<PartitionPair>) = match algorithm {
        Algorithm::Algsirtp => {
            let (size, tr) = solver::algsirtp_size(inst);
            if trace {
                let (np, nq) = inst.normalized();
                let td = TraceDocument::from_trace(np, nq, &tr);
                for r in &td.rounds {
                    println!(
                        "round: p={} q={} delta={} branch={} added={}",
                        r.p, r.q, r.delta, r.branch, r.added
                    );
                }
            }
            (size, need_geometry.then(|| solver::algsirtp_partition(inst)))
        }
        Algorithm::Euclid => {
            let size = solver::euclid_sirtp_size(inst);
            (size, need_geometry.then(|| solver::euclid_sirtp(inst)))
        }
        Algorithm::SquareTransfer => {
            let (lo, hi) = inst.normalized();
            if hi != lo + 1 {
                return usage_error("square-transfer solves SIRTP(p, p+1); need q = p + 1");
            }
            match solver::square_transfer_pair(lo) {
                Ok(pair) => (pair.size() as u128, Some(pair)),
                Err(e) => return usage_error(&e.to_string()),
            }
        }
    };

    if let Some(pair) = &pair {
        let violations = verify_pair(pair, PairingMode::Strict);
        if !violations.is_empty() {
            for v in &violations {
                eprintln!("internal verification failed: {v}");
            }
            return EXIT_INTERNAL;
        }
        if pair.size() as u128 != size {
            eprintln!(
                "internal verification failed: geometry has {} modules, size reports {size}",
                pair.size()
            );
            return EXIT_INTERNAL;
        }
        if let Some(path) = &emit {
            let text = doc::to_json(&PairDocument::from_pair(pair));
            if let Err(e) = std::fs::write(path, text) {
                return usage_error(&format!("cannot write {}: {e}", path.display()));
            }
        }
        if let Some(path) = &svg {
            if let Err(e) = std::fs::write(path, render_svg(pair, scale)) {
                return usage_error(&format!("cannot write {}: {e}", path.display()));
            }
        }
    }
    println!("{size}");
    EXIT_OK
}

fn cmd_verify(path: &std::path::Path, mode: Mode) -> u8 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return usage_error(&format!("cannot read {}: {e}", path.display())),
    };
    let pair = match doc::pair_from_json(&text) {
        Ok(p) => p,
        Err(e) => return usage_error(&e.to_string()),
    };
    let mode = match mode {
        Mode::Strict => PairingMode::Strict,
        Mode::Rotational => PairingMode::Rotational,
    };
    let violations = verify_pair(&pair, mode);
    if violations.is_empty() {
        println!("ok: {} modules", pair.size());
        EXIT_OK
    } else {
        for v in &violations {
            println!("{v}");
        }
        EXIT_CHECK_FAILED
    }
}

fn cmd_oracle(
    p: u64,
    q: u64,
    max_area: Option<u64>,
    budget_ms: Option<u64>,
    emit: Option<std::path::PathBuf>,
) -> u8 {
    let mut budget = Budget::default();
    if let Some(cap) = max_area {
        budget.max_area = cap;
        budget.max_multiset_area = budget.max_multiset_area.max(cap);
    }
    budget.time_limit = budget_ms.map(Duration::from_millis);
    let inst = SirtpInstance::new(p, q);
    let result = match min_sirtp(inst, &budget) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    if result.exhausted {
        println!("{}", result.min_size);
    } else {
        println!("exhausted=false upper_bound={}", result.min_size);
    }
    if let Some(path) = emit {
        let (np, nq) = inst.normalized();
        let doc = OracleDocument {
            format_version: doc::FORMAT_VERSION,
            kind: "oracle".into(),
            p: np,
            q: nq,
            min_size: result.min_size,
            exhausted: result.exhausted,
            witness: result.witness.as_ref().map(PairDocument::from_pair),
        };
        if let Err(e) = std::fs::write(&path, doc::to_json(&doc)) {
            return usage_error(&format!("cannot write {}: {e}", path.display()));
        }
    }
    EXIT_OK
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    family: FamilyName,
    from: u64,
    to: u64,
    n: usize,
    p_max: u64,
    seed: Option<u64>,
    eps: f64,
    oracle_cap: u64,
    times: bool,
    out: Option<std::path::PathBuf>,
) -> u8 {
    let family = match family {
        FamilyName::Successor => {
            if from < 1 || to < from {
                return usage_error("need 1 <= from <= to");
            }
            Family::Successor { p_min: from, p_max: to }
        }
        FamilyName::Coprime => {
            let Some(seed) = seed else {
                return usage_error("--seed is mandatory for random families");
            };
            if p_max < 3 {
                return usage_error("--p-max must be at least 3");
            }
            Family::CoprimeRandom { n, p_max, seed }
        }
        FamilyName::RatioBand => {
            let Some(seed) = seed else {
                return usage_error("--seed is mandatory for random families");
            };
            if !(eps > 0.0) || p_max < 2 {
                return usage_error("need eps > 0 and p-max >= 2");
            }
            Family::RatioBand { eps, n, p_max, seed }
        }
    };
    let records = run_family(&family, &BenchOptions { oracle_cap });
    let csv = emit_csv(&records, times);
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, csv) {
                return usage_error(&format!("cannot write {}: {e}", path.display()));
            }
        }
        None => print!("{csv}"),
    }
    EXIT_OK
}

fn cmd_render(path: &std::path::Path, out: &std::path::Path, scale: u64) -> u8 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return usage_error(&format!("cannot read {}: {e}", path.display())),
    };
    let pair = match doc::pair_from_json(&text) {
        Ok(p) => p,
        Err(e) => return usage_error(&e.to_string()),
    };
    if scale < 1 {
        return usage_error("scale must be positive");
    }
    if let Err(e) = std::fs::write(out, render_svg(&pair, scale)) {
        return usage_error(&format!("cannot write {}: {e}", out.display()));
    }
    EXIT_OK
}
