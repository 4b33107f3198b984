use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use torus_whittle::counting::{classify_survivor, count_bound};
use torus_whittle::export::{export_whittled, read_jsonl, StateRecord};
use torus_whittle::homology::{close_and_build, euler_state_sum, homology, EulerSum};
use torus_whittle::states::GradingConvention;
use torus_whittle::tl::{d_move_reduce, reduce_to_jnf, TlWord};
use torus_whittle::verify::{run_verify, Check, RunConfig};
use torus_whittle::whittle::whittle;
use torus_whittle::{BraidWord, Error};

const THREADS_VAR: &str = "TORUS_WHITTLE_THREADS";

#[derive(Parser)]
#[command(name = "torus-whittle", version, about = "Whittled Khovanov complexes of torus braids")]
struct Cli {
    /// Grading convention for q.
    #[arg(long, value_enum, global = true, default_value_t = Convention::Printed)]
    convention: Convention,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    Printed,
    ModuleShift,
}

impl From<Convention> for GradingConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Printed => GradingConvention::Printed,
            Convention::ModuleShift => GradingConvention::ModuleShift,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Whittle ft_n^k and print the survivors per homological degree.
    Whittle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Write JSON-lines exports into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the checks over ranges of n and k (`3` or `2..4`).
    Verify {
        #[arg(long, value_parser = parse_range)]
        n: (usize, usize),
        #[arg(long, value_parser = parse_range)]
        k: (usize, usize),
        /// Comma-separated subset of acyclic,euler,bound,deflate,homology,jnf.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        /// Directory for report.json and per-instance exports.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the terms of the survivor bound at degree h.
    Count {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        h: u64,
        #[arg(long)]
        json: bool,
    },
    /// Annotate survivor records with their normal shape.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Integer homology of the closure of ft_n^k.
    Homology {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Also print the state sum per through-pairing of the open braid.
        #[arg(long)]
        open_euler: bool,
        #[arg(long)]
        json: bool,
    },
    /// Temperley-Lieb rewriting.
    Tl {
        #[command(subcommand)]
        command: TlCommand,
    },
}

#[derive(Subcommand)]
enum TlCommand {
    /// Print a decreasing path to normal form, one word per line.
    Reduce {
        /// Space-separated generator indices.
        word: String,
        #[arg(long)]
        n: usize,
        /// Use only the restricted D-moves.
        #[arg(long)]
        d_moves: bool,
    },
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    match s.split_once("..") {
        Some((a, b)) => Ok((parse(a)?, parse(b.trim_start_matches('='))?)),
        None => parse(s).map(|x| (x, x)),
    }
}

enum Failure {
    Error(Error),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Error(e.into())
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CycleDetected(_) | Error::Internal(_) | Error::Json(_) => 4,
        Error::Domain(_) | Error::MoveInapplicable { .. } | Error::Unsupported(_) | Error::Parse(_) | Error::Io(_) => 2,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(threads) = std::env::var(THREADS_VAR).ok().and_then(|v| v.parse().ok()) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            log::warn!("could not size the thread pool: {e}");
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let convention: GradingConvention = cli.convention.into();
    let mut out = std::io::stdout().lock();
    match cli.command {
        Command::Whittle { n, k, out: dir } => {
            let w = whittle(&BraidWord::torus(n, k)?, convention)?;
            writeln!(
                out,
                "ft_{n}^{k}: {} generators, {} eliminations, {} edges, {} survivors",
                w.space.enhanced_count(),
                w.isomorphisms.len(),
                w.graph.edges.len(),
                w.survivor_count()
            )?;
            for (h, states) in &w.survivors {
                let list: Vec<String> = states.iter().map(ToString::to_string).collect();
                writeln!(out, "h={h} ({}): {}", states.len(), list.join(" "))?;
            }
            if let Some(dir) = dir {
                export_whittled(&w, &dir)?;
            }
        }
        Command::Verify { n, k, checks, out: dir } => {
            let mut cfg = RunConfig::new(n, k);
            if let Some(names) = checks {
                cfg.checks = names.iter().map(|s| s.parse::<Check>()).collect::<Result<_, _>>()?;
            }
            cfg.out_dir = dir;
            cfg.convention = convention;
            let report = run_verify(&cfg)?;
            for inst in &report.instances {
                for c in &inst.checks {
                    let status = if c.passed { "pass" } else { "FAIL" };
                    writeln!(out, "ft_{}^{}\t{}\t{status}", inst.n, inst.k, c.check)?;
                    for note in &c.notes {
                        writeln!(out, "\t{note}")?;
                    }
                }
            }
            if let Some(c) = report.first_failure() {
                return Err(Failure::Check(c.to_string()));
            }
        }
        Command::Count { n, k, h, json } => {
            if n < 2 || k < 1 {
                return Err(Error::Domain("need n >= 2 and k >= 1".into()).into());
            }
            let b = count_bound(n, k, h);
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&b).map_err(Error::from)?)?;
            } else {
                writeln!(out, "partitions\t{}", b.partitions)?;
                writeln!(out, "formula_n\t{}", b.formula_n)?;
                writeln!(out, "catalan_term\t{}", b.catalan_term)?;
                writeln!(out, "total\t{}", b.total)?;
                writeln!(out, "total_with_pk2\t{}", b.total_with_pk2)?;
            }
        }
        Command::Classify { input } => {
            let records: Vec<StateRecord> = read_jsonl(&input)?;
            let mut unclassified = 0;
            for mut r in records {
                let word = TlWord::new(r.strands, r.tl_word.clone())?;
                r.form = classify_survivor(&word).map(|f| f.name().to_string());
                unclassified += usize::from(r.form.is_none());
                writeln!(out, "{}", serde_json::to_string(&r).map_err(Error::from)?)?;
            }
            if unclassified > 0 {
                return Err(Failure::Check(format!("{unclassified} records have neither form")));
            }
        }
        Command::Homology { n, k, open_euler, json } => {
            let braid = BraidWord::torus(n, k)?;
            let summary = homology(&close_and_build(&braid, convention)?);
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&summary).map_err(Error::from)?)?;
            } else {
                writeln!(out, "h\tq\trank\ttorsion")?;
                for s in summary.slices.iter().filter(|s| s.rank > 0 || !s.torsion.is_empty()) {
                    let torsion: Vec<String> = s.torsion.iter().map(ToString::to_string).collect();
                    writeln!(out, "{}\t{}\t{}\t{}", s.h, s.q, s.rank, torsion.join(","))?;
                }
            }
            if open_euler {
                if let EulerSum::Open(map) = euler_state_sum(&braid, false, convention)? {
                    for (pairing, poly) in map {
                        writeln!(out, "{:?}\t{poly}", pairing.partners())?;
                    }
                }
            }
        }
        Command::Tl { command: TlCommand::Reduce { word, n, d_moves } } => {
            let w = TlWord::parse(n, &word)?;
            let path = if d_moves {
                d_move_reduce(&w).ok_or_else(|| Failure::Check("no D-move path to normal form".into()))?
            } else {
                reduce_to_jnf(&w)
            };
            for word in &path.words {
                writeln!(out, "{word}")?;
            }
        }
    }
    Ok(())
}
