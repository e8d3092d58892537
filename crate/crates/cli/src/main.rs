use std::process::ExitCode;

use btb_core::algebra::dimension;
use btb_core::random::DEFAULT_SEED;
use btb_core::selfcheck::{self, Level};
use btb_core::trace::on_w_xy_locus;
use btb_core::{invariant_eq, Algebra, BraidWord, InvariantValue};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

const USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "btb", version, about = "Invariants of solid torus links from type-B braids and ties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the invariant of the closure of a braid word
    Invariant {
        #[arg(long)]
        strands: usize,
        /// e.g. "r s1 s2' r'"
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Substitute w = x y in the result
        #[arg(long)]
        w_as_xy: bool,
    },
    /// Markov trace of the image of a braid word
    Trace {
        #[arg(long)]
        strands: usize,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        w_as_xy: bool,
    },
    /// Compare the invariants of two braid words (exit 0 equal, 1 distinct)
    Compare {
        #[arg(long)]
        strands_a: usize,
        #[arg(long, allow_hyphen_values = true)]
        word_a: String,
        #[arg(long)]
        strands_b: usize,
        #[arg(long, allow_hyphen_values = true)]
        word_b: String,
        #[arg(long)]
        w_as_xy: bool,
    },
    /// Run the verification suites
    Selfcheck {
        #[arg(long, value_enum, default_value = "quick")]
        level: LevelArg,
        #[arg(long, env = "BTB_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Basis size from the formula and from enumeration
    Dims {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn parse(word: &str, strands: usize) -> Result<BraidWord, ExitCode> {
    BraidWord::parse(word, strands).map_err(|e| {
        eprintln!("btb: {e}");
        ExitCode::from(USAGE)
    })
}

fn compute(word: &BraidWord, w_as_xy: bool) -> Result<InvariantValue, ExitCode> {
    let v = Algebra::symbolic().delta_b(word).map_err(|e| {
        eprintln!("btb: {e}");
        ExitCode::FAILURE
    })?;
    Ok(if w_as_xy { v.on_w_xy_locus() } else { v })
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    match cli.command {
        Command::Invariant { strands, word, format, w_as_xy } => {
            let v = compute(&parse(&word, strands)?, w_as_xy)?;
            match format {
                Format::Text => println!("{v}"),
                Format::Json => println!("{}", v.to_json()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Trace { strands, word, format, w_as_xy } => {
            let word = parse(&word, strands)?;
            let alg = Algebra::symbolic();
            let t = alg
                .pi_natural(&word)
                .and_then(|e| alg.markov_trace(&e))
                .map_err(|e| {
                    eprintln!("btb: {e}");
                    ExitCode::FAILURE
                })?;
            let t = if w_as_xy { on_w_xy_locus(&t) } else { t };
            match format {
                Format::Text => println!("{t}"),
                Format::Json => println!("{}", json!({ "strands": strands, "word": word.to_string(), "trace": t, "pretty": t.to_string() })),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare { strands_a, word_a, strands_b, word_b, w_as_xy } => {
            let a = parse(&word_a, strands_a)?;
            let b = parse(&word_b, strands_b)?;
            let equal = invariant_eq(&compute(&a, w_as_xy)?, &compute(&b, w_as_xy)?);
            println!("{}", if equal { "equal" } else { "distinct" });
            Ok(if equal { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Selfcheck { level, seed, format } => {
            let level = match level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            };
            let report = selfcheck::run(level, seed);
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("serializable")),
                Format::Text if report.passed => {
                    for c in &report.checks {
                        println!("{:4}  {:>6}  {}: {}", c.status, c.cases, c.suite, c.check);
                    }
                    println!("all {} checks passed (seed {seed})", report.checks.len());
                }
                Format::Text => {
                    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
                }
            }
            Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Dims { n, format } => {
            if n > 3 {
                eprintln!("btb: dims supports n <= 3");
                return Err(ExitCode::from(USAGE));
            }
            let formula = dimension(n);
            let counted = Algebra::basis_b(n).len() as u128;
            match format {
                Format::Text => println!("{formula} = {counted}"),
                Format::Json => println!("{}", json!({ "n": n, "formula": formula.to_string(), "enumerated": counted.to_string() })),
            }
            Ok(if formula == counted { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) | Err(code) => code,
    }
}
