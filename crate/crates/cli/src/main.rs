use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use coherence::verify::Suite;
use coherence::{
    apply_word, canonical_iso, canonical_word, enumerate_capped, equal, free_reduce, from_word,
    invert, multiply, normalize_word, rotate_at, Error, Expr, NodeAddress, RotationGraph, TreePair,
    Verifier, Word, DEFAULT_CAP,
};

const EXIT_DOMAIN: u8 = 1;
const EXIT_VIOLATIONS: u8 = 2;
const EXIT_USAGE: u8 = 3;

/// Parenthesizations, associativity moves and Thompson's group F.
///
/// Expressions use `x` for a variable and `(a*b)` for a product. Words are
/// space-separated letters in application order: `a<i>` is the move at the
/// i-th left-spine node, `A<i>` its inverse, `-` the empty word.
#[derive(Debug, Parser)]
#[command(name = "cohere", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Leaf-count cap for enum/graph; bound for verify.
    #[arg(long, global = true, env = "COHERENCE_MAX_N")]
    max_n: Option<usize>,

    /// Seed for the randomized parts of verify.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for verify (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Report elapsed_ms as 0 so that output is reproducible.
    #[arg(long, global = true)]
    no_timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normalizing word and the left comb it reaches.
    Norm { expr: String },
    /// Canonical isomorphism word between two expressions.
    Iso { from: String, to: String },
    /// Apply a word to an expression.
    Apply { word: String, expr: String },
    /// List all expressions on N leaves.
    Enum { n: usize },
    /// Rotation graph on N leaves in DOT.
    Graph {
        n: usize,
        /// Include rotations away from the left spine.
        #[arg(long)]
        full: bool,
    },
    /// Group operations on words.
    #[command(subcommand)]
    F(FCommand),
    /// Rotate at an address (e.g. `R`, `LR`, `-` for the root).
    Rotate { expr: String, address: String },
    /// Express a rotation at an address as a word in the moves.
    Express { expr: String, address: String },
    /// Run a verification suite, or `all`.
    Verify { suite: String },
}

#[derive(Debug, Subcommand)]
enum FCommand {
    /// Product of the given words, left to right.
    Mul {
        #[arg(required = true)]
        words: Vec<String>,
    },
    Inv {
        word: String,
    },
    /// Canonical word of the element.
    Canon {
        word: String,
    },
    /// Reduced tree pair of the element.
    Pair {
        word: String,
    },
    Eq {
        left: String,
        right: String,
    },
}

enum Failure {
    Domain(Error),
    Usage(String),
    Violations(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Violations(out)) => {
            print!("{out}");
            ExitCode::from(EXIT_VIOLATIONS)
        }
    }
}

fn expr(text: &str) -> Result<Expr, Failure> {
    Ok(text.parse()?)
}

fn word(text: &str) -> Result<Word, Failure> {
    Ok(text.parse()?)
}

fn emit(cli: &Cli, value: serde_json::Value, lines: &[String]) -> String {
    if cli.json {
        format!("{}\n", serde_json::to_string_pretty(&value).expect("json"))
    } else {
        lines.iter().map(|l| format!("{l}\n")).collect()
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let cap = cli.max_n.unwrap_or(DEFAULT_CAP);
    Ok(match &cli.command {
        Command::Norm { expr: text } => {
            let e = expr(text)?;
            let w = normalize_word(&e);
            let target = apply_word(&w, &e)?;
            emit(
                cli,
                json!({"input": e, "word": w, "target": target}),
                &[w.to_string(), target.to_string()],
            )
        }
        Command::Iso { from, to } => {
            let w = free_reduce(&canonical_iso(&expr(from)?, &expr(to)?)?);
            emit(cli, json!({"word": w}), &[w.to_string()])
        }
        Command::Apply { word: w, expr: e } => {
            let result = apply_word(&word(w)?, &expr(e)?)?;
            emit(cli, json!({"result": result}), &[result.to_string()])
        }
        Command::Enum { n } => {
            let all = enumerate_capped(*n, cap)?;
            let lines: Vec<String> = all.iter().map(Expr::render).collect();
            emit(
                cli,
                json!({"n": n, "count": all.len(), "expressions": all}),
                &lines,
            )
        }
        Command::Graph { n, full } => {
            let g = RotationGraph::build(*n, *full, cap)?;
            if cli.json {
                emit(cli, serde_json::to_value(&g).expect("json"), &[])
            } else {
                g.to_dot()
            }
        }
        Command::F(f) => run_f(cli, f)?,
        Command::Rotate { expr: e, address } => {
            let a: NodeAddress = address.parse()?;
            let result = rotate_at(&expr(e)?, &a)?;
            emit(cli, json!({"result": result}), &[result.to_string()])
        }
        Command::Express { expr: e, address } => {
            let e = expr(e)?;
            let a: NodeAddress = address.parse()?;
            let target = rotate_at(&e, &a)?;
            let w = free_reduce(&canonical_iso(&e, &target)?);
            emit(
                cli,
                json!({"source": e, "target": target, "word": w}),
                &[w.to_string(), target.to_string()],
            )
        }
        Command::Verify { suite } => run_verify(cli, suite)?,
    })
}

fn run_f(cli: &Cli, f: &FCommand) -> Result<String, Failure> {
    let element = |p: &TreePair| {
        let w = canonical_word(p);
        (
            json!({"word": w, "pair": p.to_string()}),
            vec![w.to_string(), p.to_string()],
        )
    };
    Ok(match f {
        FCommand::Mul { words } => {
            let mut acc = TreePair::identity();
            for w in words {
                acc = multiply(&acc, &from_word(&word(w)?));
            }
            let (v, lines) = element(&acc);
            emit(cli, v, &lines)
        }
        FCommand::Inv { word: w } => {
            let (v, lines) = element(&invert(&from_word(&word(w)?)));
            emit(cli, v, &lines)
        }
        FCommand::Canon { word: w } => {
            let c = canonical_word(&from_word(&word(w)?));
            emit(cli, json!({"word": c}), &[c.to_string()])
        }
        FCommand::Pair { word: w } => {
            let p = from_word(&word(w)?);
            emit(cli, json!({"pair": p.to_string()}), &[p.to_string()])
        }
        FCommand::Eq { left, right } => {
            let same = equal(&from_word(&word(left)?), &from_word(&word(right)?));
            emit(cli, json!({"equal": same}), &[same.to_string()])
        }
    })
}

fn run_verify(cli: &Cli, name: &str) -> Result<String, Failure> {
    let suites: Vec<Suite> = if name == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![name
            .parse::<Suite>()
            .map_err(|e| Failure::Usage(format!("{e}; known suites: {}, all", suite_names())))?]
    };
    let mut reports = Vec::new();
    for suite in suites {
        let bound = cli.max_n.unwrap_or(suite.default_bound());
        let verifier = Verifier::default()
            .seed(cli.seed)
            .jobs(cli.jobs)
            .cap(bound.max(DEFAULT_CAP));
        let mut report = verifier.run(suite, Some(bound))?;
        if cli.no_timing {
            report = report.without_timing();
        }
        reports.push(report);
    }
    let out = if cli.json {
        let value = if reports.len() == 1 {
            serde_json::to_value(&reports[0])
        } else {
            serde_json::to_value(&reports)
        };
        format!(
            "{}\n",
            serde_json::to_string_pretty(&value.expect("json")).expect("json")
        )
    } else {
        reports
            .iter()
            .map(|r| format!("{r}\n"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    if reports.iter().all(|r| r.passed()) {
        Ok(out)
    } else {
        Err(Failure::Violations(out))
    }
}

fn suite_names() -> String {
    Suite::ALL.map(|s| s.name()).join(", ")
}
