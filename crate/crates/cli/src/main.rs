use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use openpath_core::io::serialize_payload;
use openpath_core::laws::{full_suite, LawReport};
use openpath_core::solver::{bench, functional_chain, BenchTable, ChainShape};
use openpath_core::{
    blackbox::is_functional, make_quantale, parse, solve_blackbox, solve_chain, solve_monolithic,
    star_fixpoint, star_kleene, star_open, AnyPayload, AnyQuantale, Builtin, Decomposition, Error,
    OpenMatrix, Payload, Quantale, QuantaleKind,
};

/// Algebraic path problems on open weighted graphs.
#[derive(Debug, Parser)]
#[command(name = "openpath", version)]
struct Cli {
    /// Write the result JSON here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Interpret scalars in this quantale, ignoring the files' own ids.
    #[arg(long, global = true, value_name = "ID")]
    quantale: Option<QuantaleKind>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a matrix, an open matrix or a decomposition.
    Solve(SolveArgs),
    /// Glue the outputs of the first open matrix to the inputs of the second.
    Compose { first: PathBuf, second: PathBuf },
    /// Place two open matrices side by side.
    Tensor { first: PathBuf, second: PathBuf },
    /// Boundary-to-boundary solution of an open matrix.
    Blackbox { file: PathBuf },
    /// Closure of a matrix, or of the apex of an open matrix.
    Star { file: PathBuf },
    /// Whether inputs land on sources and outputs on sinks.
    CheckFunctional { file: PathBuf },
    /// Run the law suite on the built-in quantales (or the `--quantale` one).
    CheckLaws(LawArgs),
    /// Compare compositional and monolithic solving on a synthetic chain.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("input").required(true))]
struct SolveArgs {
    #[arg(group = "input")]
    file: Option<PathBuf>,
    /// A JSON array of open matrices, each block's outputs feeding the next.
    #[arg(long, group = "input", value_name = "PATH")]
    decomposition: Option<PathBuf>,
    /// Glue the decomposition and solve it in one closure.
    #[arg(long)]
    force_monolithic: bool,
    /// Time both strategies over N repeats and report them.
    #[arg(long, value_name = "N")]
    bench: Option<usize>,
    /// Cross-check the result against an independent computation.
    #[arg(long)]
    verify: bool,
}

#[derive(Debug, Args)]
struct LawArgs {
    #[arg(long, default_value_t = 12)]
    samples: usize,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 8)]
    blocks: usize,
    #[arg(long, default_value_t = 32)]
    block_size: usize,
    #[arg(long, default_value_t = 4)]
    boundary: usize,
    #[arg(long, default_value_t = 0.15)]
    density: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
}

/// What a command produced: JSON for `--output`, and optionally a human
/// summary for the terminal.
struct Outcome {
    json: String,
    summary: Option<String>,
    /// Printed to standard error even when the JSON goes to standard output.
    notes: Vec<String>,
    failed: bool,
}

impl Outcome {
    fn json(json: String) -> Self {
        Outcome {
            json,
            summary: None,
            notes: Vec::new(),
            failed: false,
        }
    }
}

const EXIT_USAGE: u8 = 1;
const EXIT_MISMATCH: u8 = 2;
const EXIT_NON_STABILIZING: u8 = 3;
const EXIT_PARSE: u8 = 4;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::VerificationMismatch(_) => EXIT_MISMATCH,
        Error::NonStabilizing(_) => EXIT_NON_STABILIZING,
        Error::Parse { .. }
        | Error::Io(_)
        | Error::UnknownQuantale(_)
        | Error::InvalidAlphabet(_)
        | Error::InvalidScalar(_)
        | Error::InvalidVertexSet(_)
        | Error::InvalidFunction(_) => EXIT_PARSE,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            for note in &outcome.notes {
                eprintln!("{note}");
            }
            if let Some(path) = &cli.output {
                if let Err(e) = fs::write(path, &outcome.json) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(EXIT_USAGE);
                }
                if let Some(summary) = &outcome.summary {
                    println!("{summary}");
                }
            } else {
                print!("{}", outcome.summary.as_ref().unwrap_or(&outcome.json));
                if outcome.summary.is_some() {
                    println!();
                }
            }
            if outcome.failed {
                ExitCode::from(EXIT_MISMATCH)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

macro_rules! dispatch {
    ($payload:expr, $f:ident($($arg:expr),*)) => {
        match $payload {
            AnyPayload::MinPlus(p) => $f(p, $($arg),*),
            AnyPayload::MaxMin(p) => $f(p, $($arg),*),
            AnyPayload::Viterbi(p) => $f(p, $($arg),*),
            AnyPayload::Boolean(p) => $f(p, $($arg),*),
            AnyPayload::Language(p) => $f(p, $($arg),*),
        }
    };
}

macro_rules! with_quantale {
    ($q:expr, $f:ident($($arg:expr),*)) => {
        match $q {
            AnyQuantale::MinPlus(q) => $f(&q, $($arg),*),
            AnyQuantale::MaxMin(q) => $f(&q, $($arg),*),
            AnyQuantale::Viterbi(q) => $f(&q, $($arg),*),
            AnyQuantale::Boolean(q) => $f(&q, $($arg),*),
            AnyQuantale::Language(q) => $f(&q, $($arg),*),
        }
    };
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let ov = cli.quantale.as_ref();
    let load = |path: &Path| parse(path, ov).map(|m| m.payload);
    match &cli.command {
        Command::Solve(args) => {
            if let Some(path) = &args.decomposition {
                dispatch!(load(path)?, solve_decomposition(args))
            } else {
                let path = args.file.as_deref().expect("clap requires an input");
                dispatch!(load(path)?, solve(args))
            }
        }
        Command::Compose { first, second } => {
            dispatch!(load(first)?, binary(load(second)?, "compose"))
        }
        Command::Tensor { first, second } => {
            dispatch!(load(first)?, binary(load(second)?, "tensor"))
        }
        Command::Blackbox { file } => dispatch!(load(file)?, blackbox_cmd()),
        Command::Star { file } => dispatch!(load(file)?, star_cmd()),
        Command::CheckFunctional { file } => dispatch!(load(file)?, functional_cmd()),
        Command::CheckLaws(args) => check_laws(ov, args),
        Command::Bench(args) => {
            let kind = ov.cloned().unwrap_or(QuantaleKind::MinPlus);
            with_quantale!(make_quantale(&kind)?, bench_cmd(args))
        }
    }
}

fn expect_open<Q: Quantale>(p: Payload<Q>) -> Result<OpenMatrix<Q>, Error> {
    match p {
        Payload::Open(m) => Ok(m),
        other => Err(Error::parse("$", format!("expected an open matrix, found a {}", other.kind()))),
    }
}

fn same_quantale<Q: Builtin>(other: AnyPayload) -> Result<Payload<Q>, Error> {
    let right = other.quantale().id();
    Q::unwrap(other).ok_or_else(|| Error::QuantaleMismatch {
        left: "first file".into(),
        right,
    })
}

fn solve<Q: Builtin>(p: Payload<Q>, args: &SolveArgs) -> Result<Outcome, Error> {
    if args.bench.is_some() || args.force_monolithic {
        if let Payload::Decomposition(_) = p {
            return solve_decomposition(p, args);
        }
        return Err(Error::parse(
            "$",
            "--bench and --force-monolithic need a decomposition",
        ));
    }
    match p {
        Payload::Matrix(m) => {
            let closed = star_kleene(&m)?;
            if args.verify && !closed.approx_eq(&star_fixpoint(&m)?) {
                return Err(Error::VerificationMismatch(
                    "elimination and fixpoint closures differ".into(),
                ));
            }
            Ok(Outcome::json(serialize_payload(&Payload::Matrix(closed))))
        }
        Payload::Open(m) => {
            let result = solve_blackbox(&m)?;
            if args.verify {
                let oracle = star_fixpoint(m.apex())?.restrict(m.left(), m.right())?;
                if !result.approx_eq(&oracle) {
                    return Err(Error::VerificationMismatch(
                        "elimination and fixpoint closures differ".into(),
                    ));
                }
            }
            Ok(Outcome::json(serialize_payload(&Payload::Rect(result))))
        }
        Payload::Decomposition(_) => solve_decomposition(p, args),
        Payload::Rect(_) => Err(Error::parse("$", "a rectangular matrix has no path problem")),
    }
}

fn solve_decomposition<Q: Builtin>(p: Payload<Q>, args: &SolveArgs) -> Result<Outcome, Error> {
    let blocks = match p {
        Payload::Decomposition(blocks) => blocks,
        Payload::Open(m) => vec![m],
        other => {
            return Err(Error::parse(
                "$",
                format!("expected a decomposition, found a {}", other.kind()),
            ))
        }
    };
    let d = Decomposition::new(blocks)?;
    let report = if args.force_monolithic {
        solve_monolithic(&d)?
    } else {
        solve_chain(&d)?
    };
    let mut notes = vec![format!(
        "strategy: {:?}, {} vertices, {} elimination ops, {} product ops",
        report.strategy, report.total_vertices, report.elimination_ops, report.product_ops
    )];
    if args.verify {
        let other = if args.force_monolithic {
            solve_chain(&d)?
        } else {
            solve_monolithic(&d)?
        };
        if !report.result.approx_eq(&other.result) {
            return Err(Error::VerificationMismatch(
                "compositional and monolithic solutions differ".into(),
            ));
        }
    }
    if let Some(repeats) = args.bench {
        notes.push(bench_text(&bench(&d, repeats)?));
    }
    Ok(Outcome {
        notes,
        ..Outcome::json(serialize_payload(&Payload::Rect(report.result)))
    })
}

fn binary<Q: Builtin>(p: Payload<Q>, other: AnyPayload, op: &str) -> Result<Outcome, Error> {
    let first = expect_open(p)?;
    let second = expect_open(same_quantale::<Q>(other)?)?;
    let result = match op {
        "compose" => first.compose(&second)?,
        _ => first.tensor(&second)?,
    };
    Ok(Outcome::json(serialize_payload(&Payload::Open(result))))
}

fn blackbox_cmd<Q: Builtin>(p: Payload<Q>) -> Result<Outcome, Error> {
    let m = expect_open(p)?;
    Ok(Outcome::json(serialize_payload(&Payload::Rect(solve_blackbox(&m)?))))
}

fn star_cmd<Q: Builtin>(p: Payload<Q>) -> Result<Outcome, Error> {
    let result = match p {
        Payload::Matrix(m) => Payload::Matrix(star_kleene(&m)?),
        Payload::Open(m) => Payload::Open(star_open(&m)?.into_open()),
        other => {
            return Err(Error::parse(
                "$",
                format!("expected a matrix or an open matrix, found a {}", other.kind()),
            ))
        }
    };
    Ok(Outcome::json(serialize_payload(&result)))
}

fn functional_cmd<Q: Builtin>(p: Payload<Q>) -> Result<Outcome, Error> {
    let functional = is_functional(&expect_open(p)?);
    Ok(Outcome {
        summary: Some(functional.to_string()),
        ..Outcome::json(format!("{}\n", json!({ "functional": functional })))
    })
}

fn law_json(q: &str, r: &LawReport) -> Value {
    json!({
        "quantale": q,
        "law": r.law,
        "checked": r.checked,
        "failures": r.failures,
        "first_failure": r.first_failure,
    })
}

fn run_laws<Q: Builtin>(q: &Q, args: &LawArgs) -> Result<Vec<(String, LawReport)>, Error> {
    Ok(full_suite(q, args.samples, args.trials, args.seed)?
        .into_iter()
        .map(|r| (q.id(), r))
        .collect())
}

fn check_laws(ov: Option<&QuantaleKind>, args: &LawArgs) -> Result<Outcome, Error> {
    let kinds = match ov {
        Some(kind) => vec![kind.clone()],
        None => ["minplus", "maxmin", "viterbi", "boolean", "language:ab:3"]
            .iter()
            .map(|id| id.parse().expect("built-in ids parse"))
            .collect(),
    };
    let mut reports = Vec::new();
    for kind in &kinds {
        reports.extend(with_quantale!(make_quantale(kind)?, run_laws(args))?);
    }
    let summary = reports
        .iter()
        .map(|(q, r)| format!("{q:<16} {r}"))
        .collect::<Vec<_>>()
        .join("\n");
    let json = Value::Array(reports.iter().map(|(q, r)| law_json(q, r)).collect());
    Ok(Outcome {
        json: format!("{}\n", serde_json::to_string_pretty(&json).expect("values serialize")),
        summary: Some(summary),
        notes: Vec::new(),
        failed: reports.iter().any(|(_, r)| !r.passed()),
    })
}

fn bench_text(t: &BenchTable) -> String {
    format!(
        "strategy            {:?}\n\
         repeats             {}\n\
         chain median        {:?}\n\
         monolithic median   {:?}\n\
         chain elim ops      {}\n\
         monolithic elim ops {}\n\
         results equal       {}",
        t.strategy,
        t.repeats,
        t.chain_median,
        t.monolithic_median,
        t.chain_elimination_ops,
        t.monolithic_elimination_ops,
        t.results_equal
    )
}

fn bench_cmd<Q: Builtin>(q: &Q, args: &BenchArgs) -> Result<Outcome, Error> {
    let shape = ChainShape {
        blocks: args.blocks,
        block_size: args.block_size,
        boundary: args.boundary,
        density: args.density,
        seed: args.seed,
    };
    if shape.blocks == 0 || shape.boundary > shape.block_size {
        return Err(Error::ShapeMismatch(
            "need at least one block and a boundary no larger than a block".into(),
        ));
    }
    let table = bench(&functional_chain(q, shape)?, args.repeats)?;
    let json = json!({
        "quantale": q.id(),
        "strategy": format!("{:?}", table.strategy),
        "repeats": table.repeats,
        "chain_median_seconds": table.chain_median.as_secs_f64(),
        "monolithic_median_seconds": table.monolithic_median.as_secs_f64(),
        "chain_elimination_ops": table.chain_elimination_ops,
        "monolithic_elimination_ops": table.monolithic_elimination_ops,
        "results_equal": table.results_equal,
    });
    Ok(Outcome {
        json: format!("{}\n", serde_json::to_string_pretty(&json).expect("values serialize")),
        summary: Some(bench_text(&table)),
        notes: Vec::new(),
        failed: false,
    })
}
