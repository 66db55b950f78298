//! `jmtrace`: element arithmetic, central elements, verification suites and
//! braid invariants.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use jmtrace::coxeter::CoxeterType;
use jmtrace::hecke::parse_element;
use jmtrace::jmtower::{central_element, symbolic_algebra, CentralCache, CentralElementSpec, Family, ParamChoice};
use jmtrace::links::{homfly, annular_invariant, parse_batch, BraidWord, Invariant, Normalization};
use jmtrace::suites::{run_suite, Suite, SuiteConfig};
use jmtrace::{Error, ExtScalar};

// Writes to stdout, ignoring errors such as a closed pipe.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout().lock(), $($t)*);
    }};
}

macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "jmtrace", version, about = "Hecke algebras of types A, B, D, Markov traces and braid invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Zip,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NormArg {
    Closed,
    Reduced,
}

impl From<NormArg> for Normalization {
    fn from(n: NormArg) -> Self {
        match n {
            NormArg::Closed => Normalization::Closed,
            NormArg::Reduced => Normalization::Reduced,
        }
    }
}

#[derive(Args)]
struct Common {
    /// Coxeter type: A, B or D.
    #[arg(long = "type", value_parser = parse_type)]
    ty: Option<CoxeterType>,
    #[arg(long)]
    rank: Option<usize>,
    /// Unequal parameters `v0`, `v` in type B.
    #[arg(long)]
    unequal: bool,
    #[arg(long, value_enum, default_value = "exact")]
    mode: Mode,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Random cases per statement.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    trials: Option<u64>,
    /// Directory for persisted central elements.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

impl Common {
    fn params(&self, ty: CoxeterType) -> ParamChoice {
        if self.unequal && ty == CoxeterType::B {
            ParamChoice::Unequal
        } else {
            ParamChoice::Equal
        }
    }

    fn exact_only(&self, cmd: &str) -> Result<(), Error> {
        if self.mode == Mode::Zip {
            return Err(Error::Domain(format!("{cmd} computes exactly; --mode zip applies to verify")));
        }
        Ok(())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate element expressions such as `T[1] * T[1]` or `pair(T[1], inv(T[1]))`.
    Element {
        #[command(flatten)]
        common: Common,
        /// Put `--` before expressions that start with `-`.
        #[arg(required = true)]
        exprs: Vec<String>,
    },
    /// Print a central element: full-twist, zeta, beta, delta, e<k>, eprime<k>.
    Central {
        family: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite; exits with status 1 on any failure.
    Verify {
        /// One of pairing, serre, jm, lemma-T, markov-zeta, markov-beta,
        /// markov-delta, property-B, property-D, geometric-B, geometric-D,
        /// eprime, affine-rel, links.
        suite: String,
        #[command(flatten)]
        common: Common,
        /// Random points per statement in zip mode.
        #[arg(long, default_value_t = 3)]
        points: usize,
        /// Allow ranks above the default budget.
        #[arg(long)]
        no_budget: bool,
    },
    /// Invariants of braid closures, from words or a batch file.
    Invariant {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        strands: Option<usize>,
        #[arg(long, value_enum)]
        normalization: Option<NormArg>,
        /// Batch file with a `strands=<n> type=<A|B>` header.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Put `--` before words that start with `-`.
        words: Vec<String>,
    },
}

fn parse_type(s: &str) -> Result<CoxeterType, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` when a verification failed.
fn run(cmd: Command) -> Result<bool, Error> {
    let common = match &cmd {
        Command::Element { common, .. }
        | Command::Central { common, .. }
        | Command::Verify { common, .. }
        | Command::Invariant { common, .. } => common,
    };
    if let Some(dir) = &common.cache_dir {
        CentralCache::init_global(dir)?;
    }
    match cmd {
        Command::Element { common, exprs } => element(&common, &exprs),
        Command::Central { family, common } => central(&family, &common),
        Command::Verify { suite, common, points, no_budget } => verify(&suite, &common, points, no_budget),
        Command::Invariant { common, strands, normalization, file, words } => {
            invariant(&common, strands, normalization.map(Into::into), file, &words)
        }
    }
}

fn element(common: &Common, exprs: &[String]) -> Result<bool, Error> {
    common.exact_only("element")?;
    let ty = common.ty.unwrap_or(CoxeterType::A);
    let alg = symbolic_algebra(ty, common.rank.unwrap_or(3), common.params(ty))?;
    for e in exprs {
        let h = parse_element(&alg, e)?;
        match common.format {
            Format::Text => outln!("{h}"),
            Format::Records => outln!("{}", json!({ "expr": e, "element": h.to_record() })),
        }
    }
    Ok(true)
}

fn default_type(family: Family) -> CoxeterType {
    match family {
        Family::Beta => CoxeterType::B,
        Family::Delta | Family::EPrimeJ(_) => CoxeterType::D,
        _ => CoxeterType::A,
    }
}

fn central(family: &str, common: &Common) -> Result<bool, Error> {
    common.exact_only("central")?;
    let family: Family = family.parse()?;
    let ty = common.ty.unwrap_or_else(|| default_type(family));
    let spec = CentralElementSpec::new(family, ty, common.rank.unwrap_or(2), common.params(ty))?;
    let h = central_element(&spec)?;
    let is_central = h.is_central();
    match common.format {
        Format::Text => {
            outln!("{h}");
            outln!("central: {is_central}");
        }
        Format::Records => {
            outln!("{}", json!({ "key": spec.key(), "central": is_central, "element": h.to_record() }))
        }
    }
    Ok(true)
}

fn verify(suite: &str, common: &Common, points: usize, no_budget: bool) -> Result<bool, Error> {
    let suite: Suite = suite.parse()?;
    let cfg = SuiteConfig {
        ty: common.ty,
        rank: common.rank,
        unequal: common.unequal,
        zip: common.mode == Mode::Zip,
        seed: common.seed,
        trials: common.trials.map(|t| t as usize),
        points,
        unbounded: no_budget,
    };
    let report = run_suite(suite, &cfg)?;
    match common.format {
        Format::Text => outln!("suite {suite}\n{report}"),
        Format::Records => out!("{}", report.to_json_lines()),
    }
    Ok(report.passed())
}

fn evaluate(b: &BraidWord) -> Result<Invariant<ExtScalar>, Error> {
    match b.ty() {
        CoxeterType::B => annular_invariant(b),
        _ => homfly(b),
    }
}

fn invariant(
    common: &Common,
    strands: Option<usize>,
    norm: Option<Normalization>,
    file: Option<PathBuf>,
    words: &[String],
) -> Result<bool, Error> {
    common.exact_only("invariant")?;
    let braids = match file {
        Some(path) => {
            if !words.is_empty() {
                return Err(Error::Domain("give either --file or words".into()));
            }
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Domain(format!("{}: {e}", path.display())))?;
            parse_batch(&text)?
        }
        None => {
            let strands = strands.ok_or_else(|| Error::Domain("--strands is required with words".into()))?;
            let ty = common.ty.unwrap_or(CoxeterType::A);
            let words: Vec<&str> = if words.is_empty() { vec![""] } else { words.iter().map(|s| s.as_str()).collect() };
            words.iter().map(|w| BraidWord::parse(w, ty, strands)).collect::<Result<_, _>>()?
        }
    };
    let values: Vec<Invariant<ExtScalar>> = braids.par_iter().map(evaluate).collect::<Result<_, _>>()?;
    let single = braids.len() == 1;
    for (b, v) in braids.iter().zip(&values) {
        match (common.format, norm) {
            (Format::Records, _) => {
                let mut rec = json!({ "word": b.to_string(), "type": b.ty(), "strands": b.strands() });
                if norm != Some(Normalization::Reduced) {
                    rec["closed"] = json!(v.closed.to_string());
                }
                if norm != Some(Normalization::Closed) {
                    rec["reduced"] = json!(v.reduced.to_string());
                }
                outln!("{rec}");
            }
            (Format::Text, Some(n)) if single => outln!("{}", v.get(n)),
            (Format::Text, Some(n)) => outln!("{b}\t{}", v.get(n)),
            (Format::Text, None) if single => outln!("{v}"),
            (Format::Text, None) => outln!("{b}\t{}\t{}", v.closed, v.reduced),
        }
    }
    Ok(true)
}
