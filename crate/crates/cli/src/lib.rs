//! Command-line front end: sequence registry, argument parsing, and text/JSON
//! rendering of every result type.

mod error;
pub mod render;
pub mod sequence;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use loggf::primality::is_prime;
use loggf::witness::GenericWitness;
use loggf::{
    compositae_dp, corollary_sum, log_superposition, scan_pseudoprimes, theorem_sum, BigRat,
    Verdict, WitnessTest,
};

pub use error::CliError;
pub use sequence::{SequenceKind, SequenceSpec};

pub const DEFAULT_ORDER: usize = 64;

#[derive(Parser, Debug)]
#[command(
    name = "loggf",
    version,
    about = "Exact logarithmic generating functions and compositeness witnesses"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Worker threads for `scan` (0 = one per core).
    #[arg(long, default_value_t = 0, global = true)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TestKind {
    Fermat2,
    Lucas,
    CentralBinomial,
    /// n·g(n) − f(1)ⁿ for the series given by --seq.
    Generic,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the compositae triangle F^Δ(n,k).
    Compositae {
        #[arg(long)]
        seq: SequenceKind,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Coefficients g(n) of ln(1/(1-F(x))) and the integers n·g(n).
    Loggf {
        #[arg(long)]
        seq: SequenceKind,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Σ_k (n/k)·F^Δ(n,k) and its prime-only counterpart.
    Theorem {
        #[arg(long)]
        seq: SequenceKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Run one witness at one n (exit 1 when compositeness is witnessed).
    Witness {
        #[arg(long, value_enum)]
        test: Option<TestKind>,
        #[arg(long)]
        n: u64,
        /// Series for the generic witness.
        #[arg(long)]
        seq: Option<SequenceKind>,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Exhaustively list pseudoprimes of a witness in [lo, hi].
    Scan {
        #[arg(long, value_enum)]
        test: Option<TestKind>,
        #[arg(long, default_value_t = 2)]
        lo: u64,
        #[arg(long)]
        hi: u64,
        #[arg(long)]
        seq: Option<SequenceKind>,
    },
}

/// Echo of the parsed inputs in JSON output.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Input {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seq: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub test: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lo: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hi: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub command: String,
    pub input: Input,
    pub result: T,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremResult {
    pub n: usize,
    /// Σ_{k=1}^{n} (n/k)·F^Δ(n,k).
    pub theorem_sum: BigRat,
    pub integral: bool,
    /// Σ_{k=1}^{n-1} F^Δ(n,k)/k.
    pub corollary_sum: BigRat,
    pub corollary_integral: bool,
    pub n_is_prime: bool,
}

/// Rendered command output and the process exit status.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub stdout: String,
    pub exit_code: u8,
}

fn resolve_order(order: Option<usize>, needed: usize) -> Result<usize, CliError> {
    match order {
        Some(o) if o < needed => Err(CliError::Usage(format!(
            "--order {o} is smaller than the largest n requested ({needed})"
        ))),
        Some(o) => Ok(o),
        None => Ok(DEFAULT_ORDER.max(needed)),
    }
}

fn emit<T: Serialize>(
    format: Format,
    command: &str,
    input: Input,
    result: &T,
    text: impl FnOnce(&T) -> String,
) -> String {
    match format {
        Format::Text => text(result),
        Format::Json => {
            let envelope = Envelope {
                command: command.to_string(),
                input,
                result,
            };
            let mut s = serde_json::to_string_pretty(&envelope).expect("results serialize");
            s.push('\n');
            s
        }
    }
}

fn witness_test(
    test: Option<TestKind>,
    seq: Option<&SequenceKind>,
    max_n: u64,
    order: Option<usize>,
) -> Result<WitnessTest, CliError> {
    let test = match (test, seq) {
        (Some(t), _) => t,
        (None, Some(_)) => TestKind::Generic,
        (None, None) => return Err(CliError::Usage("--test or --seq is required".into())),
    };
    if test != TestKind::Generic && seq.is_some() {
        return Err(CliError::Usage(
            "--seq only applies to the generic witness".into(),
        ));
    }
    Ok(match test {
        TestKind::Fermat2 => WitnessTest::Fermat2,
        TestKind::Lucas => WitnessTest::Lucas,
        TestKind::CentralBinomial => WitnessTest::central_binomial(),
        TestKind::Generic => {
            let kind = seq.ok_or_else(|| CliError::Usage("generic witness needs --seq".into()))?;
            let max_n =
                usize::try_from(max_n).map_err(|_| CliError::Usage("n too large".into()))?;
            let order = resolve_order(order, max_n)?;
            let f = SequenceSpec::new(kind.clone(), order).materialize()?;
            WitnessTest::Generic(GenericWitness::new(kind.to_string(), &f, max_n)?)
        }
    })
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    let format = cli.format;
    let ok = |stdout: String| Outcome {
        stdout,
        exit_code: 0,
    };
    match cli.command {
        Command::Compositae { seq, order } => {
            let order = resolve_order(order, 1)?;
            let f = SequenceSpec::new(seq.clone(), order).materialize()?;
            let table = compositae_dp(&f, order)?;
            let input = Input {
                seq: Some(seq.to_string()),
                order: Some(order),
                ..Input::default()
            };
            Ok(ok(emit(
                format,
                "compositae",
                input,
                &table,
                render::compositae,
            )))
        }
        Command::Loggf { seq, order } => {
            let order = resolve_order(order, 1)?;
            let f = SequenceSpec::new(seq.clone(), order).materialize()?;
            let ls = log_superposition(&f, order)?;
            let input = Input {
                seq: Some(seq.to_string()),
                order: Some(order),
                ..Input::default()
            };
            Ok(ok(emit(
                format,
                "loggf",
                input,
                &ls,
                render::log_superposition,
            )))
        }
        Command::Theorem { seq, n, order } => {
            if n == 0 {
                return Err(CliError::Usage("--n must be positive".into()));
            }
            let order = resolve_order(order, n)?;
            let f = SequenceSpec::new(seq.clone(), order).materialize()?;
            let theorem = theorem_sum(&f, n)?;
            let corollary = corollary_sum(&f, n)?;
            let result = TheoremResult {
                n,
                integral: theorem.is_integer(),
                theorem_sum: theorem,
                corollary_integral: corollary.is_integer(),
                corollary_sum: corollary,
                n_is_prime: is_prime(n as u64),
            };
            let input = Input {
                seq: Some(seq.to_string()),
                order: Some(order),
                n: Some(n as u64),
                ..Input::default()
            };
            Ok(ok(emit(format, "theorem", input, &result, render::theorem)))
        }
        Command::Witness {
            test,
            n,
            seq,
            order,
        } => {
            let witness = witness_test(test, seq.as_ref(), n, order)?;
            let report = witness.check(n)?;
            let exit_code = match report.verdict {
                Verdict::Passes => 0,
                Verdict::CompositeWitnessed => 1,
            };
            let input = Input {
                seq: seq.map(|s| s.to_string()),
                n: Some(n),
                test: Some(witness.id().to_string()),
                ..Input::default()
            };
            let stdout = emit(format, "witness", input, &report, render::witness);
            Ok(Outcome { stdout, exit_code })
        }
        Command::Scan { test, lo, hi, seq } => {
            let witness = witness_test(test, seq.as_ref(), hi, None)?;
            let result = scan_pseudoprimes(&witness, lo, hi, cli.threads)?;
            let input = Input {
                seq: seq.map(|s| s.to_string()),
                test: Some(witness.id().to_string()),
                lo: Some(lo),
                hi: Some(hi),
                threads: Some(cli.threads),
                ..Input::default()
            };
            Ok(ok(emit(format, "scan", input, &result, render::scan)))
        }
    }
}
