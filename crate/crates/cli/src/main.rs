//! `normlab`: evaluate and verify invariant length functions on finite groups.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 property violation,
//! 3 capacity exceeded.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use normlab::group::DEFAULT_CAP;

use commands::{Ctx, SweepOptions};
use output::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] normlab::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(normlab::Error::Capacity { .. }) => 3,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "normlab", version, about = "Invariant length functions on finite groups")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Largest group order to enumerate (default: NORMLAB_CAP, else 10^7).
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Tolerance for axiom checks.
    #[arg(long, global = true, default_value_t = normlab::norms::TOL)]
    tol: f64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, default_value_t = 0x5EED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Norm values of one element, or of all elements.
    Norm {
        group: String,
        norm: String,
        /// Element literal, or `all`.
        #[arg(default_value = "all")]
        element: String,
    },
    /// Pseudo-length axioms and invariance for a norm.
    Axioms { group: String, norm: String },
    /// Analysis over a family prefix: `<family.json> <analysis>` or
    /// `<rule> <range> <norm> <analysis>`. Analyses: discreteness,
    /// small-norm:θ, kernel, witness:ε, asymptotic, axioms.
    Sweep {
        #[arg(num_args = 2..=4, required = true)]
        args: Vec<String>,
        /// Field size for matrix families.
        #[arg(long)]
        q: Option<u32>,
        /// Normal subgroup spec per index (A, derived, center, psl, sl, ...).
        #[arg(long)]
        subgroup: Option<String>,
        /// `tail:k` or `principal:i` (default: tail over the second half).
        #[arg(long)]
        filter: Option<String>,
        /// First index of the discreteness window.
        #[arg(long)]
        window: Option<usize>,
        /// Random sequences for small-norm and kernel.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Witness elements, one literal for all indices or one per index, `;`-separated.
        #[arg(long)]
        elements: Option<String>,
        /// Constant for the covering bound (default: computed from the family).
        #[arg(long)]
        ls_constant: Option<f64>,
        /// Second norm for asymptotic comparison.
        #[arg(long)]
        against: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        constant: f64,
        #[arg(long, default_value_t = 0)]
        n0: usize,
        /// Compare `l1^m <= c l2` instead of `l1 <= c l2`.
        #[arg(long)]
        poly: Option<u32>,
    },
    /// Covering exponent of the class of an element.
    Covering { group: String, element: String },
    /// Conjugacy graph for distinguished classes given by `;`-separated literals.
    Graph { group: String, delta: String },
    /// Cancelation norm of a word (letters 1-based, negative for inverses).
    Cancel {
        group: String,
        /// `;`-separated element literals.
        alphabet: String,
        word: String,
        /// Also compare with `l_Delta` on every element.
        #[arg(long)]
        delta: Option<String>,
    },
    /// Weakly sofic norm construction from a JSON instance.
    WsBuild { instance: PathBuf },
    /// Check an approximation witness given as JSON.
    VerifyApprox { witness: PathBuf },
    /// Check a local embedding (or a separation witness) given as JSON.
    VerifyLef { witness: PathBuf },
}

fn cap_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var("NORMLAB_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("NORMLAB_CAP must be a positive integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let cap = match cli.cap {
        Some(c) => c,
        None => cap_from_env()?.unwrap_or(DEFAULT_CAP),
    };
    let ctx = Ctx {
        cap,
        tol: cli.tol,
        seed: cli.seed,
    };
    let mut mirror = false;
    let report = match &cli.command {
        Command::Norm { group, norm, element } => commands::norm(&ctx, group, norm, element)?,
        Command::Axioms { group, norm } => commands::axioms(&ctx, group, norm)?,
        Command::Sweep {
            args,
            q,
            subgroup,
            filter,
            window,
            samples,
            elements,
            ls_constant,
            against,
            constant,
            n0,
            poly,
        } => {
            mirror = true;
            let opts = SweepOptions {
                q: *q,
                subgroup: subgroup.clone(),
                filter: filter.clone(),
                window: *window,
                samples: *samples,
                elements: elements.clone(),
                ls_constant: *ls_constant,
                against: against.clone(),
                constant: *constant,
                n0: *n0,
                poly: *poly,
            };
            commands::sweep(&ctx, args, &opts)?
        }
        Command::Covering { group, element } => commands::covering(&ctx, group, element)?,
        Command::Graph { group, delta } => commands::graph(&ctx, group, delta)?,
        Command::Cancel {
            group,
            alphabet,
            word,
            delta,
        } => commands::cancel(&ctx, group, alphabet, word, delta.as_deref())?,
        Command::WsBuild { instance } => commands::ws_build(&ctx, instance)?,
        Command::VerifyApprox { witness } => commands::verify_approx(&ctx, witness)?,
        Command::VerifyLef { witness } => commands::verify_lef(&ctx, witness)?,
    };
    output::emit(&report.value, cli.format, cli.out.as_deref(), mirror)?;
    Ok(!report.violation)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
