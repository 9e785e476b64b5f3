//! `gcnet`: bounds, figure data, constructions and checks for generalized
//! combination networks.

mod commands;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use error::Failure;
use output::Format;

#[derive(Parser, Debug)]
#[command(name = "gcnet", version, about)]
struct Cli {
    /// Worker threads for parallel verification and search.
    #[arg(long, global = true, env = "GCN_THREADS")]
    threads: Option<usize>,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

/// `(h, r, alpha, ell, eps)`. `r` defaults to `alpha` where it does not
/// matter.
#[derive(Args, Debug, Clone)]
pub struct NetArgs {
    #[arg(long)]
    h: u64,
    #[arg(long)]
    r: Option<u64>,
    #[arg(long)]
    alpha: u64,
    #[arg(long)]
    ell: u64,
    #[arg(long)]
    eps: u64,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    t: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Lifted MRD code if it is large enough, random search otherwise.
    Auto,
    Mrd,
    Random,
    Oracle,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Every bound on r_max at one (q, t), with the summary selection.
    Bounds {
        #[command(flatten)]
        net: NetArgs,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Necessary and sufficient thresholds on q^t for t = 1..t-max, plus
    /// the gap bounds.
    Figure {
        #[command(flatten)]
        net: NetArgs,
        #[arg(long, default_value_t = 20)]
        t_max: u64,
    },
    /// Build a (q, t)-linear solution and write it as JSON.
    Construct {
        #[command(flatten)]
        net: NetArgs,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Random-search attempt budget.
        #[arg(long, default_value_t = 10_000)]
        attempts: u64,
        /// Largest code the MRD and oracle methods will build.
        #[arg(long, default_value_t = gcnet::constructor::DEFAULT_CODE_CAP)]
        cap: u64,
    },
    /// Check the rank condition at every receiver of a solution file.
    Verify {
        #[arg(long)]
        solution: PathBuf,
    },
    /// Send a message through a solution and decode at the receivers.
    Simulate {
        #[arg(long)]
        solution: PathBuf,
        /// Comma-separated field elements; random from --seed if omitted.
        #[arg(long, value_delimiter = ',')]
        message: Option<Vec<u32>>,
        /// Receivers beyond this many are sampled with --seed.
        #[arg(long, default_value_t = 10_000)]
        max_receivers: u64,
    },
    /// Exact largest covering code by exhaustive search.
    Oracle {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        delta: u64,
        #[arg(long)]
        alpha: u64,
        #[arg(long)]
        q: u64,
        /// Forbid repeated codewords.
        #[arg(long)]
        no_multiset: bool,
        #[arg(long, default_value_t = gcnet::constructor::DEFAULT_ORACLE_CAP)]
        cap: u64,
        /// Give up after this many search nodes.
        #[arg(long)]
        max_nodes: Option<u64>,
    },
    /// Comparison predicates between the upper bounds and the exact winner,
    /// over q in --qs and t = 1..t-max.
    Compare {
        #[command(flatten)]
        net: NetArgs,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        qs: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        t_max: u64,
    },
}

pub struct Ctx {
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub seed: u64,
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Internal(e.to_string()))?;
    }
    let ctx = Ctx {
        format: cli.format,
        out: cli.out,
        seed: cli.seed,
    };
    match cli.command {
        Command::Bounds { net, field } => commands::bounds(&ctx, &net, &field),
        Command::Figure { net, t_max } => commands::figure(&ctx, &net, t_max),
        Command::Construct {
            net,
            field,
            method,
            attempts,
            cap,
        } => commands::construct(&ctx, &net, &field, method, attempts, cap),
        Command::Verify { solution } => commands::verify(&ctx, &solution),
        Command::Simulate {
            solution,
            message,
            max_receivers,
        } => commands::simulate(&ctx, &solution, message, max_receivers),
        Command::Oracle {
            n,
            k,
            delta,
            alpha,
            q,
            no_multiset,
            cap,
            max_nodes,
        } => commands::oracle(&ctx, [n, k, delta, alpha, q], !no_multiset, cap, max_nodes),
        Command::Compare { net, qs, t_max } => commands::compare(&ctx, &net, &qs, t_max),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gcnet: {e}");
            e.exit_code()
        }
    }
}
