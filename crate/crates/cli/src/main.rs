mod commands;
mod published;
mod reproduce;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use report::Format;

/// Tropical matrix algebra and the gossip monoids.
///
/// Indices of gossipers are 0-based. Matrix files use one comma-separated
/// row per line with entries like `3`, `1/2` or `inf`, or the JSON form
/// `{"n": …, "entries": [[…]]}`. Exit status: 0 when every check passes,
/// 2 when a result differs from a published value, 3 when a run stops at
/// a resource limit.
#[derive(Parser)]
#[command(name = "lossy-gossip", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads; defaults to all cores. Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Args)]
struct MatrixArg {
    /// Matrix file (text or JSON).
    #[arg(long)]
    matrix: PathBuf,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    trials: u64,
    /// Seed for the random number generator; required for reproducibility.
    #[arg(long)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Tropical product of two matrices.
    Tropmul {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Kleene star (shortest-path closure) of a nonnegative matrix.
    Kleene(MatrixArg),
    /// Whether a matrix is a metric, with its decomposition into calls.
    MetricCheck(MatrixArg),
    /// A product of lossy calls whose symmetric core is the given connected graph.
    CoreWitness {
        #[arg(long)]
        n: usize,
        /// Edges as `k-l` pairs separated by commas.
        #[arg(long)]
        edges: String,
    },
    /// Irredundancy of a call sequence, or the longest irredundant product for `n`.
    Irredundant {
        #[arg(long)]
        n: usize,
        /// Call pairs `k-l` separated by commas; without it the longest product is searched.
        #[arg(long)]
        calls: Option<String>,
        /// Check the irredundant product with `C(n+1,3)` factors instead.
        #[arg(long)]
        ladder: bool,
        /// Permit the search for `n = 8`.
        #[arg(long)]
        allow_large: bool,
        /// Stop after this many search nodes; the result is then a lower bound.
        #[arg(long)]
        node_limit: Option<u64>,
    },
    /// Enumerates the ordinary gossip monoid: size and length distribution.
    GossipEnum {
        #[arg(long)]
        n: usize,
        /// Permit `n = 8`.
        #[arg(long)]
        allow_large: bool,
        /// Memory budget in bytes for the element store.
        #[arg(long, default_value_t = 4 << 30)]
        memory_budget: u64,
        /// Report the length of the state in this dump file (`n` then `n²` bits) instead.
        #[arg(long)]
        state: Option<PathBuf>,
    },
    /// Longest chain of informative calls: the explicit construction and a random search.
    Pessimal {
        #[arg(long)]
        n: usize,
        /// Random informative call chains to try.
        #[arg(long, default_value_t = 0, requires = "seed")]
        attempts: u64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// The fan of maximal cones on products of lossy calls.
    Fan {
        #[arg(long)]
        n: usize,
        /// Include every cone in the report.
        #[arg(long)]
        with_cones: bool,
    },
    /// Linear spans of full-dimensional cones of products with `k` calls.
    Spans {
        #[arg(long)]
        n: usize,
        /// Number of calls; defaults to `C(n,2)`.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Orbits of the spans under relabelling of the gossipers.
    Orbits {
        #[arg(long)]
        n: usize,
        /// Also identify spans related by transposition.
        #[arg(long)]
        transpose: bool,
    },
    /// Fan check and f-vector, for the fan on products or for cones from a JSON file.
    Fvector {
        #[arg(long, conflicts_with = "cones")]
        n: Option<usize>,
        /// JSON array of cones.
        #[arg(long)]
        cones: Option<PathBuf>,
    },
    /// Multiplies sampled fan points by calls and checks the products stay in the fan.
    ClosureCheck {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        sample: SampleArgs,
    },
    /// Two cones with a common span whose union is not convex.
    PqCheck {
        #[arg(long)]
        seed: u64,
        /// Random point pairs tried when searching for a witness.
        #[arg(long, default_value_t = 20_000)]
        attempts: u64,
    },
    /// Tropical determinant and membership in the tropical special linear group.
    Tdet(MatrixArg),
    /// Samples products of members of the tropical special linear group.
    SlCheck {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        sample: SampleArgs,
    },
    /// Cone of the tropical orthogonal group containing a 2×2 matrix.
    O2Check(MatrixArg),
    /// Tropical orthogonality equations for a 3×3 matrix, and its cone when nonnegative.
    O3Check(MatrixArg),
    /// Matrix realised by a graph with detours.
    Realize {
        /// Graph JSON file.
        #[arg(long)]
        graph: PathBuf,
        /// Reverse all detours first.
        #[arg(long)]
        transpose: bool,
    },
    /// Recomputes every published value and compares.
    ReproducePaper(reproduce::Options),
}

fn run(cli: Cli) -> Result<report::Report> {
    use commands::*;
    match cli.command {
        Command::Tropmul { left, right } => tropmul(&left, &right),
        Command::Kleene(m) => kleene(&m.matrix),
        Command::MetricCheck(m) => metric_check(&m.matrix),
        Command::CoreWitness { n, edges } => core_witness(n, &edges),
        Command::Irredundant { n, calls, ladder, allow_large, node_limit } => {
            irredundant(n, calls.as_deref(), ladder, allow_large, node_limit)
        }
        Command::GossipEnum { n, allow_large, memory_budget, state } => {
            gossip_enum(n, allow_large, memory_budget, state.as_deref())
        }
        Command::Pessimal { n, attempts, seed } => pessimal(n, attempts, seed.unwrap_or(0)),
        Command::Fan { n, with_cones } => fan(n, with_cones),
        Command::Spans { n, k } => spans(n, k),
        Command::Orbits { n, transpose } => orbits(n, transpose),
        Command::Fvector { n, cones } => fvector(n, cones.as_deref()),
        Command::ClosureCheck { n, sample } => closure_check(n, sample.trials, sample.seed),
        Command::PqCheck { seed, attempts } => pq_check(seed, attempts),
        Command::Tdet(m) => tdet(&m.matrix),
        Command::SlCheck { n, sample } => sl_check(n, sample.trials, sample.seed),
        Command::O2Check(m) => o2_check(&m.matrix),
        Command::O3Check(m) => o3_check(&m.matrix),
        Command::Realize { graph, transpose } => realize(&graph, transpose),
        Command::ReproducePaper(opts) => reproduce::run(&opts),
    }
}

fn main() -> ExitCode {
    // Usage errors exit with 1 so that 2 keeps meaning a mismatch.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let (format, output) = (cli.format, cli.output.clone());
    match run(cli).and_then(|r| r.emit(format, output.as_deref()).map(|_| r.status)) {
        Ok(status) => ExitCode::from(status.exit_code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            let resource = matches!(e.downcast_ref(), Some(lossy_gossip::error::Error::MemoryBudget(_)));
            ExitCode::from(if resource { report::Status::ResourceAbort.exit_code() } else { 1 })
        }
    }
}
