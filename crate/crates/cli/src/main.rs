//! `nbkc`: construct, check and search for neighborhood-balanced colorings.
//!
//! Exit status: 0 on success, 1 when the answer is negative (a refusal
//! with its rule, `UNSAT`, or an exhausted budget), 2 on usage errors and
//! malformed input files.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "nbkc", version, about = "Neighborhood-balanced graph colorings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    First,
    Canonical,
    Count,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Cartesian,
    Direct,
    Strong,
    Lexicographic,
}

#[derive(Subcommand)]
enum Family {
    /// Cycle C_M (2 colors).
    Cycle { m: usize },
    /// Complete multipartite graph with comma-separated part sizes.
    Multipartite { parts: String },
    /// Complete graph K_N; always refused.
    Complete { n: usize },
    /// Circulant C_N(a_1,..,a_s) with comma-separated connection values.
    Circulant {
        n: usize,
        connections: String,
        /// Color by residue mod k instead of the arithmetic-progression rule.
        #[arg(long)]
        residue: bool,
    },
    /// Hamming graph H(D, k).
    Hamming { d: usize },
    /// Hypercube Q_D (2 colors).
    Hypercube { d: usize },
}

#[derive(Subcommand)]
enum Command {
    /// Build a family member with a balanced coloring.
    Construct {
        #[command(subcommand)]
        family: Family,
        #[arg(short = 'k', global = true)]
        k: Option<usize>,
        /// Output prefix; writes PREFIX.graph and PREFIX.coloring.
        #[arg(short, long, global = true)]
        output: Option<String>,
    },
    /// Check that a coloring is balanced.
    Verify {
        graph: PathBuf,
        coloring: PathBuf,
        /// Use closed neighborhoods N[v].
        #[arg(long)]
        closed: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Apply the necessary conditions.
    Analyze {
        graph: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Search for a balanced coloring.
    Solve {
        graph: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long, value_enum, default_value = "first")]
        mode: Mode,
        /// Maximum number of branching decisions.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Precolor a vertex, as VERTEX=COLOR; repeatable.
        #[arg(long = "fix", value_name = "V=C")]
        fixed: Vec<String>,
        /// Coloring output path; printed to stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Product of two graphs with the transferred coloring.
    Product {
        #[arg(long, value_enum)]
        kind: Kind,
        g: PathBuf,
        h: PathBuf,
        #[arg(long)]
        cg: Option<PathBuf>,
        #[arg(long)]
        ch: Option<PathBuf>,
        #[arg(short, long)]
        output: String,
    },
    /// Join G + H of two equally-classed balanced colorings.
    Join {
        g: PathBuf,
        cg: PathBuf,
        h: PathBuf,
        ch: PathBuf,
        #[arg(short, long)]
        output: String,
    },
    /// Embed a graph as an induced subgraph of a balanced host.
    Embed {
        graph: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(short, long)]
        output: String,
    },
    /// Add 2k - 1 vertices around the rainbow set U and its partner set V.
    VertexAdd {
        graph: PathBuf,
        coloring: PathBuf,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(short, long)]
        output: String,
    },
    /// Union of copies glued along a vertex set.
    Union {
        /// Base graph; omit with --cycle.
        graph: Option<PathBuf>,
        #[arg(long)]
        set: String,
        #[arg(long)]
        copies: usize,
        /// Use C_M as the base graph.
        #[arg(long)]
        cycle: Option<usize>,
        /// Balanced coloring of the base graph (independent glue sets).
        #[arg(long)]
        coloring: Option<PathBuf>,
        /// Color count for the congruence test on dependent glue sets.
        #[arg(short)]
        k: Option<usize>,
        #[arg(short, long)]
        output: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Compile an equal-sum-subsets instance to a coloring instance.
    Reduce {
        /// Comma-separated multiset.
        #[arg(long)]
        ess: String,
        #[arg(short)]
        k: usize,
        /// Graph output path; roles go next to it with extension .roles.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Read a partition off a balanced coloring of a reduced instance.
    Decode {
        graph: PathBuf,
        coloring: PathBuf,
        /// Role file; defaults to the graph path with extension .roles.
        #[arg(long)]
        roles: Option<PathBuf>,
    },
    /// Graphviz rendering.
    ExportDot {
        graph: PathBuf,
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long)]
        roles: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// DIMACS CNF for external SAT solvers.
    ExportCnf {
        graph: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            e.report();
            ExitCode::from(e.code())
        }
    }
}
