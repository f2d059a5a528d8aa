mod commands;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
#[cfg(test)]
use clap::CommandFactory;

use indsub_core::count::DEFAULT_BUDGET;
use indsub_core::hereditary::DEFAULT_BOUND;

#[derive(Parser)]
#[command(name = "indsub", version, about = "Exact induced-subgraph counting and hardness diagnostics")]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,

    /// Emit a human-readable report instead of JSON.
    #[arg(long, global = true)]
    text: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct PropertyK {
    /// Built-in name, `h-free:<g6>,..`, `not:P`, `inv:P`, or `truth-table:PATH`.
    #[arg(long)]
    pub property: String,
    #[arg(long)]
    pub k: usize,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Basis,
    Brute,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum OracleArg {
    Brute,
    Basis,
}

#[derive(Subcommand)]
enum Command {
    /// Isomorphism classes of k-vertex graphs.
    Catalog {
        #[arg(long)]
        k: usize,
        /// Overrides INDSUB_CACHE_DIR.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// f-vector, h-vector and vanishing data of a property at k.
    Spectrum(PropertyK),
    /// Homomorphism-basis coefficients of a property at k.
    Homvector(PropertyK),
    /// Count k-vertex induced subgraphs with the property.
    Count {
        #[command(flatten)]
        pk: PropertyK,
        /// Host graph in graph6 or edge-list form.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "basis")]
        method: MethodArg,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Per-k hardness evidence.
    Diagnose {
        #[arg(long)]
        property: String,
        #[arg(long)]
        kmax: usize,
    },
    /// Critical-edge evidence for a forbidden induced subgraph.
    Critical {
        /// File whose first graph is the forbidden graph H.
        #[arg(long)]
        forbidden: PathBuf,
        /// Defaults to the H-free property for every graph in the file.
        #[arg(long)]
        property: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
    /// Count independent sets of a bipartite host through the critical-edge reduction.
    ReduceDemo {
        #[arg(long)]
        bipartite: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        forbidden: PathBuf,
        #[arg(long)]
        property: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
        #[arg(long, value_enum, default_value = "brute")]
        oracle: OracleArg,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Quick run of the library's invariant checks.
    Selftest,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = commands::set_threads(n) {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match cli.command {
        Command::Catalog { k, cache_dir } => commands::catalog(k, cache_dir),
        Command::Spectrum(pk) => commands::spectrum(&pk),
        Command::Homvector(pk) => commands::homvector(&pk),
        Command::Count {
            pk,
            graph,
            method,
            budget,
        } => commands::count(&pk, &graph, method, budget),
        Command::Diagnose { property, kmax } => commands::diagnose(&property, kmax),
        Command::Critical {
            forbidden,
            property,
            bound,
        } => commands::critical(&forbidden, property.as_deref(), bound),
        Command::ReduceDemo {
            bipartite,
            k,
            forbidden,
            property,
            bound,
            oracle,
            budget,
        } => commands::reduce_demo(&bipartite, k, &forbidden, property.as_deref(), bound, oracle, budget),
        Command::Selftest => selftest::run(),
    };
    match result {
        Ok(out) => {
            if cli.text {
                print!("{}", out.text);
            } else {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("reports serialize"));
            }
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 2 for internal-consistency failures, 1 for everything the caller can fix.
fn exit_code(e: &indsub_core::Error) -> u8 {
    if e.is_consistency() {
        2
    } else {
        1
    }
}
