//! `encell`: enumerate cells, compute exact homology, run the check suites
//! and export chain complexes. Every command prints one JSON document.

mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use encell::xi::Bound;

#[derive(Parser, Debug)]
#[command(name = "encell", version, about = "Cellular models of the complexity filtration of E-infinity operads")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Complexity bound, or `inf` (then `--trunc` is required). Defaults to 2.
    #[arg(long = "n", global = true)]
    pub n_arg: Option<Bound>,
    /// Largest cell dimension kept when `--n inf`.
    #[arg(long, global = true)]
    pub trunc: Option<usize>,
    /// Arity. Defaults to 2.
    #[arg(long = "k", global = true)]
    pub k_arg: Option<usize>,
    /// Target dimension of the diagram model.
    #[arg(long, global = true, default_value_t = 0)]
    pub s: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of random cases, or `all` for the suite's exhaustive default.
    #[arg(long, global = true)]
    pub cases: Option<Cases>,
    /// Write the JSON document to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

impl Global {
    pub fn n(&self) -> Bound {
        self.n_arg.unwrap_or(Bound::Finite(2))
    }

    pub fn k(&self) -> usize {
        self.k_arg.unwrap_or(2)
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cases {
    All,
    Count(usize),
}

impl std::str::FromStr for Cases {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(Cases::All);
        }
        s.parse().map(Cases::Count).map_err(|_| format!("expected a count or `all`, got {s:?}"))
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// The diagram model.
    Xi,
    /// The nerve of the poset of pairwise bounds and orders.
    Berger,
    /// A bundled simplicial set, chosen with `--name`.
    Fixture,
    /// A chain complex read from `--input`.
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingArg {
    Z,
    Z2,
    Z3,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the cells of the diagram model by dimension.
    Cells,
    /// Integral homology of a model.
    Homology {
        #[arg(long, value_enum, default_value_t = Model::Xi)]
        model: Model,
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Chain counts and homology of the nerve of the poset.
    Nerve,
    /// Run a verification suite; exits nonzero on any failure.
    Check {
        /// Suite name, or `all`.
        #[arg(long)]
        suite: String,
    },
    /// Write the chain complex of a model in the shared JSON schema.
    Export {
        #[arg(long, value_enum, default_value_t = Model::Xi)]
        model: Model,
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Cup and join products of random cochains on a bundled space, with the
    /// identities relating them.
    CochainDemo {
        #[arg(long, default_value = "rp2")]
        name: String,
        #[arg(long, value_enum, default_value_t = RingArg::Z)]
        ring: RingArg,
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long, default_value_t = 1)]
        q: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let g = &cli.global;
    let result = match &cli.command {
        Command::Cells => commands::cells(g),
        Command::Homology { model, name, input } => commands::homology(g, *model, name.as_deref(), input.as_deref()),
        Command::Nerve => commands::nerve(g),
        Command::Check { suite } => commands::check(g, suite),
        Command::Export { model, name, input } => commands::export(g, *model, name.as_deref(), input.as_deref()),
        Command::CochainDemo { name, ring, p, q } => commands::cochain_demo(g, name, *ring, *p, *q),
    };
    match result.and_then(|(doc, ok)| commands::emit(g, &doc).map(|_| ok)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
