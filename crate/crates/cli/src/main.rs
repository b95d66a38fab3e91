mod commands;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use domroots::rational::{parse_rational, Rational};
use domroots::Error;

#[derive(Parser, Debug)]
#[command(name = "domroots", version, about = "Domination polynomials and their certified real roots")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Enclosure width, as an exact rational ("1e-9", "1/1000").
    #[arg(long, global = true, default_value = "1e-9", value_parser = positive_rational)]
    tol: Rational,

    /// Worker threads for parallel sweeps.
    #[arg(long, global = true, env = "DOMROOTS_WORKERS", value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Domination polynomial of a graph.
    Poly {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Certified real roots.
    Roots {
        #[command(flatten)]
        input: GraphInput,
        /// Closed search window LO,HI; defaults to [-B, 0] for a root bound B.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Graph with a domination root within eps of z.
    Witness {
        #[arg(short = 'z', long, allow_hyphen_values = true, value_parser = rational)]
        z: Rational,
        #[arg(short = 'e', long = "eps", value_parser = rational)]
        eps: Rational,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Sweeps over all graphs of one order.
    Atlas {
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::All)]
        mode: Mode,
        /// graph6 file for `--mode corpus`.
        #[arg(long, required_if_eq("mode", "corpus"))]
        corpus: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Report::Cloud)]
        report: Report,
        /// Largest order enumerated exhaustively.
        #[arg(long, default_value_t = domroots::atlas::ALL_LABELED_MAX_ORDER)]
        cap: usize,
        /// Skip the floating pass.
        #[arg(long)]
        exact: bool,
        /// Sample size for `--report audit`.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Certified star roots r_1..r_K with gaps and asymptotic errors.
    StarRoots { k_max: usize },
    /// D(G[K_m]) = D(G, (1+x)^m - 1).
    Compose {
        #[command(flatten)]
        input: GraphInput,
        #[arg(short = 'm', long)]
        m: usize,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GraphInput {
    /// Graph in graph6 format.
    #[arg(long)]
    graph6: Option<String>,
    /// Named family: star:k, kbip:k,l, complete:n, kkk:k, k2l:l, empty:n.
    #[arg(long)]
    family: Option<String>,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    #[arg(long)]
    max_m: Option<usize>,
    #[arg(long)]
    max_param: Option<usize>,
    #[arg(long)]
    max_degree: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Brute,
    Inex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    All,
    Dedup,
    Corpus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Report {
    /// One row per graph and real root.
    Cloud,
    /// Smallest root for each order 1..=n.
    Table,
    /// Star roots against n / ln n for 3..=n.
    Growth,
    /// Floating path against exact isolation on random graphs of order <= n.
    Audit,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn positive_rational(s: &str) -> Result<Rational, String> {
    let q = rational(s)?;
    if q > Rational::from_integer(0.into()) {
        Ok(q)
    } else {
        Err("must be positive".into())
    }
}

/// 0 success, 2 usage or parse, 3 capacity or budget, 4 invariant.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Domain(_) | Error::EndpointIsRoot(_) | Error::Io(_) => 2,
        Error::Capacity { .. } | Error::BudgetExhausted(_) => 3,
        Error::Invariant(_) => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = commands::run(&cli, &mut out).and_then(|()| out.flush().map_err(Error::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("domroots: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
