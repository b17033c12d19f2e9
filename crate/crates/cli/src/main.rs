//! `versals`: generate, classify and count versals of hypergraphs, and run
//! the verification suites.
//!
//! Exit status: 0 on success, 1 when a verification finds a counterexample,
//! 2 on usage or input errors.

use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use versals::families::{
    classify, gen_binary_star, gen_c4, gen_cosingletons, gen_singletons, gen_star,
};
use versals::isolation::{min_unique_probability, Probability, ProbabilityMode};
use versals::verifier::{binomial, run_suite, Claim, Scope, SuiteConfig};
use versals::versal::{
    all_versals, free_vertices, null_versal_count, null_versals_of, versals_of, ENUMERATION_CAP,
};
use versals::{parse_hypergraph, Hypergraph, VertexSet};

#[derive(Parser)]
#[command(
    name = "versals",
    version,
    about = "Versals of hypergraphs: enumeration, families and counting bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a named hypergraph in .hg format.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Print the structural family of a hypergraph as JSON.
    Classify {
        /// .hg file, or `-` for standard input.
        file: String,
    },
    /// List versals in canonical order.
    List {
        file: String,
        /// Only this edge.
        #[arg(long)]
        edge: Option<usize>,
        /// Only null versals (disjoint from their edge).
        #[arg(long)]
        null_only: bool,
    },
    /// Per-edge and total counts of versals, null versals and free pairs.
    Count { file: String },
    /// Run a claim over a scope and print the JSON report.
    Verify(VerifyArgs),
    /// Probability that random weights in {1..K} give a unique lightest edge.
    Prob(ProbArgs),
}

#[derive(Subcommand)]
enum GenCommand {
    Singletons {
        #[arg(long)]
        n: usize,
    },
    Cosingletons {
        #[arg(long)]
        n: usize,
    },
    C4,
    Star {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: usize,
    },
    BinaryStar {
        #[arg(long)]
        r: usize,
        /// Size of each of the two stars.
        #[arg(long)]
        s: usize,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// main-theorem, theorem2, theorem7, bounds, lifting, lemma1, lemma3,
    /// lemma4, lemma5, lemma6, versal-properties or isolation.
    claim: String,
    /// Check a single .hg file (or `-`).
    #[arg(long, conflicts_with_all = ["exhaustive", "stars", "samples"])]
    file: Option<String>,
    /// Enumerate every antichain on --n vertices, or with --r every
    /// r-uniform family.
    #[arg(long)]
    exhaustive: bool,
    /// Sweep generated stars with r <= --r-max and size <= --m-max.
    #[arg(long, conflicts_with_all = ["exhaustive", "samples"])]
    stars: bool,
    /// Random plan with this many samples.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random plan draws uniform hypergraphs instead of antichains.
    #[arg(long)]
    uniform: bool,
    /// Universe size (exhaustive), or largest universe size (random).
    #[arg(long)]
    n: Option<usize>,
    /// Smallest universe size for random plans.
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, default_value_t = 1)]
    m_min: usize,
    #[arg(long)]
    m_max: Option<usize>,
    #[arg(long, default_value_t = 5)]
    r_max: usize,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value_t = 20)]
    max_counterexamples: usize,
    /// Report 0 seconds so output is byte-stable.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct ProbArgs {
    file: String,
    #[arg(long)]
    k: u32,
    #[arg(long, conflicts_with = "samples")]
    exact: bool,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

/// A failure that maps to an exit status.
enum Failure {
    Usage(String),
    Counterexample,
}

impl<E: std::fmt::Display> From<E> for Failure
where
    E: Into<versals::Error>,
{
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult = Result<String, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read_hypergraph(path: &str) -> Result<Hypergraph, Failure> {
    let text = if path == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| usage(format!("stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?
    };
    parse_hypergraph(&text).map_err(|e| usage(format!("{path}: {e}")))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn gen(cmd: GenCommand) -> CliResult {
    let h = match cmd {
        GenCommand::Singletons { n } => gen_singletons(n)?,
        GenCommand::Cosingletons { n } => gen_cosingletons(n)?,
        GenCommand::C4 => gen_c4(),
        GenCommand::Star { r, m } => gen_star(r, m)?,
        GenCommand::BinaryStar { r, s } => gen_binary_star(r, s)?,
    };
    Ok(h.to_hg())
}

#[derive(Serialize)]
struct EdgeVersals {
    edge: usize,
    members: VertexSet,
    versals: Vec<VertexSet>,
}

#[derive(Serialize)]
struct Listing {
    n: usize,
    m: usize,
    null_only: bool,
    edges: Vec<EdgeVersals>,
}

fn list(file: &str, edge: Option<usize>, null_only: bool) -> CliResult {
    let h = read_hypergraph(file)?;
    let indices: Vec<usize> = match edge {
        Some(i) => {
            h.edge(i)?;
            vec![i]
        }
        None => (0..h.m()).collect(),
    };
    let mut edges = Vec::with_capacity(indices.len());
    for i in indices {
        let versals = if null_only {
            null_versals_of(&h, i)?
        } else {
            versals_of(&h, i)?
        };
        edges.push(EdgeVersals {
            edge: i,
            members: h.edges()[i],
            versals,
        });
    }
    Ok(json(&Listing {
        n: h.n(),
        m: h.m(),
        null_only,
        edges,
    }))
}

#[derive(Serialize)]
struct EdgeCount {
    edge: usize,
    versals: u64,
    null: u64,
    free: usize,
}

#[derive(Serialize)]
struct Counts {
    n: usize,
    m: usize,
    per_edge: Vec<EdgeCount>,
    total: u64,
    null_total: u64,
    q: usize,
}

fn count(file: &str) -> CliResult {
    let h = read_hypergraph(file)?;
    let census = all_versals(&h, false)?;
    let mut per_edge = Vec::with_capacity(h.m());
    for i in 0..h.m() {
        per_edge.push(EdgeCount {
            edge: i,
            versals: census.per_edge_counts[i],
            null: census.per_edge_null_counts[i],
            free: free_vertices(&h, i)?.len(),
        });
    }
    Ok(json(&Counts {
        n: h.n(),
        m: h.m(),
        q: per_edge.iter().map(|e| e.free).sum(),
        per_edge,
        total: census.total,
        null_total: census.null_total,
    }))
}

fn scope_from(args: &VerifyArgs) -> Result<Scope, Failure> {
    if let Some(file) = &args.file {
        return Ok(Scope::Single {
            instance: read_hypergraph(file)?,
        });
    }
    if args.stars {
        return Ok(Scope::Stars {
            r_max: args.r_max,
            m_max: args.m_max.unwrap_or(6),
        });
    }
    let n = args
        .n
        .ok_or_else(|| usage("--n is required for this scope"))?;
    if let Some(samples) = args.samples {
        let n_min = args.n_min.unwrap_or(if args.uniform { 2 } else { 1 });
        return Ok(if args.uniform {
            Scope::RandomUniform {
                n_min,
                n_max: n,
                samples,
                seed: args.seed,
            }
        } else {
            Scope::RandomAntichains {
                n_min,
                n_max: n,
                samples,
                seed: args.seed,
            }
        });
    }
    if !args.exhaustive {
        return Err(usage(
            "choose a scope: --file, --exhaustive, --stars or --samples",
        ));
    }
    Ok(match args.r {
        Some(r) => Scope::Uniform {
            n,
            r,
            m_min: args.m_min,
            m_max: args.m_max.unwrap_or(binomial(n, r) as usize),
        },
        None => Scope::Antichains { n },
    })
}

fn verify(args: VerifyArgs) -> CliResult {
    let claim: Claim = args.claim.parse()?;
    let scope = scope_from(&args)?;
    let mut config = SuiteConfig::new(claim, scope).jobs(args.jobs);
    config.max_counterexamples = args.max_counterexamples;
    let mut report = run_suite(&config)?;
    if args.no_timing {
        report = report.without_timing();
    }
    let mut out = report.to_json();
    out.push('\n');
    if report.is_success() {
        Ok(out)
    } else {
        // The report still goes to stdout before the failing status.
        print!("{out}");
        Err(Failure::Counterexample)
    }
}

#[derive(Serialize)]
struct ProbOutput {
    k: u32,
    #[serde(flatten)]
    probability: Probability,
    /// |Z(H)|, shown for comparison when the universe is small enough.
    #[serde(skip_serializing_if = "Option::is_none")]
    z_total: Option<u64>,
    z_null: u64,
}

fn prob(args: ProbArgs) -> CliResult {
    let h = read_hypergraph(&args.file)?;
    let mode = match (args.exact, args.samples) {
        (true, _) => ProbabilityMode::Exact,
        (false, Some(samples)) => ProbabilityMode::MonteCarlo {
            samples,
            seed: args.seed,
        },
        (false, None) => return Err(usage("choose --exact or --samples N")),
    };
    let probability = min_unique_probability(&h, args.k, mode, args.jobs)?;
    let z_total = (h.n() <= ENUMERATION_CAP)
        .then(|| all_versals(&h, false).map(|c| c.total))
        .transpose()?;
    Ok(json(&ProbOutput {
        k: args.k,
        probability,
        z_total,
        z_null: null_versal_count(&h),
    }))
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Gen(cmd) => gen(cmd),
        Command::Classify { file } => Ok(json(&classify(&read_hypergraph(&file)?))),
        Command::List {
            file,
            edge,
            null_only,
        } => list(&file, edge, null_only),
        Command::Count { file } => count(&file),
        Command::Verify(args) => verify(args),
        Command::Prob(args) => prob(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Counterexample) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
