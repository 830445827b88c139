//! `msekr`: bounds, enumeration, compression, exact search and the
//! acceptance table from the command line.
//!
//! Exit status: 0 success, 1 identity failure, 2 usage or input error,
//! 3 budget exhausted.

mod span;
mod table;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use msekr::compression::down_compress;
use msekr::search::{
    max_t_intersecting, oracle_max_t_intersecting, verify_theorem, Outcome, SearchConfig,
    SearchResult, VerifyReport,
};
use msekr::{enumerate_multisets, BoundReport, Error, Family};
use serde_json::json;

use span::Span;

pub const DEFAULT_SEED: u64 = 0x6d73_656b_7200_0001;

#[derive(Parser)]
#[command(name = "msekr", version, about = "Intersecting families of multisets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Grid {
    /// Ground set size(s): `A`, `A..B` or `A..=B`, inclusive.
    #[arg(long)]
    n: Span,
    /// Multiset cardinality range.
    #[arg(long)]
    k: Span,
    /// Intersection size range.
    #[arg(long)]
    t: Span,
}

impl Grid {
    /// Points with `1 <= t <= k` and `n >= 1`. Invalid points are an error
    /// when the grid is a single point, otherwise skipped.
    fn points(
        &self,
        keep: impl Fn(u32, u32, u32) -> bool,
    ) -> Result<Vec<(u32, u32, u32)>, Failure> {
        let single = self.n.is_single() && self.k.is_single() && self.t.is_single();
        let mut out = Vec::new();
        for n in self.n.iter() {
            for k in self.k.iter() {
                for t in self.t.iter() {
                    if n >= 1 && t >= 1 && t <= k && keep(n, k, t) {
                        out.push((n, k, t));
                    } else if single {
                        return Err(Failure::Usage(format!(
                            "(n,k,t) = ({n},{k},{t}) is outside the supported range"
                        )));
                    }
                }
            }
        }
        if out.is_empty() {
            return Err(Failure::Usage("the grid contains no valid (n,k,t)".into()));
        }
        Ok(out)
    }
}

#[derive(Args)]
struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Budget {
    /// Abort the exact search after this many branch-and-bound nodes
    /// (exit 3).
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Refuse instances with more candidate multisets than this.
    #[arg(long, default_value_t = 4096)]
    max_vertices: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Star and lifted-AK bounds over a grid.
    ///
    /// CSV columns: n,k,t,star,ak_set,i_star. JSON adds `proven` and the
    /// per-i family sizes; big integers are decimal strings.
    Bound {
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        output: Output,
    },
    /// All k-multisets of [n] as a family file (header `n=<n> k=<k>`,
    /// one comma-separated multiplicity vector per line).
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        /// Height cap: no multiplicity above this.
        #[arg(long)]
        cap: Option<u32>,
        #[command(flatten)]
        output: Output,
    },
    /// Down-compress a t-intersecting family file.
    ///
    /// CSV output is the compressed family file; the trace (columns
    /// step,i,j,potential,size,kernel) goes to --trace.
    Compress {
        /// Family file to read.
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        t: u32,
        /// Write the step trace as CSV here.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Exact maximum t-intersecting families.
    ///
    /// CSV columns: n,k,t,cap,max_size,method,nodes_explored. JSON adds the
    /// witness family.
    Search {
        #[command(flatten)]
        grid: Grid,
        /// Height cap.
        #[arg(long)]
        cap: Option<u32>,
        #[command(flatten)]
        budget: Budget,
        /// Branch on one column-permutation orbit representative at the root.
        #[arg(long)]
        symmetry: bool,
        /// Start from an empty incumbent instead of the best construction.
        #[arg(long)]
        no_seed: bool,
        /// Stop as soon as the lifted AK value is reached (trusts the bound).
        #[arg(long)]
        theorem_cutoff: bool,
        /// Use the bound-free maximal-clique enumeration (at most 128
        /// candidates).
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Compare the exact maximum with the lifted AK value (n >= 2k - t).
    ///
    /// Prints `max=<m> bound=<b> SHARP|BELOW_BOUND|EXCEEDS_BOUND` per point
    /// (prefixed by the point on grids); exits 1 unless every point is
    /// sharp. CSV columns with --format csv: n,k,t,max_size,bound,outcome,
    /// stable,kernel,nodes_explored.
    Verify {
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        budget: Budget,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute the acceptance grids as one CSV with a pass column.
    ///
    /// Columns: criterion,case,expected,observed,pass. Exits 1 and echoes
    /// the failing rows to stderr if any identity fails.
    Table {
        /// Seed for the random maximal-family corpus.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Number of corpus families.
        #[arg(long, default_value_t = 200)]
        corpus: usize,
        /// Largest number of candidate multisets searched exhaustively.
        #[arg(long, default_value_t = 500)]
        search_limit: usize,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug)]
pub enum Failure {
    Identity(String),
    Usage(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Identity(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Identity(m) | Failure::Usage(m) | Failure::Budget(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded(_) => Failure::Budget(e.to_string()),
            Error::CertificationFailed(_) => Failure::Identity(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        }
        None => {
            io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json value serializes");
    s.push('\n');
    s
}

fn rows(family: &Family) -> Vec<Vec<u32>> {
    family.iter().map(|m| m.as_slice().to_vec()).collect()
}

fn search_config(budget: &Budget) -> SearchConfig {
    SearchConfig {
        max_vertices: budget.max_vertices,
        max_nodes: budget.budget_nodes,
        ..Default::default()
    }
}

fn run_bound(grid: &Grid, output: &Output) -> Result<(), Failure> {
    let reports = grid
        .points(|_, _, _| true)?
        .into_iter()
        .map(|(n, k, t)| BoundReport::compute(n, k, t))
        .collect::<msekr::Result<Vec<_>>>()?;
    let text = match output.format {
        Format::Csv => {
            let mut s = format!("{}\n", BoundReport::CSV_HEADER);
            for r in &reports {
                s.push_str(&r.csv_row());
                s.push('\n');
            }
            s
        }
        Format::Json => pretty(&serde_json::to_value(&reports).expect("reports serialize")),
    };
    emit(&output.out, &text)
}

fn run_enumerate(n: usize, k: u32, cap: Option<u32>, output: &Output) -> Result<(), Failure> {
    let mut family = match cap {
        Some(c) => Family::with_cap(n, k, c)?,
        None => Family::new(n, k)?,
    };
    for m in enumerate_multisets(n, k, cap) {
        family.insert(m)?;
    }
    let text = match output.format {
        Format::Csv => family.to_text(),
        Format::Json => pretty(&json!({ "n": n, "k": k, "cap": cap, "members": rows(&family) })),
    };
    emit(&output.out, &text)
}

fn run_compress(
    input: &PathBuf,
    t: u32,
    trace: &Option<PathBuf>,
    output: &Output,
) -> Result<(), Failure> {
    let text = fs::read_to_string(input)
        .map_err(|e| Failure::Usage(format!("{}: {e}", input.display())))?;
    let family: Family = text.parse()?;
    let result = down_compress(&family, t)?;
    eprintln!(
        "{} members, {} changing steps, potential {} -> {}",
        family.len(),
        result.trace.len(),
        result.initial_potential,
        result
            .trace
            .last()
            .map_or(result.initial_potential.clone(), |s| s.potential.clone())
    );
    if let Some(path) = trace {
        let mut csv = format!("{}\n", msekr::compression::TraceStep::CSV_HEADER);
        for step in &result.trace {
            csv.push_str(&step.csv_row());
            csv.push('\n');
        }
        fs::write(path, csv).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    let text = match output.format {
        Format::Csv => result.family.to_text(),
        Format::Json => pretty(&json!({
            "n": family.n(),
            "k": family.k(),
            "t": t,
            "initial_potential": result.initial_potential.to_string(),
            "trace": result.trace,
            "members": rows(&result.family),
        })),
    };
    emit(&output.out, &text)
}

#[allow(clippy::too_many_arguments)]
fn run_search(
    grid: &Grid,
    cap: Option<u32>,
    budget: &Budget,
    symmetry: bool,
    no_seed: bool,
    theorem_cutoff: bool,
    oracle: bool,
    output: &Output,
) -> Result<(), Failure> {
    let config = SearchConfig {
        symmetry,
        seed_constructions: !no_seed,
        theorem_cutoff,
        ..search_config(budget)
    };
    let mut results: Vec<SearchResult> = Vec::new();
    for (n, k, t) in grid.points(|_, _, _| true)? {
        let r = if oracle {
            oracle_max_t_intersecting(n as usize, k, t, cap, budget.budget_nodes)?
        } else {
            max_t_intersecting(n as usize, k, t, cap, &config)?
        };
        eprintln!("({n},{k},{t}) solved in {:.3?}", r.elapsed);
        results.push(r);
    }
    let text = match output.format {
        Format::Csv => {
            let mut s = format!("{}\n", SearchResult::CSV_HEADER);
            for r in &results {
                s.push_str(&r.csv_row());
                s.push('\n');
            }
            s
        }
        Format::Json => pretty(&serde_json::to_value(&results).expect("results serialize")),
    };
    emit(&output.out, &text)
}

fn run_verify(
    grid: &Grid,
    budget: &Budget,
    format: Option<Format>,
    out: &Option<PathBuf>,
) -> Result<(), Failure> {
    let points = grid.points(|n, k, t| n + t >= 2 * k)?;
    let labelled = points.len() > 1;
    let config = search_config(budget);
    let reports = points
        .into_iter()
        .map(|(n, k, t)| verify_theorem(n as usize, k, t, &config))
        .collect::<msekr::Result<Vec<_>>>()?;
    let text = match format {
        None => reports
            .iter()
            .map(|r| {
                if labelled {
                    format!("n={} k={} t={} {r}\n", r.n, r.k, r.t)
                } else {
                    format!("{r}\n")
                }
            })
            .collect(),
        Some(Format::Csv) => {
            let mut s = format!("{}\n", VerifyReport::CSV_HEADER);
            for r in &reports {
                s.push_str(&r.csv_row());
                s.push('\n');
            }
            s
        }
        Some(Format::Json) => pretty(&serde_json::to_value(&reports).expect("reports serialize")),
    };
    emit(out, &text)?;
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| r.outcome != Outcome::Sharp)
        .map(|r| format!("({},{},{}): {r}", r.n, r.k, r.t))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Identity(format!(
            "not sharp at {}",
            failed.join(", ")
        )))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Bound { grid, output } => run_bound(grid, output),
        Command::Enumerate { n, k, cap, output } => run_enumerate(*n, *k, *cap, output),
        Command::Compress {
            input,
            t,
            trace,
            output,
        } => run_compress(input, *t, trace, output),
        Command::Search {
            grid,
            cap,
            budget,
            symmetry,
            no_seed,
            theorem_cutoff,
            oracle,
            output,
        } => run_search(
            grid,
            *cap,
            budget,
            *symmetry,
            *no_seed,
            *theorem_cutoff,
            *oracle,
            output,
        ),
        Command::Verify {
            grid,
            budget,
            format,
            out,
        } => run_verify(grid, budget, *format, out),
        Command::Table {
            seed,
            corpus,
            search_limit,
            budget,
            output,
        } => {
            let rows = table::build(*seed, *corpus, *search_limit, &search_config(budget))?;
            let text = match output.format {
                Format::Csv => table::to_csv(&rows),
                Format::Json => pretty(&serde_json::to_value(&rows).expect("rows serialize")),
            };
            emit(&output.out, &text)?;
            let failing: Vec<&table::Row> = rows.iter().filter(|r| !r.pass).collect();
            if failing.is_empty() {
                Ok(())
            } else {
                for row in &failing {
                    eprintln!("{}", row.csv());
                }
                Err(Failure::Identity(format!(
                    "{} table rows failed",
                    failing.len()
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
