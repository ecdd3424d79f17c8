//! The `gemkit` command line.
//!
//! Machine-readable output goes to stdout, progress to stderr. Exit codes:
//! 0 success, 1 usage, 2 invalid input, 3 incomplete (checkpoint written),
//! 4 internal invariant violation.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use gemkit::enumerate::{
    classify, conjecture_probe, enumerate, finiteness_check, finiteness_sweep, free_energy_counts, Catalog,
    Checkpoint, CountMode, EnumerationError, EnumerationFilter, EnumerationParams, Outcome, SearchOptions,
};
use gemkit::graph::read_graphs;
use gemkit::moves::{find_dipoles, reduce, reduce_exhaustive};
use gemkit::par::{with_threads, Execution};
use gemkit::tensor::{expansion_histogram, quartic_invariant, TensorError, TraceInvariant};
use gemkit::topology::{gurau_degree, gurau_degree_recursive, invariant_report};
use gemkit::triangulation::{from_triangulation, Pseudocomplex, TriangulationError};
use gemkit::{CanonMode, ColoredGraph, GraphError, HalfInteger, TopologyError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCOMPLETE: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "gemkit", version, about = "Topology of edge-colored graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full invariant report: genera, G-degree, Euler characteristic, profile
    Inspect { file: PathBuf },
    /// G-degree by the direct and recursive formulas
    Degree { file: PathBuf },
    /// List dipoles with their properness
    Dipoles {
        file: PathBuf,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Greedy reduction by proper dipole eliminations
    Reduce {
        file: PathBuf,
        /// Write the move log here as JSON lines
        #[arg(long)]
        log: Option<PathBuf>,
        /// Search all elimination sequences (orders up to 8) if greedy gets stuck
        #[arg(long)]
        exhaustive: bool,
    },
    /// Enumerate connected graphs up to isomorphism
    Enumerate(EnumerateArgs),
    /// Bucket a catalog by G-degree, bipartiteness and boundary
    Classify {
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Check the order bound on one (G-degree, residue count) cell of a catalog
    Finiteness {
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long)]
        gdegree: HalfInteger,
        #[arg(long)]
        hat_sum: usize,
    },
    /// Group singular d = 3 entries and compare against the boundary formula
    Probe {
        #[arg(long)]
        catalog: PathBuf,
    },
    /// G-degree histogram over all Wick pairings of a trace invariant
    Wick {
        /// A JSON file, or `q1` for the quartic invariant
        #[arg(long)]
        invariant: String,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Gems of a simplicial pseudocomplex
    FromTriangulation {
        file: PathBuf,
        /// Cone off boundary components first
        #[arg(long)]
        cap: bool,
    },
    /// Connected graphs of order 2p per G-degree
    Counts {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, value_enum, default_value_t = CountArg::Canonical)]
        mode: CountArg,
        /// Include non-bipartite graphs
        #[arg(long)]
        all: bool,
    },
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    max_order: usize,
    #[arg(long)]
    bipartite: bool,
    #[arg(long, conflicts_with = "bipartite")]
    non_bipartite: bool,
    #[arg(long)]
    contracted: bool,
    #[arg(long = "no-2-dipoles")]
    no_2_dipoles: bool,
    #[arg(long)]
    singular: bool,
    #[arg(long)]
    max_gdegree: Option<HalfInteger>,
    #[arg(long)]
    membership_gs: bool,
    #[arg(long, value_enum, default_value_t = ModeArg::ColorFree)]
    mode: ModeArg,
    /// Catalog file (JSON lines); stdout if omitted
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    resume: Option<PathBuf>,
    /// Where to write progress when the budget runs out
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long)]
    budget_secs: Option<f64>,
    #[arg(long)]
    threads: Option<usize>,
    /// Run on the calling thread only
    #[arg(long)]
    sequential: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    ColorFree,
    ColorFixed,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CountArg {
    Labeled,
    Canonical,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Invariant(String),
    #[error("enumeration incomplete; checkpoint written to {}", .0.display())]
    Incomplete(PathBuf),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
            CliError::Incomplete(_) => EXIT_INCOMPLETE,
            CliError::Invariant(_) => EXIT_INVARIANT,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<TopologyError> for CliError {
    fn from(e: TopologyError) -> Self {
        match e {
            TopologyError::IntegralityViolation { .. } => CliError::Invariant(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<EnumerationError> for CliError {
    fn from(e: EnumerationError) -> Self {
        match e {
            EnumerationError::InconsistentFilter(_) | EnumerationError::InvalidParams(_) => CliError::Usage(e.to_string()),
            EnumerationError::Topology(t) => t.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<TensorError> for CliError {
    fn from(e: TensorError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<TriangulationError> for CliError {
    fn from(e: TriangulationError) -> Self {
        CliError::Input(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match command {
        Command::Inspect { file } => {
            for g in load_graphs(&file)? {
                writeln!(out, "{}", json(&invariant_report(&g)?))?;
            }
        }
        Command::Degree { file } => {
            for g in load_graphs(&file)? {
                let direct = gurau_degree(&g)?;
                let recursive = gurau_degree_recursive(&g)?;
                if direct != recursive {
                    return Err(CliError::Invariant(format!("direct G-degree {direct} != recursive {recursive}")));
                }
                writeln!(out, "{direct}")?;
            }
        }
        Command::Dipoles { file, r } => {
            for g in load_graphs(&file)? {
                for dip in find_dipoles(&g).into_iter().filter(|dip| r.is_none_or(|r| dip.r() == r)) {
                    writeln!(out, "{}", json(&dip))?;
                }
            }
        }
        Command::Reduce { file, log, exhaustive } => {
            let mut log_lines = String::new();
            for g in load_graphs(&file)? {
                let mut red = reduce(&g);
                if exhaustive && red.graph.order() > 2 {
                    if let Some(found) = reduce_exhaustive(&g, 8) {
                        red = found;
                    }
                }
                for m in &red.moves {
                    log_lines.push_str(&json(m));
                    log_lines.push('\n');
                }
                let summary = serde_json::json!({
                    "certificate": red.certificate,
                    "order": red.graph.order(),
                    "moves": red.moves.len(),
                    "graph": red.graph,
                });
                writeln!(out, "{summary}")?;
            }
            if let Some(path) = log {
                fs::write(path, log_lines)?;
            }
        }
        Command::Enumerate(args) => run_enumerate(args, out, err)?,
        Command::Classify { catalog, out: path, format } => {
            let table = classify(&load_catalog(&catalog)?);
            if !table.identity_violations.is_empty() {
                return Err(CliError::Invariant(format!(
                    "{} entries break the boundary identity",
                    table.identity_violations.len()
                )));
            }
            let body = match format {
                Format::Csv => table.to_csv(),
                Format::Json => table.to_json() + "\n",
            };
            emit(path.as_deref(), &body, out)?;
        }
        Command::Finiteness { catalog, gdegree, hat_sum } => {
            let catalog = load_catalog(&catalog)?;
            let report = finiteness_check(&catalog, gdegree, hat_sum)?;
            writeln!(out, "{}", json(&report))?;
            let sweep = finiteness_sweep(&catalog);
            if !report.violations.is_empty() || !sweep.is_empty() {
                return Err(CliError::Invariant(format!("{} entries exceed the order bound", sweep.len())));
            }
        }
        Command::Probe { catalog } => {
            let report = conjecture_probe(&load_catalog(&catalog)?)?;
            writeln!(out, "{}", json(&report))?;
        }
        Command::Wick { invariant, d } => {
            let inv = if invariant == "q1" {
                let d = d.ok_or_else(|| CliError::Usage("--d is required with --invariant q1".into()))?;
                if d < 2 {
                    return Err(CliError::Usage("the quartic invariant needs d >= 2".into()));
                }
                quartic_invariant(d)
            } else {
                let inv = TraceInvariant::from_json(&read(Path::new(&invariant))?)?;
                if d.is_some_and(|d| d != inv.rank()) {
                    return Err(CliError::Input(format!("invariant has rank {}, --d says {}", inv.rank(), d.unwrap())));
                }
                inv
            };
            let hist = expansion_histogram(&inv, Execution::Sequential)?;
            writeln!(out, "{}", json(&hist))?;
        }
        Command::FromTriangulation { file, cap } => {
            let mut k = Pseudocomplex::from_json(&read(&file)?)?;
            if cap {
                k = k.cap_boundary()?;
            }
            for g in from_triangulation(&k)? {
                writeln!(out, "{}", g.to_json())?;
            }
        }
        Command::Counts { d, p, mode, all } => {
            let mode = match mode {
                CountArg::Labeled => CountMode::Labeled,
                CountArg::Canonical => CountMode::Canonical,
            };
            let counts = free_energy_counts(d, p, !all, mode, Execution::Sequential)?;
            writeln!(out, "{}", json(&counts))?;
        }
    }
    Ok(())
}

fn run_enumerate(args: EnumerateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let filter = EnumerationFilter {
        bipartite_only: args.bipartite,
        non_bipartite_only: args.non_bipartite,
        contracted_only: args.contracted,
        no_2_dipoles: args.no_2_dipoles,
        require_singular: args.singular,
        max_gdegree: args.max_gdegree,
        membership_gs_only: args.membership_gs,
    };
    let mode = match args.mode {
        ModeArg::ColorFree => CanonMode::ColorFree,
        ModeArg::ColorFixed => CanonMode::ColorFixed,
    };
    let params = EnumerationParams::new(args.d, args.max_order).with_filter(filter).with_mode(mode);
    let resume = match &args.resume {
        Some(path) => Some(Checkpoint::from_json(&read(path)?)?),
        None => None,
    };
    let budget = match args.budget_secs {
        Some(s) if !(s >= 0.0 && s.is_finite()) => return Err(CliError::Usage(format!("bad budget {s}"))),
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    let execution = if args.sequential { Execution::Sequential } else { Execution::Parallel };
    let options = SearchOptions { execution, budget, resume };
    let started = Instant::now();
    let outcome = with_threads(args.threads, || enumerate(&params, &options))?;
    match outcome {
        Outcome::Complete(catalog) => {
            writeln!(
                err,
                "enumerated {} classes (d = {}, order <= {}) in {:.2} s",
                catalog.len(),
                args.d,
                args.max_order,
                started.elapsed().as_secs_f64()
            )?;
            emit(args.out.as_deref(), &catalog.to_jsonl(), out)?;
            Ok(())
        }
        Outcome::Incomplete(ck) => {
            let path = args
                .checkpoint
                .or_else(|| args.out.as_ref().map(|o| o.with_extension("ckpt.json")))
                .unwrap_or_else(|| PathBuf::from("enumerate.ckpt.json"));
            fs::write(&path, ck.to_json())?;
            writeln!(err, "finished {} of {} work items", ck.completed.len(), ck.total_items)?;
            Err(CliError::Incomplete(path))
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output types serialize")
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_graphs(path: &Path) -> Result<Vec<ColoredGraph>> {
    let graphs = read_graphs(&read(path)?)?;
    if graphs.is_empty() {
        return Err(CliError::Input(format!("{}: no graphs", path.display())));
    }
    Ok(graphs)
}

fn load_catalog(path: &Path) -> Result<Catalog> {
    Ok(Catalog::from_jsonl(&read(path)?)?)
}

fn emit(path: Option<&Path>, body: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, body)?,
        None => out.write_all(body.as_bytes())?,
    }
    Ok(())
}
