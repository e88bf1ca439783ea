//! The `fpcomm` command line: `run`, `gen`, `score`, `bench` and `oracle`.
//!
//! Exit codes: 0 on success, 1 for usage errors, 2 for data errors
//! (unreadable or malformed input, invalid partitions, failed runs).

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::fastfp::{self, EdgeCounting, FastFpParams, Threshold, DEFAULT_THRESHOLD};
use crate::fpgreed::{self, GreedyOptions, SweepOrder};
use crate::graph::{
    bridged_cliques, load_edge_list, ring_of_cliques, Graph, LabelMap, LoadOptions,
};
use crate::oracle::{exhaustive_best_fp, DEFAULT_MAX_N};
use crate::partition_file::{read_partition, write_partition};
use crate::quality::Partition;
use crate::report::{
    median, round4, write_bench_csv, write_run_csv, Algorithm, BenchRow, ExactFp, RunParams,
    RunReport, Scores,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{context}: {source}")]
    Data { context: String, source: Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data { .. } => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

trait Context<T> {
    fn context(self, what: impl FnOnce() -> String) -> CliResult<T>;
}

impl<T, E: Into<Error>> Context<T> for std::result::Result<T, E> {
    fn context(self, what: impl FnOnce() -> String) -> CliResult<T> {
        self.map_err(|e| CliError::Data {
            context: what(),
            source: e.into(),
        })
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "fpcomm",
    version,
    about = "Community detection by maximizing partition performance"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Detect communities in an edge list.
    Run(RunArgs),
    /// Print a synthetic test graph as an edge list.
    Gen(GenArgs),
    /// Score a partition file against a graph.
    Score(ScoreArgs),
    /// Run the algorithms over the datasets of a manifest.
    Bench(BenchArgs),
    /// Exact best partition of a tiny graph by exhaustive search.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmChoice {
    Fpgreed,
    Fastfp,
    Both,
}

impl AlgorithmChoice {
    fn algorithms(self) -> Vec<Algorithm> {
        match self {
            AlgorithmChoice::Fpgreed => vec![Algorithm::Fpgreed],
            AlgorithmChoice::Fastfp => vec![Algorithm::Fastfp],
            AlgorithmChoice::Both => vec![Algorithm::Fpgreed, Algorithm::Fastfp],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OrderChoice {
    #[default]
    Ascending,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountingChoice {
    #[default]
    Unordered,
    Ordered,
}

impl From<CountingChoice> for EdgeCounting {
    fn from(c: CountingChoice) -> Self {
        match c {
            CountingChoice::Unordered => EdgeCounting::Unordered,
            CountingChoice::Ordered => EdgeCounting::Ordered,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Algorithm settings shared by `run` and `bench`.
#[derive(Debug, Clone, Args)]
pub struct AlgorithmArgs {
    /// fastfp candidate-edge weight threshold.
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    pub threshold: u32,
    /// fastfp: count each edge among common neighbors once or twice.
    #[arg(long, value_enum, default_value_t)]
    pub edge_counting: CountingChoice,
    /// fpgreed sweep order.
    #[arg(long, value_enum, default_value_t)]
    pub order: OrderChoice,
    /// Seed for `--order random`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl Default for AlgorithmArgs {
    fn default() -> Self {
        AlgorithmArgs {
            threshold: DEFAULT_THRESHOLD,
            edge_counting: CountingChoice::default(),
            order: OrderChoice::default(),
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Edge list path, or `-` for stdin.
    #[arg(long, short)]
    pub input: PathBuf,
    /// Keep only the largest connected component.
    #[arg(long)]
    pub largest_component: bool,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, short, value_enum, default_value_t = AlgorithmChoice::Fpgreed)]
    pub algorithm: AlgorithmChoice,
    #[command(flatten)]
    pub settings: AlgorithmArgs,
    /// Dataset name for the report; defaults to the input file stem.
    #[arg(long)]
    pub dataset: Option<String>,
    /// Report destination; stdout when absent.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Partition file destination. With `--algorithm both` the algorithm
    /// name is appended: `<path>.fpgreed`, `<path>.fastfp`.
    #[arg(long, short)]
    pub partition_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub topology: Topology,
    /// Destination; stdout when absent.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Topology {
    /// Cliques on a cycle, one edge between neighbors.
    Ring {
        num_cliques: usize,
        clique_size: usize,
    },
    /// Two large and two small cliques joined by four edges.
    Bridged { big: usize, small: usize },
}

#[derive(Debug, Clone, Args)]
pub struct ScoreArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Partition file (`node_id community_id` per line).
    #[arg(long, short)]
    pub partition: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// TOML manifest; dataset paths are relative to it.
    #[arg(long, short)]
    pub manifest: PathBuf,
    /// Dataset rows processed concurrently.
    #[arg(long, short, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Refuse graphs with more nodes than this.
    #[arg(long, default_value_t = DEFAULT_MAX_N)]
    pub max_n: usize,
}

/// Parses arguments, runs the command and maps the outcome to an exit code.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let stdout = io::stdout();
    match execute(&cli.command, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fpcomm: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn execute(command: &Command, stdout: &mut dyn Write) -> CliResult<()> {
    match command {
        Command::Run(args) => {
            let reports = cmd_run(args)?;
            let mut buf = Vec::new();
            match args.format {
                Format::Json if reports.len() == 1 => to_json(&mut buf, &reports[0]),
                Format::Json => to_json(&mut buf, &reports),
                Format::Csv => {
                    write_run_csv(&mut buf, &reports).context(|| "writing report".into())?
                }
            }
            emit(args.out.as_deref(), &buf, stdout)
        }
        Command::Gen(args) => {
            let g = cmd_gen(&args.topology)?;
            let mut buf = Vec::new();
            g.write_edge_list(&mut buf, None)
                .context(|| "writing edge list".into())?;
            emit(args.out.as_deref(), &buf, stdout)
        }
        Command::Score(args) => {
            let scores = cmd_score(args)?;
            let mut buf = Vec::new();
            to_json(&mut buf, &scores);
            emit(None, &buf, stdout)
        }
        Command::Bench(args) => {
            let rows = cmd_bench(args)?;
            let mut buf = Vec::new();
            match args.format {
                Format::Json => to_json(&mut buf, &rows),
                Format::Csv => {
                    write_bench_csv(&mut buf, &rows).context(|| "writing report".into())?
                }
            }
            emit(args.out.as_deref(), &buf, stdout)
        }
        Command::Oracle(args) => {
            let report = cmd_oracle(args)?;
            let mut buf = Vec::new();
            to_json(&mut buf, &report);
            emit(None, &buf, stdout)
        }
    }
}

fn to_json<T: Serialize + ?Sized>(buf: &mut Vec<u8>, value: &T) {
    serde_json::to_writer_pretty(&mut *buf, value).expect("report types serialize");
    buf.push(b'\n');
}

fn emit(path: Option<&Path>, bytes: &[u8], stdout: &mut dyn Write) -> CliResult<()> {
    match path {
        Some(path) => std::fs::write(path, bytes).context(|| format!("writing {}", path.display())),
        None => stdout
            .write_all(bytes)
            .context(|| "writing to stdout".into()),
    }
}

pub fn load_graph(input: &InputArgs) -> CliResult<(Graph, LabelMap)> {
    let options = LoadOptions {
        keep_largest_component: input.largest_component,
    };
    let what = || format!("reading {}", input.input.display());
    if input.input.as_os_str() == "-" {
        load_edge_list(io::stdin().lock(), options).context(what)
    } else {
        let file = File::open(&input.input).context(what)?;
        load_edge_list(BufReader::new(file), options).context(what)
    }
}

fn dataset_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "stdin".into())
}

/// Runs one algorithm and returns the canonical partition, the report
/// parameters and the algorithm wall time.
pub fn run_algorithm(
    g: &Graph,
    algorithm: Algorithm,
    settings: &AlgorithmArgs,
) -> crate::Result<(Partition, RunParams, Duration)> {
    match algorithm {
        Algorithm::Fpgreed => {
            let order = match settings.order {
                OrderChoice::Ascending => SweepOrder::Ascending,
                OrderChoice::Random => SweepOrder::Random {
                    seed: settings.seed,
                },
            };
            let start = Instant::now();
            let (p, _) = fpgreed::run_with(
                g,
                GreedyOptions {
                    order,
                    record_trace: false,
                },
            )?;
            let wall = start.elapsed();
            let params = RunParams {
                order: Some(format!("{:?}", settings.order).to_lowercase()),
                seed: matches!(settings.order, OrderChoice::Random).then_some(settings.seed),
                ..Default::default()
            };
            Ok((p.canonical(g), params, wall))
        }
        Algorithm::Fastfp => {
            let params = FastFpParams {
                threshold: Threshold::new(settings.threshold)?,
                counting: settings.edge_counting.into(),
            };
            let start = Instant::now();
            let (p, _) = fastfp::run(g, params)?;
            let wall = start.elapsed();
            let params = RunParams {
                threshold: Some(settings.threshold),
                edge_counting: Some(format!("{:?}", settings.edge_counting).to_lowercase()),
                ..Default::default()
            };
            Ok((p.canonical(g), params, wall))
        }
    }
}

fn partition_path(base: &Path, algorithm: Algorithm, several: bool) -> PathBuf {
    if several {
        let mut s = base.as_os_str().to_owned();
        s.push(".");
        s.push(algorithm.name());
        PathBuf::from(s)
    } else {
        base.to_owned()
    }
}

/// Loads the graph, runs the selected algorithm(s), writes partition files
/// when requested and returns one report per algorithm.
pub fn cmd_run(args: &RunArgs) -> CliResult<Vec<RunReport>> {
    if args.settings.threshold == 0 {
        return Err(CliError::Usage("--threshold must be at least 1".into()));
    }
    let (g, labels) = load_graph(&args.input)?;
    let dataset = args
        .dataset
        .clone()
        .unwrap_or_else(|| dataset_name(&args.input.input));
    let algorithms = args.algorithm.algorithms();
    let mut reports = Vec::new();
    for &algorithm in &algorithms {
        let (p, params, wall) = run_algorithm(&g, algorithm, &args.settings)
            .context(|| format!("{} on {dataset}", algorithm.name()))?;
        if let Some(base) = &args.partition_out {
            let path = partition_path(base, algorithm, algorithms.len() > 1);
            let file = File::create(&path).context(|| format!("writing {}", path.display()))?;
            write_partition(BufWriter::new(file), &p, &labels)
                .context(|| format!("writing {}", path.display()))?;
        }
        reports.push(
            RunReport::new(&dataset, algorithm, params, &g, &p, wall)
                .context(|| format!("scoring {dataset}"))?,
        );
    }
    Ok(reports)
}

pub fn cmd_gen(topology: &Topology) -> CliResult<Graph> {
    match *topology {
        Topology::Ring {
            num_cliques,
            clique_size,
        } => ring_of_cliques(num_cliques, clique_size),
        Topology::Bridged { big, small } => bridged_cliques(big, small),
    }
    .map_err(|e| CliError::Usage(e.to_string()))
}

pub fn cmd_score(args: &ScoreArgs) -> CliResult<Scores> {
    let (g, labels) = load_graph(&args.input)?;
    let what = || format!("reading {}", args.partition.display());
    let file = File::open(&args.partition).context(what)?;
    let p = read_partition(BufReader::new(file), &g, &labels).context(what)?;
    Scores::compute(&g, &p).context(|| "scoring".into())
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default = "one")]
    pub repetitions: usize,
    #[serde(default = "both")]
    pub algorithms: Vec<Algorithm>,
    #[serde(default = "default_threshold")]
    pub threshold: u32,
    #[serde(default)]
    pub edge_counting: CountingChoice,
    #[serde(default)]
    pub largest_component: bool,
    #[serde(rename = "dataset", default)]
    pub datasets: Vec<ManifestDataset>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestDataset {
    pub name: String,
    pub path: PathBuf,
}

fn one() -> usize {
    1
}

fn both() -> Vec<Algorithm> {
    vec![Algorithm::Fpgreed, Algorithm::Fastfp]
}

fn default_threshold() -> u32 {
    DEFAULT_THRESHOLD
}

pub fn read_manifest(path: &Path) -> CliResult<Manifest> {
    let text = std::fs::read_to_string(path).context(|| format!("reading {}", path.display()))?;
    let manifest: Manifest = toml::from_str(&text)
        .map_err(|e| CliError::Usage(format!("manifest {}: {e}", path.display())))?;
    if manifest.repetitions == 0 {
        return Err(CliError::Usage(
            "manifest: repetitions must be at least 1".into(),
        ));
    }
    if manifest.threshold == 0 {
        return Err(CliError::Usage(
            "manifest: threshold must be at least 1".into(),
        ));
    }
    Ok(manifest)
}

fn bench_dataset(manifest: &Manifest, base: &Path, dataset: &ManifestDataset) -> Vec<BenchRow> {
    let reps = manifest.repetitions;
    let input = InputArgs {
        input: base.join(&dataset.path),
        largest_component: manifest.largest_component,
    };
    let settings = AlgorithmArgs {
        threshold: manifest.threshold,
        edge_counting: manifest.edge_counting,
        ..Default::default()
    };
    let (g, _) = match load_graph(&input) {
        Ok(loaded) => loaded,
        Err(e) => {
            return manifest
                .algorithms
                .iter()
                .map(|&a| BenchRow::failed(&dataset.name, a, reps, e.to_string()))
                .collect()
        }
    };
    manifest
        .algorithms
        .iter()
        .map(|&algorithm| {
            let mut times = Vec::with_capacity(reps);
            let mut last = None;
            for _ in 0..reps {
                match run_algorithm(&g, algorithm, &settings) {
                    Ok((p, _, wall)) => {
                        times.push(wall.as_secs_f64() * 1e3);
                        last = Some(p);
                    }
                    Err(e) => {
                        return BenchRow::failed(&dataset.name, algorithm, reps, e.to_string())
                    }
                }
            }
            let p = last.expect("at least one repetition");
            match Scores::compute(&g, &p) {
                Ok(s) => BenchRow {
                    dataset: dataset.name.clone(),
                    algorithm,
                    status: "ok".into(),
                    error: None,
                    n: Some(g.node_count()),
                    m: Some(g.edge_count()),
                    fp: Some(s.fp),
                    modularity: s.modularity.map(round4),
                    modules: Some(s.modules),
                    repetitions: reps,
                    median_ms: median(&times).map(|t| (t * 1e3).round() / 1e3),
                },
                Err(e) => BenchRow::failed(&dataset.name, algorithm, reps, e.to_string()),
            }
        })
        .collect()
}

/// One row per (dataset, algorithm) in manifest order. Datasets that cannot
/// be loaded produce failed rows; the remaining rows still run.
pub fn cmd_bench(args: &BenchArgs) -> CliResult<Vec<BenchRow>> {
    use rayon::prelude::*;
    if args.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let manifest = read_manifest(&args.manifest)?;
    let base = args.manifest.parent().unwrap_or(Path::new(".")).to_owned();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    let rows: Vec<Vec<BenchRow>> = pool.install(|| {
        manifest
            .datasets
            .par_iter()
            .map(|d| bench_dataset(&manifest, &base, d))
            .collect()
    });
    Ok(rows.into_iter().flatten().collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub n: usize,
    pub m: usize,
    pub best_fp: f64,
    pub best_fp_exact: ExactFp,
    pub enumerated: u64,
    /// Maximizing partitions as lists of communities of external node ids.
    pub best_partitions: Vec<Vec<Vec<i64>>>,
}

pub fn cmd_oracle(args: &OracleArgs) -> CliResult<OracleReport> {
    let (g, labels) = load_graph(&args.input)?;
    let r = exhaustive_best_fp(&g, args.max_n).context(|| "oracle".into())?;
    Ok(OracleReport {
        n: g.node_count(),
        m: g.edge_count(),
        best_fp: round4(r.best_fp.value()),
        best_fp_exact: r.best_fp.into(),
        enumerated: r.enumerated,
        best_partitions: r
            .best_partitions()
            .into_iter()
            .map(|blocks| {
                blocks
                    .into_iter()
                    .map(|b| b.into_iter().map(|u| labels.external(u)).collect())
                    .collect()
            })
            .collect(),
    })
}
