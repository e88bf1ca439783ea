//! Run and benchmark reports (JSON and CSV).

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::quality::{fp, modularity, FpScore, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Fpgreed,
    Fastfp,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Fpgreed => "fpgreed",
            Algorithm::Fastfp => "fastfp",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_counting: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactFp {
    pub correct: u64,
    pub total: u64,
}

impl From<FpScore> for ExactFp {
    fn from(s: FpScore) -> Self {
        ExactFp {
            correct: s.correct,
            total: s.total,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeCount {
    pub size: usize,
    pub count: usize,
}

/// Scores of a partition as printed by `score` and embedded in run reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scores {
    /// Rounded to 4 decimal places.
    pub fp: f64,
    pub fp_exact: ExactFp,
    /// `None` for graphs without edges.
    pub modularity: Option<f64>,
    pub modules: usize,
}

impl Scores {
    pub fn compute(g: &Graph, p: &Partition) -> Result<Scores> {
        let exact = fp(g, p)?;
        let q = match modularity(g, p, 1.0) {
            Ok(q) => Some(q),
            Err(Error::NoEdges) => None,
            Err(e) => return Err(e),
        };
        Ok(Scores {
            fp: round4(exact.value()),
            fp_exact: exact.into(),
            modularity: q,
            modules: p.community_count(),
        })
    }
}

pub fn round4(x: f64) -> f64 {
    (x * 1e4).round() / 1e4
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub dataset: String,
    pub algorithm: Algorithm,
    pub params: RunParams,
    pub n: usize,
    pub m: usize,
    #[serde(flatten)]
    pub scores: Scores,
    pub size_histogram: Vec<SizeCount>,
    /// Algorithm wall time only; parsing and scoring are excluded.
    pub wall_ms: f64,
}

impl RunReport {
    pub fn new(
        dataset: &str,
        algorithm: Algorithm,
        params: RunParams,
        g: &Graph,
        p: &Partition,
        wall: std::time::Duration,
    ) -> Result<RunReport> {
        Ok(RunReport {
            dataset: dataset.to_owned(),
            algorithm,
            params,
            n: g.node_count(),
            m: g.edge_count(),
            scores: Scores::compute(g, p)?,
            size_histogram: size_histogram(p),
            wall_ms: wall.as_secs_f64() * 1e3,
        })
    }
}

pub fn size_histogram(p: &Partition) -> Vec<SizeCount> {
    let mut counts = BTreeMap::new();
    for c in p.community_ids() {
        *counts.entry(p.size(c)).or_insert(0) += 1;
    }
    counts
        .into_iter()
        .map(|(size, count)| SizeCount { size, count })
        .collect()
}

#[derive(Serialize)]
struct RunRow<'a> {
    dataset: &'a str,
    algorithm: &'a str,
    threshold: Option<u32>,
    edge_counting: Option<&'a str>,
    order: Option<&'a str>,
    seed: Option<u64>,
    n: usize,
    m: usize,
    fp: f64,
    fp_correct: u64,
    fp_total: u64,
    modularity: Option<f64>,
    modules: usize,
    size_histogram: String,
    wall_ms: f64,
}

/// One CSV row per report; the size histogram is packed as `size:count`
/// pairs separated by spaces.
pub fn write_run_csv<W: Write>(out: W, reports: &[RunReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        let hist: Vec<String> = r
            .size_histogram
            .iter()
            .map(|h| format!("{}:{}", h.size, h.count))
            .collect();
        w.serialize(RunRow {
            dataset: &r.dataset,
            algorithm: r.algorithm.name(),
            threshold: r.params.threshold,
            edge_counting: r.params.edge_counting.as_deref(),
            order: r.params.order.as_deref(),
            seed: r.params.seed,
            n: r.n,
            m: r.m,
            fp: r.scores.fp,
            fp_correct: r.scores.fp_exact.correct,
            fp_total: r.scores.fp_exact.total,
            modularity: r.scores.modularity,
            modules: r.scores.modules,
            size_histogram: hist.join(" "),
            wall_ms: r.wall_ms,
        })
        .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub dataset: String,
    pub algorithm: Algorithm,
    /// `"ok"` or `"failed"`.
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub fp: Option<f64>,
    pub modularity: Option<f64>,
    pub modules: Option<usize>,
    pub repetitions: usize,
    /// Median algorithm wall time over the repetitions.
    pub median_ms: Option<f64>,
}

impl BenchRow {
    pub fn failed(
        dataset: &str,
        algorithm: Algorithm,
        repetitions: usize,
        error: String,
    ) -> BenchRow {
        BenchRow {
            dataset: dataset.to_owned(),
            algorithm,
            status: "failed".into(),
            error: Some(error),
            n: None,
            m: None,
            fp: None,
            modularity: None,
            modules: None,
            repetitions,
            median_ms: None,
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }
}

#[derive(Serialize)]
struct BenchCsvRow<'a> {
    dataset: &'a str,
    algorithm: &'a str,
    status: &'a str,
    n: Option<usize>,
    m: Option<usize>,
    fp: Option<f64>,
    modularity: Option<f64>,
    modules: Option<usize>,
    repetitions: usize,
    median_ms: Option<f64>,
    error: Option<&'a str>,
}

pub fn write_bench_csv<W: Write>(out: W, rows: &[BenchRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(BenchCsvRow {
            dataset: &r.dataset,
            algorithm: r.algorithm.name(),
            status: &r.status,
            n: r.n,
            m: r.m,
            fp: r.fp,
            modularity: r.modularity,
            modules: r.modules,
            repetitions: r.repetitions,
            median_ms: r.median_ms,
            error: r.error.as_deref(),
        })
        .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::InvalidArgument(format!("csv: {other:?}")),
    }
}

/// Median of the samples; the mean of the two middle values for even counts.
pub fn median(samples: &[f64]) -> Option<f64> {
    if samples.is_empty() {
        return None;
    }
    let mut v = samples.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    Some(if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / 2.0
    })
}
