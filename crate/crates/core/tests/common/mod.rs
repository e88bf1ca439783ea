#![allow(dead_code)]

use std::path::PathBuf;

use fpcomm::graph::{load_edge_list, LoadOptions};
use fpcomm::Graph;
use rand::Rng;

pub fn data_path(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(file)
}

/// Loads a dataset from `data/`, explaining how to obtain it when absent.
pub fn load_dataset(file: &str) -> Result<Graph, String> {
    let path = data_path(file);
    let f = std::fs::File::open(&path).map_err(|_| {
        format!("data/{file} missing (not vendored; run scripts/fetch_datasets.sh)")
    })?;
    load_edge_list(std::io::BufReader::new(f), LoadOptions::default())
        .map(|(g, _)| g)
        .map_err(|e| format!("data/{file}: {e}"))
}

/// Dense adjacency matrix, independent of `Graph`.
pub struct Dense {
    pub n: usize,
    adj: Vec<bool>,
}

impl Dense {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![false; n * n];
        for &(u, v) in edges {
            if u != v {
                adj[u * n + v] = true;
                adj[v * n + u] = true;
            }
        }
        Dense { n, adj }
    }

    pub fn edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    /// Correctly classified pairs, counted pair by pair.
    pub fn correct_pairs(&self, labels: &[usize]) -> u64 {
        let mut correct = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if (labels[u] == labels[v]) == self.edge(u, v) {
                    correct += 1;
                }
            }
        }
        correct
    }
}

pub fn random_edges<R: Rng>(rng: &mut R, n: usize, density: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(density) {
                edges.push((u, v));
            }
        }
    }
    edges
}

pub fn random_labels<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let k = rng.random_range(1..=n);
    (0..n).map(|_| rng.random_range(0..k)).collect()
}

/// Two K4s (nodes 0..4 and 4..8) joined by nine cross edges.
pub fn two_k4_edges() -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for base in [0, 4] {
        for u in base..base + 4 {
            for v in u + 1..base + 4 {
                edges.push((u, v));
            }
        }
    }
    edges.extend([
        (0, 4),
        (0, 5),
        (0, 6),
        (1, 6),
        (2, 6),
        (1, 5),
        (2, 7),
        (3, 7),
        (3, 4),
    ]);
    edges
}
