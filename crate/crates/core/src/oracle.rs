//! Exact performance maximum of tiny graphs by enumerating every set
//! partition as a restricted-growth string (node `i` joins one of the blocks
//! already opened by nodes `< i`, or opens the next one). Each partition is
//! produced exactly once and already in canonical form.

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::quality::{pair_count, FpScore};

/// Bell(12) ≈ 4.2 million partitions.
pub const DEFAULT_MAX_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub best_fp: FpScore,
    /// Every maximizing partition as per-node block labels in restricted
    /// growth form, in enumeration (lexicographic) order.
    pub best_labels: Vec<Vec<usize>>,
    /// Number of partitions scored; equals Bell(n).
    pub enumerated: u64,
}

impl OracleResult {
    /// Maximizing partitions as node lists, blocks ordered by smallest node.
    pub fn best_partitions(&self) -> Vec<Vec<Vec<NodeId>>> {
        self.best_labels
            .iter()
            .map(|labels| {
                let k = labels.iter().max().map_or(0, |&b| b + 1);
                let mut blocks = vec![Vec::new(); k];
                for (u, &b) in labels.iter().enumerate() {
                    blocks[b].push(u);
                }
                blocks
            })
            .collect()
    }
}

struct Search {
    n: usize,
    adj: Vec<u64>,
    labels: Vec<usize>,
    blocks: Vec<u64>,
    best: u64,
    best_labels: Vec<Vec<usize>>,
    enumerated: u64,
}

impl Search {
    fn descend(&mut self, i: usize, used: usize, score: u64) {
        if i == self.n {
            self.enumerated += 1;
            if score > self.best || self.best_labels.is_empty() {
                self.best = score;
                self.best_labels.clear();
            }
            if score == self.best {
                self.best_labels.push(self.labels.clone());
            }
            return;
        }
        let adj = self.adj[i];
        let earlier = (1u64 << i) - 1;
        let adj_earlier = (adj & earlier).count_ones() as u64;
        for b in 0..=used.min(self.n - 1) {
            let block = self.blocks[b];
            let intra_edges = (adj & block).count_ones() as u64;
            let block_size = block.count_ones() as u64;
            // Pairs (j, i), j < i: same block and adjacent, or different
            // blocks and not adjacent.
            let apart_non_edges = (i as u64 - block_size) - (adj_earlier - intra_edges);
            let gain = intra_edges + apart_non_edges;
            self.labels[i] = b;
            self.blocks[b] |= 1 << i;
            self.descend(i + 1, used.max(b + 1), score + gain);
            self.blocks[b] &= !(1 << i);
        }
    }
}

/// Maximum performance over all partitions of `g`, with every maximizer.
/// Refuses graphs with more than `max_n` nodes.
pub fn exhaustive_best_fp(g: &Graph, max_n: usize) -> Result<OracleResult> {
    let n = g.node_count();
    if n > max_n || n > 64 {
        return Err(Error::OracleTooLarge {
            n,
            max_n: max_n.min(64),
        });
    }
    if n < 2 {
        return Err(Error::TooFewNodes(n));
    }
    let adj = (0..n)
        .map(|u| g.neighbors(u).iter().fold(0u64, |mask, &v| mask | 1 << v))
        .collect();
    let mut search = Search {
        n,
        adj,
        labels: vec![0; n],
        blocks: vec![0; n],
        best: 0,
        best_labels: Vec::new(),
        enumerated: 0,
    };
    search.descend(0, 0, 0);
    Ok(OracleResult {
        best_fp: FpScore {
            correct: search.best,
            total: pair_count(n),
        },
        best_labels: search.best_labels,
        enumerated: search.enumerated,
    })
}
