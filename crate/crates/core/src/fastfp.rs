//! Fast seed-and-merge heuristic.
//!
//! 1. Every node pair gets the weight `2k + e (+1 if adjacent)`, where `k` is
//!    the number of common neighbors and `e` the number of edges among them
//!    (see [`EdgeCounting`]).
//! 2. Pairs with weight at least `t` form a weighted candidate graph.
//! 3. Seeds are cut from the candidate graph strongest edge first: the two
//!    endpoints plus their common neighbors among the surviving candidate
//!    nodes, which are then removed.
//! 4. Communities are merged while some pair has more cross edges (in the
//!    input graph) than half of its node pairs.

use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{intersect_sorted, Graph, NodeId};
use crate::quality::{fp, merge_gain, pair_count, FpScore, Partition};

pub const DEFAULT_THRESHOLD: u32 = 3;

/// Minimum candidate-edge weight. Must be at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Threshold(u32);

impl Threshold {
    pub fn new(t: u32) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidArgument(
                "threshold must be at least 1".into(),
            ));
        }
        Ok(Threshold(t))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl Default for Threshold {
    fn default() -> Self {
        Threshold(DEFAULT_THRESHOLD)
    }
}

/// How edges among the common neighbors of a pair enter its weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EdgeCounting {
    /// Each edge once. Reproduces the published small-dataset results.
    #[default]
    Unordered,
    /// Each edge twice, once per ordered endpoint pair.
    Ordered,
}

impl EdgeCounting {
    fn scale(self, ordered_pairs: u32) -> u32 {
        match self {
            EdgeCounting::Unordered => ordered_pairs / 2,
            EdgeCounting::Ordered => ordered_pairs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FastFpParams {
    pub threshold: Threshold,
    pub counting: EdgeCounting,
}

/// Weight of the pair `(u, v)` computed straight from its common neighbors.
pub fn pair_weight(g: &Graph, u: NodeId, v: NodeId, counting: EdgeCounting) -> Result<u32> {
    let cn = crate::graph::common_neighbors(g, u, v)?;
    let mut ordered_pairs = 0;
    for (i, &a) in cn.iter().enumerate() {
        for &b in &cn[i + 1..] {
            if g.has_edge(a, b) {
                ordered_pairs += 2;
            }
        }
    }
    Ok(2 * cn.len() as u32 + counting.scale(ordered_pairs) + g.has_edge(u, v) as u32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightedEdge {
    pub u: NodeId,
    pub v: NodeId,
    pub weight: u32,
}

/// Pairs whose weight reaches the threshold, with adjacency for lookups.
#[derive(Debug, Clone)]
pub struct CandidateGraph {
    n: usize,
    threshold: Threshold,
    /// Sorted by `(u, v)` with `u < v`.
    edges: Vec<WeightedEdge>,
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

impl CandidateGraph {
    fn from_edges(n: usize, threshold: Threshold, edges: Vec<WeightedEdge>) -> Self {
        let mut degree = vec![0usize; n];
        for e in &edges {
            degree[e.u] += 1;
            degree[e.v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0; offsets[n]];
        for e in &edges {
            targets[fill[e.v]] = e.u;
            fill[e.v] += 1;
        }
        for e in &edges {
            targets[fill[e.u]] = e.v;
            fill[e.u] += 1;
        }
        CandidateGraph {
            n,
            threshold,
            edges,
            offsets,
            targets,
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn threshold(&self) -> Threshold {
        self.threshold
    }

    pub fn edges(&self) -> &[WeightedEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted candidate neighbors of `u`.
    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    pub fn weight(&self, u: NodeId, v: NodeId) -> Option<u32> {
        let key = (u.min(v), u.max(v));
        self.edges
            .binary_search_by(|e| (e.u, e.v).cmp(&key))
            .ok()
            .map(|i| self.edges[i].weight)
    }
}

/// Reusable per-worker buffers for candidate enumeration.
struct PairScratch {
    k: Vec<u32>,
    touched: Vec<NodeId>,
    in_nbhd: Vec<bool>,
    in_cn: Vec<bool>,
    /// For each neighbor `x` of the hub node, its neighbors that are also
    /// neighbors of the hub (flattened, indexed through `tri_offsets`).
    tri: Vec<NodeId>,
    tri_offsets: Vec<usize>,
    cn: Vec<NodeId>,
}

impl PairScratch {
    fn new(n: usize) -> Self {
        PairScratch {
            k: vec![0; n],
            touched: Vec::new(),
            in_nbhd: vec![false; n],
            in_cn: vec![false; n],
            tri: Vec::new(),
            tri_offsets: Vec::new(),
            cn: Vec::new(),
        }
    }
}

/// Candidate edges `(u, v)` with `v > u`, ascending in `v`.
fn candidates_from(
    g: &Graph,
    t: u32,
    counting: EdgeCounting,
    u: NodeId,
    s: &mut PairScratch,
) -> Vec<WeightedEdge> {
    let adj_u = g.neighbors(u);
    for &x in adj_u {
        for &v in g.neighbors(x) {
            if v > u {
                if s.k[v] == 0 {
                    s.touched.push(v);
                }
                s.k[v] += 1;
            }
        }
    }
    if t <= 1 {
        // Adjacent pairs without common neighbors weigh exactly 1.
        for &v in adj_u {
            if v > u && s.k[v] == 0 {
                s.touched.push(v);
            }
        }
    }

    // Triangle lists are only needed when some pair has two or more common
    // neighbors, which is the only way e can be non-zero.
    let need_tri = s.touched.iter().any(|&v| s.k[v] >= 2);
    if need_tri {
        for &x in adj_u {
            s.in_nbhd[x] = true;
        }
        s.tri.clear();
        s.tri_offsets.clear();
        s.tri_offsets.push(0);
        for &x in adj_u {
            s.tri
                .extend(g.neighbors(x).iter().copied().filter(|&y| s.in_nbhd[y]));
            s.tri_offsets.push(s.tri.len());
        }
    }

    s.touched.sort_unstable();
    let mut out = Vec::new();
    for &v in &s.touched {
        let k = s.k[v];
        let mut e = 0u32;
        if k >= 2 {
            s.cn.clear();
            intersect_sorted(adj_u, g.neighbors(v), &mut s.cn);
            for &x in &s.cn {
                s.in_cn[x] = true;
            }
            for &x in &s.cn {
                let idx = adj_u.binary_search(&x).unwrap();
                e += s.tri[s.tri_offsets[idx]..s.tri_offsets[idx + 1]]
                    .iter()
                    .filter(|&&y| s.in_cn[y])
                    .count() as u32;
            }
            for &x in &s.cn {
                s.in_cn[x] = false;
            }
        }
        let w = 2 * k + counting.scale(e) + g.has_edge(u, v) as u32;
        if w >= t {
            out.push(WeightedEdge { u, v, weight: w });
        }
    }
    for &v in &s.touched {
        s.k[v] = 0;
    }
    s.touched.clear();
    if need_tri {
        for &x in adj_u {
            s.in_nbhd[x] = false;
        }
    }
    out
}

/// Builds the candidate graph without scanning all node pairs: only pairs at
/// distance two (plus, for `t = 1`, adjacent pairs) can reach the threshold.
/// Rows are computed in parallel; the result does not depend on scheduling.
pub fn build_candidate_graph(
    g: &Graph,
    threshold: Threshold,
    counting: EdgeCounting,
) -> CandidateGraph {
    let n = g.node_count();
    let t = threshold.get();
    let rows: Vec<Vec<WeightedEdge>> = (0..n)
        .into_par_iter()
        .map_init(
            || PairScratch::new(n),
            |scratch, u| candidates_from(g, t, counting, u, scratch),
        )
        .collect();
    let edges: Vec<WeightedEdge> = rows.into_iter().flatten().collect();
    CandidateGraph::from_edges(n, threshold, edges)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seeds {
    pub communities: Vec<Vec<NodeId>>,
    /// Nodes left over once the candidate graph ran out of edges.
    pub leftovers: Vec<NodeId>,
    /// Weight of the edge that started each seed, in extraction order.
    pub seed_weights: Vec<u32>,
}

/// Cuts seed communities out of the candidate graph, strongest edge first.
///
/// Ties on weight go to the lexicographically smallest `(u, v)`. Edge weights
/// never change once computed, so a single pre-sorted edge list with lazy
/// skipping of removed endpoints behaves exactly like a priority queue.
pub fn extract_seeds(g2: &CandidateGraph) -> Seeds {
    let mut order: Vec<usize> = (0..g2.edges.len()).collect();
    order.sort_unstable_by_key(|&i| {
        let e = g2.edges[i];
        (std::cmp::Reverse(e.weight), e.u, e.v)
    });
    let mut alive = vec![true; g2.n];
    let mut seeds = Seeds {
        communities: Vec::new(),
        leftovers: Vec::new(),
        seed_weights: Vec::new(),
    };
    let mut cn = Vec::new();
    for i in order {
        let e = g2.edges[i];
        if !alive[e.u] || !alive[e.v] {
            continue;
        }
        cn.clear();
        intersect_sorted(g2.neighbors(e.u), g2.neighbors(e.v), &mut cn);
        let mut community = vec![e.u, e.v];
        community.extend(cn.iter().copied().filter(|&x| alive[x]));
        for &x in &community {
            alive[x] = false;
        }
        community.sort_unstable();
        seeds.communities.push(community);
        seeds.seed_weights.push(e.weight);
    }
    seeds.leftovers = (0..g2.n).filter(|&u| alive[u]).collect();
    seeds
}

/// Repeatedly merges the first community pair (in scan order) whose cross
/// edge count exceeds half the product of their sizes, restarting the scan
/// after each merge, until a full scan finds nothing.
///
/// Communities are scanned by descending size (ties: smallest node first) and
/// pairs `(i, j)`, `i < j`, in lexicographic order of position. Only pairs
/// joined by at least one edge can qualify, so each community's candidate
/// partners are found from its adjacency rather than by enumerating all pairs.
pub fn merge_communities(g: &Graph, communities: Vec<Vec<NodeId>>) -> Result<MergeOutcome> {
    let n = g.node_count();
    let mut comms = communities;
    let mut owner = vec![usize::MAX; n];
    for (c, members) in comms.iter().enumerate() {
        for &u in members {
            if u >= n {
                return Err(Error::NodeOutOfRange { node: u, n });
            }
            if owner[u] != usize::MAX {
                return Err(Error::InvalidPartition(format!("node {u} assigned twice")));
            }
            owner[u] = c;
        }
    }
    if let Some(u) = owner.iter().position(|&c| c == usize::MAX) {
        return Err(Error::InvalidPartition(format!("node {u} unassigned")));
    }
    for members in &mut comms {
        members.sort_unstable();
    }
    comms.retain(|c| !c.is_empty());

    let mut gains = Vec::new();
    let mut counts = vec![0usize; comms.len()];
    let mut touched = Vec::new();
    loop {
        // Relabel by scan position.
        comms.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        for (pos, members) in comms.iter().enumerate() {
            for &u in members {
                owner[u] = pos;
            }
        }
        let mut found = None;
        'scan: for (i, members) in comms.iter().enumerate() {
            for &u in members {
                for &v in g.neighbors(u) {
                    let j = owner[v];
                    if j > i {
                        if counts[j] == 0 {
                            touched.push(j);
                        }
                        counts[j] += 1;
                    }
                }
            }
            touched.sort_unstable();
            let hit = touched
                .iter()
                .copied()
                .find(|&j| 2 * counts[j] > members.len() * comms[j].len());
            let e_cc = hit.map(|j| counts[j]);
            for &j in &touched {
                counts[j] = 0;
            }
            touched.clear();
            if let (Some(j), Some(e_cc)) = (hit, e_cc) {
                found = Some((i, j, e_cc));
                break 'scan;
            }
        }
        let Some((i, j, e_cc)) = found else { break };
        gains.push(merge_gain(comms[i].len(), comms[j].len(), e_cc));
        let absorbed = comms.swap_remove(j);
        comms[i].extend(absorbed);
        comms[i].sort_unstable();
    }
    comms.sort_by_key(|c| c[0]);
    Ok(MergeOutcome {
        communities: comms,
        merge_gains: gains,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeOutcome {
    /// Final communities, each sorted, ordered by smallest node.
    pub communities: Vec<Vec<NodeId>>,
    /// Performance-numerator gain of every accepted merge, in order.
    pub merge_gains: Vec<i64>,
}

#[derive(Debug, Clone)]
pub struct FastFpStats {
    pub params: FastFpParams,
    pub candidate_edges: usize,
    pub seeds: usize,
    pub leftovers: usize,
    pub merges: usize,
    pub final_fp: FpScore,
    /// Wall time of steps 1–4.
    pub elapsed: std::time::Duration,
}

/// All four steps. Leftover nodes become singleton communities.
pub fn run(g: &Graph, params: FastFpParams) -> Result<(Partition, FastFpStats)> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::TooFewNodes(n));
    }
    let start = Instant::now();
    let g2 = build_candidate_graph(g, params.threshold, params.counting);
    let seeds = extract_seeds(&g2);
    let mut communities = seeds.communities.clone();
    communities.extend(seeds.leftovers.iter().map(|&u| vec![u]));
    let merged = merge_communities(g, communities)?;
    let p = Partition::from_communities(g, &merged.communities)?;
    let elapsed = start.elapsed();
    let final_fp = fp(g, &p)?;
    debug_assert!(final_fp.correct <= pair_count(n));
    Ok((
        p,
        FastFpStats {
            params,
            candidate_edges: g2.edge_count(),
            seeds: seeds.communities.len(),
            leftovers: seeds.leftovers.len(),
            merges: merged.merge_gains.len(),
            final_fp,
            elapsed,
        },
    ))
}
