//! Immutable simple undirected graphs, edge-list ingestion and the clique
//! topologies used to probe the resolution limit.

use std::collections::VecDeque;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

pub type NodeId = usize;

/// Undirected simple graph in compressed sparse row form.
///
/// Node ids are dense (`0..n`). Every neighbor list is sorted and free of
/// duplicates and self-loops, so `v ∈ adj(u)` can be answered by binary search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    m: usize,
}

impl Graph {
    /// Builds a graph over `n` nodes. Self-loops and repeated edges (in either
    /// direction) are dropped.
    pub fn from_edges(n: usize, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        let mut canon = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for node in [u, v] {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, n });
                }
            }
            if u != v {
                canon.push((u.min(v), u.max(v)));
            }
        }
        canon.sort_unstable();
        canon.dedup();
        Ok(Self::from_sorted_unique(n, &canon))
    }

    fn from_sorted_unique(n: usize, edges: &[(NodeId, NodeId)]) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0; offsets[n]];
        // Edges arrive sorted by (u, v) with u < v, so both insertion streams
        // below produce ascending neighbor lists.
        for &(u, v) in edges {
            targets[fill[v]] = u;
            fill[v] += 1;
        }
        for &(u, v) in edges {
            targets[fill[u]] = v;
            fill[u] += 1;
        }
        debug_assert!((0..n).all(|u| targets[offsets[u]..offsets[u + 1]]
            .windows(2)
            .all(|w| w[0] < w[1])));
        Graph {
            offsets,
            targets,
            m: edges.len(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    pub fn degree(&self, u: NodeId) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.node_count()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Writes one `u v` line per edge (`u < v`, ascending). With `labels`, the
    /// external ids are written instead of the dense ones.
    pub fn write_edge_list<W: Write>(&self, mut out: W, labels: Option<&LabelMap>) -> Result<()> {
        for (u, v) in self.edges() {
            match labels {
                Some(map) => writeln!(out, "{} {}", map.external(u), map.external(v))?,
                None => writeln!(out, "{} {}", u, v)?,
            }
        }
        Ok(())
    }

    fn check_node(&self, node: NodeId) -> Result<()> {
        if node >= self.node_count() {
            return Err(Error::NodeOutOfRange {
                node,
                n: self.node_count(),
            });
        }
        Ok(())
    }

    /// Connected components as a per-node component index, numbered in order
    /// of their smallest node.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.node_count();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &v in self.neighbors(u) {
                    if comp[v] == usize::MAX {
                        comp[v] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    /// Subgraph induced by the nodes with `keep[u]`, relabeled in ascending
    /// order. Returns the graph and, for each new id, the old id.
    pub fn induced(&self, keep: &[bool]) -> (Graph, Vec<NodeId>) {
        let old_ids: Vec<NodeId> = self.nodes().filter(|&u| keep[u]).collect();
        let mut new_id = vec![usize::MAX; self.node_count()];
        for (i, &u) in old_ids.iter().enumerate() {
            new_id[u] = i;
        }
        let edges: Vec<_> = self
            .edges()
            .filter(|&(u, v)| keep[u] && keep[v])
            .map(|(u, v)| (new_id[u], new_id[v]))
            .collect();
        (Graph::from_sorted_unique(old_ids.len(), &edges), old_ids)
    }
}

/// Mapping between dense node ids and the integer labels found in the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMap {
    labels: Vec<i64>,
}

impl LabelMap {
    /// Identity mapping for generated graphs.
    pub fn identity(n: usize) -> Self {
        LabelMap {
            labels: (0..n as i64).collect(),
        }
    }

    pub fn external(&self, id: NodeId) -> i64 {
        self.labels[id]
    }

    /// Labels are kept sorted, so lookup is a binary search.
    pub fn internal(&self, label: i64) -> Option<NodeId> {
        self.labels.binary_search(&label).ok()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    pub keep_largest_component: bool,
}

/// Reads a whitespace-separated edge list.
///
/// Lines starting with `#` or `%` are comments and blank lines are skipped.
/// Only the first two tokens of a line are used, so SNAP files and edge lists
/// with trailing weight or timestamp columns load unchanged. Edge direction is
/// ignored, duplicate edges and self-loops are dropped, and the external
/// labels are relabeled to `0..n` in ascending label order.
pub fn load_edge_list<R: BufRead>(source: R, options: LoadOptions) -> Result<(Graph, LabelMap)> {
    let mut raw: Vec<(i64, i64)> = Vec::new();
    for (idx, line) in source.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let mut endpoint = || -> Result<i64> {
            let tok = tokens.next().ok_or_else(|| Error::Parse {
                line: lineno,
                message: "expected two node ids".into(),
            })?;
            tok.parse::<i64>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid node id {tok:?}"),
            })
        };
        let u = endpoint()?;
        let v = endpoint()?;
        raw.push((u, v));
    }
    if raw.is_empty() {
        return Err(Error::EmptyInput);
    }

    let mut labels: Vec<i64> = raw.iter().flat_map(|&(u, v)| [u, v]).collect();
    labels.sort_unstable();
    labels.dedup();
    let map = LabelMap { labels };

    let mut edges: Vec<(NodeId, NodeId)> = raw
        .iter()
        .filter(|(u, v)| u != v)
        .map(|&(u, v)| {
            let (a, b) = (map.internal(u).unwrap(), map.internal(v).unwrap());
            (a.min(b), a.max(b))
        })
        .collect();
    drop(raw);
    edges.sort_unstable();
    edges.dedup();
    let graph = Graph::from_sorted_unique(map.len(), &edges);

    if !options.keep_largest_component {
        return Ok((graph, map));
    }
    let (comp, count) = graph.components();
    let mut sizes = vec![0usize; count];
    for &c in &comp {
        sizes[c] += 1;
    }
    // max_by_key keeps the last maximum; reverse so ties go to the component
    // with the smallest node.
    let largest = (0..count).rev().max_by_key(|&c| sizes[c]).unwrap_or(0);
    let keep: Vec<bool> = comp.iter().map(|&c| c == largest).collect();
    let (sub, old_ids) = graph.induced(&keep);
    let labels = old_ids.iter().map(|&u| map.external(u)).collect();
    Ok((sub, LabelMap { labels }))
}

/// Complete graph on `n` nodes.
pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_sorted_unique(n, &edges)
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_sorted_unique(n, &edges)
}

fn clique_edges(start: NodeId, size: usize, edges: &mut Vec<(NodeId, NodeId)>) {
    for u in start..start + size {
        for v in u + 1..start + size {
            edges.push((u, v));
        }
    }
}

/// `num_cliques` copies of `K_clique_size` arranged in a cycle, consecutive
/// cliques joined by a single bridge edge.
///
/// Clique `i` owns nodes `i*k .. (i+1)*k`. Bridges are laid down in order
/// `i -> i+1 (mod c)`, each using the lowest not-yet-bridged node of both
/// cliques, so every clique has two distinct bridge endpoints.
pub fn ring_of_cliques(num_cliques: usize, clique_size: usize) -> Result<Graph> {
    if num_cliques < 3 || clique_size < 3 {
        return Err(Error::InvalidArgument(format!(
            "ring of cliques needs at least 3 cliques of size at least 3, got {num_cliques} x {clique_size}"
        )));
    }
    let k = clique_size;
    let mut edges = Vec::new();
    for i in 0..num_cliques {
        clique_edges(i * k, k, &mut edges);
    }
    let mut next_free: Vec<NodeId> = (0..num_cliques).map(|i| i * k).collect();
    for i in 0..num_cliques {
        let j = (i + 1) % num_cliques;
        let a = next_free[i];
        next_free[i] += 1;
        let b = next_free[j];
        next_free[j] += 1;
        edges.push((a, b));
    }
    Graph::from_edges(num_cliques * k, &edges)
}

/// Two `K_big` and two `K_small` cliques joined by exactly four bridges:
/// B1–B2, B1–S1, B2–S2 and S1–S2.
///
/// Node layout is B1, B2, S1, S2 in consecutive id blocks; bridges use the
/// lowest not-yet-bridged node of each clique.
pub fn bridged_cliques(big: usize, small: usize) -> Result<Graph> {
    if small < 3 || big < small {
        return Err(Error::InvalidArgument(format!(
            "bridged cliques need big >= small >= 3, got big = {big}, small = {small}"
        )));
    }
    let starts = [0, big, 2 * big, 2 * big + small];
    let sizes = [big, big, small, small];
    let mut edges = Vec::new();
    for (s, k) in starts.iter().zip(sizes) {
        clique_edges(*s, k, &mut edges);
    }
    let mut next_free = starts;
    for (a, b) in [(0, 1), (0, 2), (1, 3), (2, 3)] {
        edges.push((next_free[a], next_free[b]));
        next_free[a] += 1;
        next_free[b] += 1;
    }
    Graph::from_edges(2 * big + 2 * small, &edges)
}

/// Sorted `adj(u) ∩ adj(v)`.
pub fn common_neighbors(g: &Graph, u: NodeId, v: NodeId) -> Result<Vec<NodeId>> {
    g.check_node(u)?;
    g.check_node(v)?;
    if u == v {
        return Err(Error::SameNode(u));
    }
    let mut out = Vec::new();
    intersect_sorted(g.neighbors(u), g.neighbors(v), &mut out);
    Ok(out)
}

/// Appends the intersection of two ascending slices to `out`.
pub(crate) fn intersect_sorted(a: &[NodeId], b: &[NodeId], out: &mut Vec<NodeId>) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}
