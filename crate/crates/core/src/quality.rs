//! Partitions and their quality: performance (the fraction of node pairs a
//! partition classifies correctly), modularity, and exact incremental deltas
//! for single-node moves and community merges.
//!
//! Performance is kept as an integer numerator over `n(n-1)/2` so that greedy
//! comparisons are exact. Non-edges are never enumerated: the number of
//! correctly separated non-adjacent pairs is
//! `n(n-1)/2 - Σ_c C(|c|, 2) - (m - Σ_c intra(c))`.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

pub type CommunityId = usize;

/// Assignment of every node to exactly one community.
///
/// Community ids index slots; a slot whose community has been emptied (by
/// moves) or absorbed (by a merge) is dead and never reported. Sizes and
/// intra-community edge counts are cached and kept current by
/// [`apply_move`] and [`apply_merge`].
#[derive(Debug, Clone)]
pub struct Partition {
    assignment: Vec<CommunityId>,
    members: Vec<Vec<NodeId>>,
    position: Vec<usize>,
    intra: Vec<usize>,
    live: usize,
}

impl PartialEq for Partition {
    /// Two partitions are equal when they group the nodes identically,
    /// regardless of community ids.
    fn eq(&self, other: &Self) -> bool {
        self.canonical_labels() == other.canonical_labels()
    }
}

impl Eq for Partition {}

impl Partition {
    /// Every node in its own community; community `u` holds node `u`.
    pub fn singletons(n: usize) -> Self {
        Partition {
            assignment: (0..n).collect(),
            members: (0..n).map(|u| vec![u]).collect(),
            position: vec![0; n],
            intra: vec![0; n],
            live: n,
        }
    }

    /// Builds a partition from arbitrary per-node labels. Communities are
    /// numbered by their smallest node.
    pub fn from_labels<L: Eq + std::hash::Hash + Clone>(g: &Graph, labels: &[L]) -> Result<Self> {
        if labels.len() != g.node_count() {
            return Err(Error::InvalidPartition(format!(
                "{} labels for {} nodes",
                labels.len(),
                g.node_count()
            )));
        }
        let mut ids = std::collections::HashMap::new();
        let dense: Vec<CommunityId> = labels
            .iter()
            .map(|l| {
                let next = ids.len();
                *ids.entry(l.clone()).or_insert(next)
            })
            .collect();
        Ok(Self::from_dense(g, dense, ids.len()))
    }

    /// Builds a partition from a list of communities that must cover every
    /// node exactly once.
    pub fn from_communities(g: &Graph, communities: &[Vec<NodeId>]) -> Result<Self> {
        let n = g.node_count();
        let mut label = vec![usize::MAX; n];
        for (c, members) in communities.iter().enumerate() {
            for &u in members {
                if u >= n {
                    return Err(Error::NodeOutOfRange { node: u, n });
                }
                if label[u] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("node {u} assigned twice")));
                }
                label[u] = c;
            }
        }
        let missing: Vec<_> = (0..n).filter(|&u| label[u] == usize::MAX).collect();
        if !missing.is_empty() {
            return Err(Error::InvalidPartition(format!(
                "unassigned nodes {missing:?}"
            )));
        }
        Self::from_labels(g, &label)
    }

    fn from_dense(g: &Graph, assignment: Vec<CommunityId>, k: usize) -> Self {
        let mut members = vec![Vec::new(); k];
        let mut position = vec![0; assignment.len()];
        for (u, &c) in assignment.iter().enumerate() {
            position[u] = members[c].len();
            members[c].push(u);
        }
        let mut intra = vec![0; k];
        for (u, v) in g.edges() {
            if assignment[u] == assignment[v] {
                intra[assignment[u]] += 1;
            }
        }
        Partition {
            assignment,
            members,
            position,
            intra,
            live: k,
        }
    }

    pub fn node_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn community_of(&self, u: NodeId) -> CommunityId {
        self.assignment[u]
    }

    pub fn assignment(&self) -> &[CommunityId] {
        &self.assignment
    }

    pub fn members(&self, c: CommunityId) -> &[NodeId] {
        &self.members[c]
    }

    pub fn size(&self, c: CommunityId) -> usize {
        self.members[c].len()
    }

    /// Number of edges with both endpoints in `c`.
    pub fn intra(&self, c: CommunityId) -> usize {
        self.intra[c]
    }

    pub fn is_live(&self, c: CommunityId) -> bool {
        c < self.members.len() && !self.members[c].is_empty()
    }

    /// Live community ids in ascending order.
    pub fn community_ids(&self) -> impl Iterator<Item = CommunityId> + '_ {
        (0..self.members.len()).filter(move |&c| !self.members[c].is_empty())
    }

    /// Upper bound (exclusive) on community ids, live or dead.
    pub(crate) fn slot_count(&self) -> usize {
        self.members.len()
    }

    pub fn community_count(&self) -> usize {
        self.live
    }

    pub fn intra_total(&self) -> usize {
        self.community_ids().map(|c| self.intra[c]).sum()
    }

    /// Per-node labels with communities numbered `0..k` in order of their
    /// smallest node (restricted-growth form).
    pub fn canonical_labels(&self) -> Vec<usize> {
        let mut relabel = vec![usize::MAX; self.members.len()];
        let mut next = 0;
        self.assignment
            .iter()
            .map(|&c| {
                if relabel[c] == usize::MAX {
                    relabel[c] = next;
                    next += 1;
                }
                relabel[c]
            })
            .collect()
    }

    /// Copy with communities renumbered `0..k` by smallest node.
    pub fn canonical(&self, g: &Graph) -> Partition {
        let labels = self.canonical_labels();
        Self::from_dense(g, labels, self.live)
    }

    /// Communities as sorted node lists, ordered by smallest node.
    pub fn communities(&self) -> Vec<Vec<NodeId>> {
        let mut out = vec![Vec::new(); self.live];
        for (u, c) in self.canonical_labels().into_iter().enumerate() {
            out[c].push(u);
        }
        out
    }

    /// Recounts every cached quantity against `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidPartition(msg));
        if self.node_count() != g.node_count() {
            return bad(format!(
                "partition covers {} nodes, graph has {}",
                self.node_count(),
                g.node_count()
            ));
        }
        let mut seen = 0;
        for c in 0..self.members.len() {
            for (i, &u) in self.members[c].iter().enumerate() {
                if self.assignment[u] != c || self.position[u] != i {
                    return bad(format!("node {u} listed in community {c} inconsistently"));
                }
                seen += 1;
            }
        }
        if seen != self.node_count() {
            return bad(format!(
                "{seen} memberships for {} nodes",
                self.node_count()
            ));
        }
        if self.community_ids().count() != self.live {
            return bad("live community count out of date".into());
        }
        let mut intra = vec![0; self.members.len()];
        for (u, v) in g.edges() {
            if self.assignment[u] == self.assignment[v] {
                intra[self.assignment[u]] += 1;
            }
        }
        if intra != self.intra {
            return bad("cached intra-community edge counts out of date".into());
        }
        Ok(())
    }

    pub(crate) fn move_unchecked(
        &mut self,
        u: NodeId,
        target: CommunityId,
        d_from: usize,
        d_to: usize,
    ) {
        let from = self.assignment[u];
        let pos = self.position[u];
        self.members[from].swap_remove(pos);
        if let Some(&moved) = self.members[from].get(pos) {
            self.position[moved] = pos;
        }
        self.intra[from] -= d_from;
        if self.members[from].is_empty() {
            self.live -= 1;
        }
        self.assignment[u] = target;
        self.position[u] = self.members[target].len();
        self.members[target].push(u);
        self.intra[target] += d_to;
    }

    /// Folds `c2` into `c1` (or the reverse); the surviving id is the smaller.
    pub(crate) fn merge_unchecked(
        &mut self,
        c1: CommunityId,
        c2: CommunityId,
        e_cc: usize,
    ) -> CommunityId {
        let (keep, gone) = (c1.min(c2), c1.max(c2));
        let moved = std::mem::take(&mut self.members[gone]);
        for &u in &moved {
            self.assignment[u] = keep;
            self.position[u] = self.members[keep].len();
            self.members[keep].push(u);
        }
        self.intra[keep] += self.intra[gone] + e_cc;
        self.intra[gone] = 0;
        self.live -= 1;
        keep
    }

    fn check_live(&self, c: CommunityId) -> Result<()> {
        if self.is_live(c) {
            Ok(())
        } else {
            Err(Error::NoSuchCommunity(c))
        }
    }

    fn check_graph(&self, g: &Graph) -> Result<()> {
        if self.node_count() != g.node_count() {
            return Err(Error::InvalidPartition(format!(
                "partition covers {} nodes, graph has {}",
                self.node_count(),
                g.node_count()
            )));
        }
        Ok(())
    }
}

/// Performance as an exact fraction `correct / total`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpScore {
    pub correct: u64,
    pub total: u64,
}

impl FpScore {
    pub fn value(&self) -> f64 {
        self.correct as f64 / self.total as f64
    }
}

impl fmt::Display for FpScore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.correct, self.total)
    }
}

pub(crate) fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Performance of `p`: intra-community edges plus inter-community non-edges,
/// over all `n(n-1)/2` node pairs.
pub fn fp(g: &Graph, p: &Partition) -> Result<FpScore> {
    p.check_graph(g)?;
    let n = g.node_count();
    if n < 2 {
        return Err(Error::TooFewNodes(n));
    }
    let total = pair_count(n);
    let intra = p.intra_total() as u64;
    let intra_pairs: u64 = p.community_ids().map(|c| pair_count(p.size(c))).sum();
    let cross_edges = g.edge_count() as u64 - intra;
    let correct = intra + (total - intra_pairs - cross_edges);
    Ok(FpScore { correct, total })
}

/// Newman–Girvan modularity with resolution `gamma`, summed per community as
/// `intra(c)/m - gamma * (vol(c) / 2m)^2`.
pub fn modularity(g: &Graph, p: &Partition, gamma: f64) -> Result<f64> {
    p.check_graph(g)?;
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let m = g.edge_count() as f64;
    let mut q = 0.0;
    for c in p.community_ids() {
        let vol: usize = p.members(c).iter().map(|&u| g.degree(u)).sum();
        let share = vol as f64 / (2.0 * m);
        q += p.intra(c) as f64 / m - gamma * share * share;
    }
    Ok(q)
}

/// Change of the performance numerator when `u` moves to `target`.
///
/// Only pairs containing `u` change classification. With `A` the current
/// community, `d_A = |adj(u) ∩ A|` and `d_B = |adj(u) ∩ target|`, the change
/// is `(|A| - 1 - 2 d_A) + (2 d_B - |target|)`.
pub fn move_delta(g: &Graph, p: &Partition, u: NodeId, target: CommunityId) -> Result<i64> {
    p.check_graph(g)?;
    if u >= g.node_count() {
        return Err(Error::NodeOutOfRange {
            node: u,
            n: g.node_count(),
        });
    }
    p.check_live(target)?;
    let from = p.community_of(u);
    if target == from {
        return Err(Error::SameCommunity(target));
    }
    let (d_from, d_to) = links_to(g, p, u, from, target);
    Ok(move_gain(p.size(from), d_from, p.size(target), d_to))
}

pub(crate) fn move_gain(size_from: usize, d_from: usize, size_to: usize, d_to: usize) -> i64 {
    (size_from as i64 - 1 - 2 * d_from as i64) + (2 * d_to as i64 - size_to as i64)
}

fn links_to(g: &Graph, p: &Partition, u: NodeId, a: CommunityId, b: CommunityId) -> (usize, usize) {
    let (mut da, mut db) = (0, 0);
    for &v in g.neighbors(u) {
        let c = p.community_of(v);
        if c == a {
            da += 1;
        } else if c == b {
            db += 1;
        }
    }
    (da, db)
}

/// Change of the performance numerator when `c1` and `c2` merge, given the
/// number of edges between them: `2 e_cc - |c1| |c2|`. Positive exactly when
/// more than half of the cross pairs are edges.
pub fn merge_delta(p: &Partition, c1: CommunityId, c2: CommunityId, e_cc: usize) -> Result<i64> {
    p.check_live(c1)?;
    p.check_live(c2)?;
    if c1 == c2 {
        return Err(Error::SameCommunity(c1));
    }
    Ok(merge_gain(p.size(c1), p.size(c2), e_cc))
}

pub(crate) fn merge_gain(s1: usize, s2: usize, e_cc: usize) -> i64 {
    2 * e_cc as i64 - (s1 as i64) * (s2 as i64)
}

/// Number of edges with one endpoint in `c1` and the other in `c2`, found by
/// scanning the adjacency of the smaller community.
pub fn cross_edges(g: &Graph, p: &Partition, c1: CommunityId, c2: CommunityId) -> Result<usize> {
    p.check_graph(g)?;
    p.check_live(c1)?;
    p.check_live(c2)?;
    if c1 == c2 {
        return Err(Error::SameCommunity(c1));
    }
    let (small, other) = if p.size(c1) <= p.size(c2) {
        (c1, c2)
    } else {
        (c2, c1)
    };
    Ok(p.members(small)
        .iter()
        .flat_map(|&u| g.neighbors(u))
        .filter(|&&v| p.community_of(v) == other)
        .count())
}

/// Moves `u` into `target`, updating the cached counts in `O(deg(u))`.
pub fn apply_move(g: &Graph, p: &mut Partition, u: NodeId, target: CommunityId) -> Result<()> {
    move_delta(g, p, u, target)?;
    let from = p.community_of(u);
    let (d_from, d_to) = links_to(g, p, u, from, target);
    p.move_unchecked(u, target, d_from, d_to);
    Ok(())
}

/// Merges two communities; the merged community keeps the smaller id, which
/// is returned.
pub fn apply_merge(
    g: &Graph,
    p: &mut Partition,
    c1: CommunityId,
    c2: CommunityId,
) -> Result<CommunityId> {
    let e_cc = cross_edges(g, p, c1, c2)?;
    Ok(p.merge_unchecked(c1, c2, e_cc))
}
