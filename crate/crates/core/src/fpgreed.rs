//! Two-level greedy maximization of performance.
//!
//! Starting from singletons, node passes move single nodes to the neighboring
//! community with the largest strictly positive gain until a pass changes
//! nothing; then one merge pass joins adjacent communities whose merge gains.
//! The run ends once a node-stable partition is also merge-stable. Every
//! accepted change raises the integer performance numerator, which is bounded
//! by `n(n-1)/2`, so the loop terminates.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::quality::{fp, merge_gain, move_gain, CommunityId, FpScore, Partition};

/// Order in which nodes (node pass) and communities (merge pass) are visited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SweepOrder {
    /// Ascending id; fully deterministic.
    #[default]
    Ascending,
    /// A fresh seeded shuffle for every pass.
    Random { seed: u64 },
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GreedyOptions {
    pub order: SweepOrder,
    /// Keep the performance numerator after every accepted change.
    pub record_trace: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyStats {
    pub node_passes: usize,
    pub merge_passes: usize,
    pub moves: usize,
    pub merges: usize,
    pub final_fp: FpScore,
    /// Performance numerators: the starting value followed by the value after
    /// each accepted move or merge. Empty unless tracing was requested.
    pub trace: Vec<u64>,
}

/// Per-community link counters reused across sweeps.
struct Scratch {
    counts: Vec<usize>,
    touched: Vec<CommunityId>,
}

impl Scratch {
    fn new(slots: usize) -> Self {
        Scratch {
            counts: vec![0; slots],
            touched: Vec::new(),
        }
    }

    fn bump(&mut self, c: CommunityId) {
        if self.counts[c] == 0 {
            self.touched.push(c);
        }
        self.counts[c] += 1;
    }

    fn clear(&mut self) {
        for &c in &self.touched {
            self.counts[c] = 0;
        }
        self.touched.clear();
    }
}

struct Tracker<'a> {
    current: i64,
    trace: Option<&'a mut Vec<u64>>,
}

impl Tracker<'_> {
    fn accept(&mut self, delta: i64) {
        debug_assert!(delta > 0);
        self.current += delta;
        if let Some(trace) = self.trace.as_deref_mut() {
            trace.push(self.current as u64);
        }
    }
}

/// Picks the candidate with the largest strictly positive gain; ties go to
/// the smaller community id.
fn better(gain: i64, c: CommunityId, best: Option<(i64, CommunityId)>) -> bool {
    gain > 0
        && match best {
            None => true,
            Some((g, b)) => gain > g || (gain == g && c < b),
        }
}

fn sweep_node(
    g: &Graph,
    p: &mut Partition,
    u: NodeId,
    scratch: &mut Scratch,
    tracker: &mut Tracker<'_>,
) -> bool {
    let from = p.community_of(u);
    for &v in g.neighbors(u) {
        scratch.bump(p.community_of(v));
    }
    let d_from = scratch.counts[from];
    let size_from = p.size(from);
    let mut best: Option<(i64, CommunityId)> = None;
    for &c in &scratch.touched {
        if c == from {
            continue;
        }
        let gain = move_gain(size_from, d_from, p.size(c), scratch.counts[c]);
        if better(gain, c, best) {
            best = Some((gain, c));
        }
    }
    let moved = match best {
        Some((gain, target)) => {
            let d_to = scratch.counts[target];
            p.move_unchecked(u, target, d_from, d_to);
            tracker.accept(gain);
            true
        }
        None => false,
    };
    scratch.clear();
    moved
}

fn sweep_community(
    g: &Graph,
    p: &mut Partition,
    c: CommunityId,
    scratch: &mut Scratch,
    tracker: &mut Tracker<'_>,
) -> bool {
    for &u in p.members(c) {
        for &v in g.neighbors(u) {
            let cv = p.community_of(v);
            if cv != c {
                scratch.bump(cv);
            }
        }
    }
    let size = p.size(c);
    let mut best: Option<(i64, CommunityId)> = None;
    for &other in &scratch.touched {
        let gain = merge_gain(size, p.size(other), scratch.counts[other]);
        if better(gain, other, best) {
            best = Some((gain, other));
        }
    }
    let merged = match best {
        Some((gain, other)) => {
            let e_cc = scratch.counts[other];
            p.merge_unchecked(c, other, e_cc);
            tracker.accept(gain);
            true
        }
        None => false,
    };
    scratch.clear();
    merged
}

/// One sweep of single-node moves in ascending node order. Moves take effect
/// immediately. Returns whether any node moved.
pub fn node_pass(g: &Graph, p: &mut Partition) -> Result<bool> {
    let order: Vec<NodeId> = g.nodes().collect();
    let moves = node_pass_ordered(g, p, &order, None)?;
    Ok(moves > 0)
}

/// One sweep over the live communities in ascending id order, merging each
/// with the adjacent community of largest positive gain. Returns whether any
/// merge happened.
pub fn merge_pass(g: &Graph, p: &mut Partition) -> Result<bool> {
    let order: Vec<CommunityId> = p.community_ids().collect();
    let merges = merge_pass_ordered(g, p, &order, None)?;
    Ok(merges > 0)
}

fn check(g: &Graph, p: &Partition) -> Result<i64> {
    Ok(fp(g, p)?.correct as i64)
}

fn node_pass_ordered(
    g: &Graph,
    p: &mut Partition,
    order: &[NodeId],
    trace: Option<&mut Vec<u64>>,
) -> Result<usize> {
    let mut tracker = Tracker {
        current: check(g, p)?,
        trace,
    };
    let mut scratch = Scratch::new(p.slot_count());
    let mut moves = 0;
    for &u in order {
        if sweep_node(g, p, u, &mut scratch, &mut tracker) {
            moves += 1;
        }
    }
    Ok(moves)
}

fn merge_pass_ordered(
    g: &Graph,
    p: &mut Partition,
    order: &[CommunityId],
    trace: Option<&mut Vec<u64>>,
) -> Result<usize> {
    let mut tracker = Tracker {
        current: check(g, p)?,
        trace,
    };
    let mut scratch = Scratch::new(p.slot_count());
    let mut merges = 0;
    for &c in order {
        if p.is_live(c) && sweep_community(g, p, c, &mut scratch, &mut tracker) {
            merges += 1;
        }
    }
    Ok(merges)
}

/// Runs the full two-level optimization from the all-singletons partition.
pub fn run(g: &Graph) -> Result<(Partition, GreedyStats)> {
    run_with(g, GreedyOptions::default())
}

pub fn run_with(g: &Graph, options: GreedyOptions) -> Result<(Partition, GreedyStats)> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::TooFewNodes(n));
    }
    let mut p = Partition::singletons(n);
    let mut stats = GreedyStats {
        node_passes: 0,
        merge_passes: 0,
        moves: 0,
        merges: 0,
        final_fp: fp(g, &p)?,
        trace: Vec::new(),
    };
    if options.record_trace {
        stats.trace.push(stats.final_fp.correct);
    }
    let mut rng = match options.order {
        SweepOrder::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        SweepOrder::Ascending => None,
    };
    let mut node_order: Vec<NodeId> = g.nodes().collect();
    loop {
        loop {
            if let Some(rng) = rng.as_mut() {
                node_order.shuffle(rng);
            }
            let trace = options.record_trace.then_some(&mut stats.trace);
            let moves = node_pass_ordered(g, &mut p, &node_order, trace)?;
            stats.node_passes += 1;
            stats.moves += moves;
            if moves == 0 {
                break;
            }
        }
        let mut comm_order: Vec<CommunityId> = p.community_ids().collect();
        if let Some(rng) = rng.as_mut() {
            comm_order.shuffle(rng);
        }
        let trace = options.record_trace.then_some(&mut stats.trace);
        let merges = merge_pass_ordered(g, &mut p, &comm_order, trace)?;
        stats.merge_passes += 1;
        stats.merges += merges;
        if merges == 0 {
            break;
        }
    }
    stats.final_fp = fp(g, &p)?;
    Ok((p, stats))
}
