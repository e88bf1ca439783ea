//! Partition files: one `external_node_id community_id` line per node,
//! sorted by node id. Community ids are written canonically (numbered by
//! first appearance in node order); on read any token is accepted as a
//! community label.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{Graph, LabelMap};
use crate::quality::Partition;

pub fn write_partition<W: Write>(mut out: W, p: &Partition, labels: &LabelMap) -> Result<()> {
    for (u, c) in p.canonical_labels().into_iter().enumerate() {
        writeln!(out, "{} {}", labels.external(u), c)?;
    }
    out.flush()?;
    Ok(())
}

/// Lists at most this many offending nodes in an error message.
const MAX_LISTED: usize = 20;

fn listing(kind: &str, nodes: &[i64]) -> String {
    let shown: Vec<String> = nodes.iter().take(MAX_LISTED).map(i64::to_string).collect();
    let more = if nodes.len() > MAX_LISTED {
        format!(" and {} more", nodes.len() - MAX_LISTED)
    } else {
        String::new()
    };
    format!("{kind} nodes: {}{more}", shown.join(", "))
}

/// Reads a partition of `g`. Every node must appear exactly once and no
/// unknown node may appear; violations are reported with the offending
/// external ids.
pub fn read_partition<R: BufRead>(source: R, g: &Graph, labels: &LabelMap) -> Result<Partition> {
    let n = g.node_count();
    let mut community: Vec<Option<String>> = vec![None; n];
    let mut duplicate = Vec::new();
    let mut unknown = Vec::new();
    for (i, line) in source.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (Some(node), Some(label)) = (tokens.next(), tokens.next()) else {
            return Err(Error::Parse {
                line: i + 1,
                message: "expected `node_id community_id`".into(),
            });
        };
        let node: i64 = node.parse().map_err(|_| Error::Parse {
            line: i + 1,
            message: format!("node id `{node}` is not an integer"),
        })?;
        match labels.internal(node) {
            None => unknown.push(node),
            Some(u) if community[u].is_some() => duplicate.push(node),
            Some(u) => community[u] = Some(label.to_owned()),
        }
    }
    let missing: Vec<i64> = (0..n)
        .filter(|&u| community[u].is_none())
        .map(|u| labels.external(u))
        .collect();
    let problems: Vec<String> = [
        ("missing", missing),
        ("duplicate", duplicate),
        ("unknown", unknown),
    ]
    .into_iter()
    .filter(|(_, nodes)| !nodes.is_empty())
    .map(|(kind, mut nodes)| {
        nodes.sort_unstable();
        nodes.dedup();
        listing(kind, &nodes)
    })
    .collect();
    if !problems.is_empty() {
        return Err(Error::InvalidPartition(problems.join("; ")));
    }
    let mut ids: HashMap<String, usize> = HashMap::new();
    let dense: Vec<usize> = community
        .into_iter()
        .map(|label| {
            let next = ids.len();
            *ids.entry(label.expect("checked above")).or_insert(next)
        })
        .collect();
    Partition::from_labels(g, &dense)
}
