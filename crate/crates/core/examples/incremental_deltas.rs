//! Move and merge deltas on two 4-cliques joined by nine edges: no single
//! node wants to switch sides, but merging the two communities pays off.
//!
//!     cargo run --example incremental_deltas

use fpcomm::quality::{apply_merge, cross_edges, merge_delta, move_delta};
use fpcomm::{fp, Graph, Partition};

fn main() -> fpcomm::Result<()> {
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
    let g = Graph::from_edges(8, &edges)?;
    let mut p = Partition::from_labels(&g, &[0, 0, 0, 0, 1, 1, 1, 1])?;
    println!("two communities: fp = {}", fp(&g, &p)?);

    for u in g.nodes() {
        let other = 1 - p.community_of(u);
        println!(
            "  move {u} to community {other}: delta {:+}",
            move_delta(&g, &p, u, other)?
        );
    }

    let e_cc = cross_edges(&g, &p, 0, 1)?;
    let delta = merge_delta(&p, 0, 1, e_cc)?;
    println!("cross edges = {e_cc}, merge delta = 2*{e_cc} - 4*4 = {delta:+}");
    apply_merge(&g, &mut p, 0, 1)?;
    println!("merged: fp = {}", fp(&g, &p)?);
    Ok(())
}
