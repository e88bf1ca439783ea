//! Performance against modularity on the two resolution-limit graphs: a ring
//! of 30 five-cliques and two 20-cliques bridged to two 5-cliques.
//!
//!     cargo run --example resolution_limit

use fpcomm::graph::{bridged_cliques, ring_of_cliques};
use fpcomm::{fp, fpgreed, modularity, Graph, Partition};

fn describe(name: &str, g: &Graph, p: &Partition) -> fpcomm::Result<()> {
    println!(
        "  {name:<22} modules={:>3}  fp={:.4}  Q={:.4}",
        p.community_count(),
        fp(g, p)?.value(),
        modularity(g, p, 1.0)?
    );
    Ok(())
}

fn main() -> fpcomm::Result<()> {
    let ring = ring_of_cliques(30, 5)?;
    println!(
        "ring of 30 K5 ({} nodes, {} edges)",
        ring.node_count(),
        ring.edge_count()
    );
    let cliques: Vec<usize> = (0..150).map(|u| u / 5).collect();
    let pairs: Vec<usize> = (0..150).map(|u| u / 10).collect();
    describe(
        "one per clique",
        &ring,
        &Partition::from_labels(&ring, &cliques)?,
    )?;
    describe(
        "adjacent cliques paired",
        &ring,
        &Partition::from_labels(&ring, &pairs)?,
    )?;
    describe("fpgreed", &ring, &fpgreed::run(&ring)?.0)?;

    let bridged = bridged_cliques(20, 5)?;
    println!(
        "\ntwo K20 + two K5 ({} nodes, {} edges)",
        bridged.node_count(),
        bridged.edge_count()
    );
    let block = |u: usize| if u < 40 { u / 20 } else { 2 + (u - 40) / 5 };
    let four: Vec<usize> = (0..50).map(block).collect();
    let small_merged: Vec<usize> = (0..50).map(|u| block(u).min(2)).collect();
    describe(
        "one per clique",
        &bridged,
        &Partition::from_labels(&bridged, &four)?,
    )?;
    describe(
        "K5 pair merged",
        &bridged,
        &Partition::from_labels(&bridged, &small_merged)?,
    )?;
    describe("fpgreed", &bridged, &fpgreed::run(&bridged)?.0)?;
    Ok(())
}
