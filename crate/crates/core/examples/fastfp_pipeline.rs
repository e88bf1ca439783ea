//! The fast heuristic step by step: candidate graph, seeds, merges.
//!
//!     cargo run --release --example fastfp_pipeline -- data/karate.txt [threshold]

use std::fs::File;
use std::io::BufReader;

use fpcomm::fastfp::{
    self, build_candidate_graph, extract_seeds, merge_communities, FastFpParams, Threshold,
};
use fpcomm::graph::{load_edge_list, LoadOptions};
use fpcomm::{fp, Partition};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| "data/karate.txt".into());
    let threshold = match args.next() {
        Some(t) => Threshold::new(t.parse()?)?,
        None => Threshold::default(),
    };
    let params = FastFpParams {
        threshold,
        ..Default::default()
    };
    let (g, labels) = load_edge_list(BufReader::new(File::open(&path)?), LoadOptions::default())?;
    println!(
        "{path}: {} nodes, {} edges, t = {}",
        g.node_count(),
        g.edge_count(),
        threshold.get()
    );

    let g2 = build_candidate_graph(&g, params.threshold, params.counting);
    println!("candidate graph: {} weighted edges", g2.edge_count());
    for e in g2.edges().iter().take(5) {
        println!(
            "  ({}, {}) weight {}",
            labels.external(e.u),
            labels.external(e.v),
            e.weight
        );
    }

    let seeds = extract_seeds(&g2);
    println!(
        "{} seeds, {} leftover nodes",
        seeds.communities.len(),
        seeds.leftovers.len()
    );
    for (seed, w) in seeds.communities.iter().zip(&seeds.seed_weights) {
        let ids: Vec<i64> = seed.iter().map(|&u| labels.external(u)).collect();
        println!("  weight {w}: {ids:?}");
    }

    let mut communities = seeds.communities.clone();
    communities.extend(seeds.leftovers.iter().map(|&u| vec![u]));
    let before = Partition::from_communities(&g, &communities)?;
    let merged = merge_communities(&g, communities)?;
    println!(
        "merges: {} (gains {:?})",
        merged.merge_gains.len(),
        merged.merge_gains
    );
    let after = Partition::from_communities(&g, &merged.communities)?;
    println!(
        "fp before merging {:.4}, after {:.4}",
        fp(&g, &before)?.value(),
        fp(&g, &after)?.value()
    );

    let (p, stats) = fastfp::run(&g, params)?;
    println!(
        "end to end: fp = {:.4}, {} modules, {:?}",
        stats.final_fp.value(),
        p.community_count(),
        stats.elapsed
    );
    Ok(())
}
