//! Greedy node moves and community merges on edge-list files.
//!
//!     cargo run --release --example fpgreed_datasets -- data/karate.txt data/lesmis.txt
//!
//! Pass `--random <seed>` before the paths to shuffle the sweep order.

use std::fs::File;
use std::io::BufReader;

use fpcomm::fpgreed::{self, GreedyOptions, SweepOrder};
use fpcomm::graph::{load_edge_list, LoadOptions};
use fpcomm::modularity;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args: Vec<String> = std::env::args().skip(1).collect();
    let mut order = SweepOrder::Ascending;
    if args.first().map(String::as_str) == Some("--random") {
        let seed = args.get(1).ok_or("--random needs a seed")?.parse()?;
        order = SweepOrder::Random { seed };
        args.drain(..2);
    }
    if args.is_empty() {
        args = ["karate", "florentine", "lesmis", "football"]
            .map(|d| format!("data/{d}.txt"))
            .to_vec();
    }
    for path in args {
        let (g, _) = load_edge_list(BufReader::new(File::open(&path)?), LoadOptions::default())?;
        let start = std::time::Instant::now();
        let (p, stats) = fpgreed::run_with(
            &g,
            GreedyOptions {
                order,
                record_trace: false,
            },
        )?;
        let wall = start.elapsed();
        println!(
            "{path}: n={} m={} fp={:.4} Q={:.4} modules={} node passes={} merge passes={} moves={} merges={} ({wall:?})",
            g.node_count(),
            g.edge_count(),
            stats.final_fp.value(),
            modularity(&g, &p, 1.0)?,
            p.community_count(),
            stats.node_passes,
            stats.merge_passes,
            stats.moves,
            stats.merges,
        );
    }
    Ok(())
}
