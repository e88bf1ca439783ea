//! Greedy result against the exhaustive optimum on random tiny graphs.
//!
//!     cargo run --release --example oracle_small -- [graphs] [seed]

use fpcomm::oracle::{exhaustive_best_fp, DEFAULT_MAX_N};
use fpcomm::{fp, fpgreed, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let graphs: usize = args.next().map_or(Ok(20), |s| s.parse())?;
    let seed: u64 = args.next().map_or(Ok(1), |s| s.parse())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut optimal = 0;
    for i in 0..graphs {
        let n = rng.random_range(4..=9);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(0.4) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges)?;
        let (p, _) = fpgreed::run(&g)?;
        let greedy = fp(&g, &p)?;
        let best = exhaustive_best_fp(&g, DEFAULT_MAX_N)?;
        let mark = if greedy == best.best_fp {
            "optimal"
        } else {
            "below optimum"
        };
        if greedy == best.best_fp {
            optimal += 1;
        }
        println!(
            "#{i:<3} n={n} m={:<2} greedy {greedy:<6} best {:<6} ({} optimal partitions of {}) {mark}",
            g.edge_count(),
            best.best_fp,
            best.best_labels.len(),
            best.enumerated
        );
        if greedy != best.best_fp {
            println!(
                "      greedy  {:?}\n      optimum {:?}",
                p.communities(),
                best.best_partitions()[0]
            );
        }
    }
    println!("greedy optimal on {optimal}/{graphs}");
    Ok(())
}
