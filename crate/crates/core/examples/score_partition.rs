//! Load an edge list, score a few partitions and write one as a partition
//! file. A partition file given as second argument is scored too; without
//! one the greedy result is used.
//!
//!     cargo run --example score_partition -- data/florentine.txt [partition]

use std::fs::File;
use std::io::BufReader;

use fpcomm::graph::{load_edge_list, LoadOptions};
use fpcomm::partition_file::{read_partition, write_partition};
use fpcomm::{fp, fpgreed, modularity, Partition};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| "data/florentine.txt".into());
    let (g, labels) = load_edge_list(BufReader::new(File::open(&path)?), LoadOptions::default())?;
    println!("{path}: {} nodes, {} edges", g.node_count(), g.edge_count());

    let singletons = Partition::singletons(g.node_count());
    let whole = Partition::from_labels(&g, &vec![0; g.node_count()])?;
    let (name, chosen) = match args.next() {
        Some(file) => (
            file.clone(),
            read_partition(BufReader::new(File::open(&file)?), &g, &labels)?,
        ),
        None => ("fpgreed".to_owned(), fpgreed::run(&g)?.0),
    };

    for (name, p) in [
        ("singletons", &singletons),
        ("one community", &whole),
        (name.as_str(), &chosen),
    ] {
        let s = fp(&g, p)?;
        println!(
            "{name:>14}: fp = {s} = {:.4}, Q = {:.4}, {} communities",
            s.value(),
            modularity(&g, p, 1.0)?,
            p.community_count()
        );
    }

    println!("\n{name} partition file:");
    write_partition(std::io::stdout().lock(), &chosen, &labels)?;
    Ok(())
}
