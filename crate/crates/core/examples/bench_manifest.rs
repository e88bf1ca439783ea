//! Drive the benchmark and run commands from code and print CSV tables.
//!
//!     cargo run --release --example bench_manifest -- data/bench_small.toml

use fpcomm::cli::{
    cmd_bench, cmd_run, AlgorithmArgs, AlgorithmChoice, BenchArgs, Format, InputArgs, RunArgs,
};
use fpcomm::report::{write_bench_csv, write_run_csv};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let manifest = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "data/bench_small.toml".into());
    let rows = cmd_bench(&BenchArgs {
        manifest: manifest.into(),
        jobs: 2,
        format: Format::Csv,
        out: None,
    })?;
    write_bench_csv(std::io::stdout().lock(), &rows)?;

    println!();
    let reports = cmd_run(&RunArgs {
        input: InputArgs {
            input: "data/karate.txt".into(),
            largest_component: false,
        },
        algorithm: AlgorithmChoice::Both,
        settings: AlgorithmArgs::default(),
        dataset: Some("karate".into()),
        out: None,
        format: Format::Csv,
        partition_out: None,
    })?;
    write_run_csv(std::io::stdout().lock(), &reports)?;
    Ok(())
}
