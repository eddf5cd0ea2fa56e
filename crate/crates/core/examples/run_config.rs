//! Runs a JSON job file through the same pipeline as the `newton-dyn` binary.
//!
//! cargo run --release --example run_config -- configs/cubic_basins.json [out_dir]

use std::path::PathBuf;

use newton_dynamics::cli::{run_job, JobConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let config = args.next().unwrap_or_else(|| "configs/cubic_basins.json".into());
    let out = PathBuf::from(args.next().unwrap_or_else(|| "out".into()));

    let cfg = JobConfig::load(config.as_ref())?;
    let report = run_job(&cfg, &out)?;
    println!("{:#}", report.statistics);
    for a in &report.artifacts {
        println!("wrote {}", a.display());
    }
    Ok(())
}
