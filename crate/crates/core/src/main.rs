use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use newton_dynamics::cli::{run_job, JobConfig, Mode};
use newton_dynamics::Error;

/// Run a Newton-dynamics job described by a JSON config.
#[derive(Parser, Debug)]
#[command(name = "newton-dyn", version)]
struct Args {
    /// basins | alpha-tree | alpha-random | ifs | param-scan | barna | ghost | compare
    mode: String,
    #[arg(long)]
    config: PathBuf,
    /// Output directory (default: the config's out_dir, else ".").
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the config's prng_seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

const VALIDATION: u8 = 1;
const RUNTIME: u8 = 2;

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { VALIDATION } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let prepared = (|| {
        let mode: Mode = args.mode.parse()?;
        let mut cfg = JobConfig::load(&args.config)?;
        match cfg.mode {
            Some(m) if m != mode => {
                return Err(Error::InvalidInput(format!(
                    "config is a '{}' job but '{}' was requested",
                    m.name(),
                    mode.name()
                )))
            }
            _ => cfg.mode = Some(mode),
        }
        if let Some(s) = args.seed {
            cfg.prng_seed = s;
        }
        if let Some(t) = args.threads {
            cfg.threads = Some(t);
        }
        cfg.validate()?;
        Ok(cfg)
    })();
    let cfg = match prepared {
        Ok(c) => c,
        Err(e) => {
            eprintln!("newton-dyn: {e}");
            return ExitCode::from(VALIDATION);
        }
    };

    let out = args.out.or_else(|| cfg.out_dir.clone()).unwrap_or_else(|| PathBuf::from("."));
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cfg.threads {
        pool = pool.num_threads(t);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("newton-dyn: thread pool: {e}");
            return ExitCode::from(RUNTIME);
        }
    };
    match pool.install(|| run_job(&cfg, &out)) {
        Ok(report) => {
            for a in &report.artifacts {
                println!("{}", a.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("newton-dyn: {} failed: {e}", cfg.mode.map_or("job", Mode::name));
            ExitCode::from(RUNTIME)
        }
    }
}
