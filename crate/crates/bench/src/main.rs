use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use saoo_bench::{config, BenchConfig, BenchError, Command, Invocation, Mode};

#[derive(Parser)]
#[command(name = "saoo-bench", version, about = "Optimizer benchmarks for SA-VQE and SA-OO-VQE")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Run configuration (key = value lines).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Comma-separated seed list, overrides the config.
    #[arg(long, global = true)]
    seeds: Option<String>,
    /// savqe (fixed orbitals) or saoo.
    #[arg(long, global = true)]
    mode: Option<String>,
    /// FCIDUMP file (or directory for scan), overrides the config.
    #[arg(long, global = true)]
    molecule: Option<PathBuf>,
    /// Comma-separated optimizer list, overrides the config.
    #[arg(long, global = true)]
    optimizer: Option<String>,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Minimize an analytic test function.
    Optimize,
    /// SA-VQE with fixed orbitals.
    Vqe,
    /// Full SA-OO-VQE.
    Saoo,
    /// Multi-optimizer, multi-seed comparison.
    Compare,
    /// One run per FCIDUMP in a directory.
    Scan,
}

fn invocation(cli: Cli) -> Result<Invocation, BenchError> {
    let mut cfg = match &cli.config {
        Some(path) => BenchConfig::load(path)?,
        None => BenchConfig::default(),
    };
    if let Some(seeds) = &cli.seeds {
        cfg.seeds = config::parse_seeds(seeds)?;
    }
    if let Some(mode) = &cli.mode {
        cfg.mode = mode.parse::<Mode>()?;
    }
    if let Some(opt) = &cli.optimizer {
        cfg.set("optimizer", opt, std::path::Path::new("."))?;
    }
    let command = match cli.command {
        Cmd::Optimize => Command::Optimize,
        Cmd::Vqe => Command::Vqe,
        Cmd::Saoo => Command::Saoo,
        Cmd::Compare => Command::Compare,
        Cmd::Scan => Command::Scan,
    };
    let mut scan_dir = None;
    if let Some(m) = cli.molecule {
        if command == Command::Scan {
            scan_dir = Some(m);
        } else {
            cfg.molecule = Some(m);
        }
    }
    Ok(Invocation { command, config: cfg, out_dir: cli.out, scan_dir })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match invocation(cli).and_then(|inv| saoo_bench::run(&inv)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("saoo-bench: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
