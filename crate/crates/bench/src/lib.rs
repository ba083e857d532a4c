//! Benchmark harness: multi-seed optimizer comparisons on analytic test
//! functions and molecular Hamiltonians, convergence traces and 1-D
//! potential energy scans. All output is CSV.

pub mod commands;
pub mod config;
pub mod output;

use std::path::PathBuf;

pub use config::{BenchConfig, Mode, TestFunction};

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("runtime error: {0}")]
    Runtime(String),
}

impl BenchError {
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Usage(_) => 2,
            BenchError::Runtime(_) => 1,
        }
    }
}

impl From<std::io::Error> for BenchError {
    fn from(e: std::io::Error) -> Self {
        BenchError::Runtime(e.to_string())
    }
}

impl From<csv::Error> for BenchError {
    fn from(e: csv::Error) -> Self {
        BenchError::Runtime(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Optimize,
    Vqe,
    Saoo,
    Compare,
    Scan,
}

#[derive(Debug, Clone)]
pub struct Invocation {
    pub command: Command,
    pub config: BenchConfig,
    pub out_dir: PathBuf,
    /// Input directory for `scan`; defaults to the configured molecule path.
    pub scan_dir: Option<PathBuf>,
}

pub fn run(inv: &Invocation) -> Result<(), BenchError> {
    std::fs::create_dir_all(&inv.out_dir)?;
    match inv.command {
        Command::Optimize => commands::optimize(&inv.config, &inv.out_dir).map(drop),
        Command::Vqe => commands::molecular(&inv.config, Mode::SaVqe, &inv.out_dir).map(drop),
        Command::Saoo => commands::molecular(&inv.config, Mode::SaOo, &inv.out_dir).map(drop),
        Command::Compare => commands::molecular(&inv.config, inv.config.mode, &inv.out_dir).map(drop),
        Command::Scan => {
            let dir = inv
                .scan_dir
                .clone()
                .or_else(|| inv.config.molecule.clone())
                .ok_or_else(|| BenchError::Usage("scan needs an input directory".into()))?;
            commands::scan(&inv.config, &dir, &inv.out_dir).map(drop)
        }
    }
}
