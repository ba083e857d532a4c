//! CSV writers. Floats use Rust's shortest round-trip formatting.

use std::path::Path;

use saoo_core::OptimizationTrace;

use crate::BenchError;

pub const SUMMARY_HEADER: [&str; 7] = ["method", "evals_min", "evals_max", "evals_mean", "E_min", "E_max", "E_mean"];
pub const TRACE_HEADER: [&str; 6] = ["cum_evals", "scope", "macro_index", "e_sa", "e0", "e1"];
pub const PES_HEADER: [&str; 6] = ["coordinate_label", "e0", "e1", "e_sa", "mode", "status"];

/// Final outcome of one (method, seed) run.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub method: String,
    pub seed: u64,
    pub evaluations: usize,
    /// Final ensemble energy, or the objective value for test functions.
    pub value: f64,
    /// Energies by reference lineage.
    pub state_energies: Vec<f64>,
    pub sorted_energies: Vec<f64>,
    pub iterations: usize,
    pub stop_reason: String,
    pub trace: OptimizationTrace,
}

#[derive(Debug, Clone)]
pub struct RunFailure {
    pub method: String,
    pub seed: u64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub method: String,
    pub evals_min: usize,
    pub evals_max: usize,
    pub evals_mean: f64,
    pub e_min: f64,
    pub e_max: f64,
    pub e_mean: f64,
}

impl RunSummary {
    /// `None` when there are no successful runs.
    pub fn from_runs<'a>(method: &str, runs: impl IntoIterator<Item = &'a RunRecord>) -> Option<Self> {
        let runs: Vec<&RunRecord> = runs.into_iter().collect();
        if runs.is_empty() {
            return None;
        }
        let n = runs.len() as f64;
        let evals = runs.iter().map(|r| r.evaluations);
        let values = runs.iter().map(|r| r.value);
        Some(Self {
            method: method.to_string(),
            evals_min: evals.clone().min()?,
            evals_max: evals.clone().max()?,
            evals_mean: evals.map(|e| e as f64).sum::<f64>() / n,
            e_min: values.clone().fold(f64::INFINITY, f64::min),
            e_max: values.clone().fold(f64::NEG_INFINITY, f64::max),
            e_mean: values.sum::<f64>() / n,
        })
    }
}

fn energy(list: &[f64], i: usize) -> String {
    list.get(i).map(f64::to_string).unwrap_or_default()
}

pub fn write_trace(path: &Path, trace: &OptimizationTrace) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(TRACE_HEADER)?;
    for e in trace.events() {
        w.write_record([
            e.cumulative_evaluations.to_string(),
            e.scope.as_str().to_string(),
            e.macro_index.to_string(),
            e.e_sa.to_string(),
            energy(&e.e_states, 0),
            energy(&e.e_states, 1),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_summary(path: &Path, rows: &[RunSummary]) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(SUMMARY_HEADER)?;
    for s in rows {
        w.write_record([
            s.method.clone(),
            s.evals_min.to_string(),
            s.evals_max.to_string(),
            s.evals_mean.to_string(),
            s.e_min.to_string(),
            s.e_max.to_string(),
            s.e_mean.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Per-seed results. `state_*` columns follow reference lineage, `e0`/`e1`
/// are the same energies sorted ascending.
pub fn write_runs(path: &Path, runs: &[RunRecord]) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record([
        "method", "seed", "evaluations", "iterations", "value", "state_a", "state_b", "e0", "e1", "stop_reason",
    ])?;
    for r in runs {
        w.write_record([
            r.method.clone(),
            r.seed.to_string(),
            r.evaluations.to_string(),
            r.iterations.to_string(),
            r.value.to_string(),
            energy(&r.state_energies, 0),
            energy(&r.state_energies, 1),
            energy(&r.sorted_energies, 0),
            energy(&r.sorted_energies, 1),
            r.stop_reason.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_failures(path: &Path, failures: &[RunFailure]) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["method", "seed", "message"])?;
    for f in failures {
        w.write_record([f.method.clone(), f.seed.to_string(), f.message.clone()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_manifest(path: &Path, entries: &[(String, String)]) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["key", "value"])?;
    for (k, v) in entries {
        w.write_record([k, v])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(evals: usize, value: f64) -> RunRecord {
        RunRecord {
            method: "m".into(),
            seed: 0,
            evaluations: evals,
            value,
            state_energies: vec![],
            sorted_energies: vec![],
            iterations: 0,
            stop_reason: String::new(),
            trace: OptimizationTrace::new(),
        }
    }

    #[test]
    fn summary_statistics_are_ordered() {
        let runs = [rec(10, -1.0), rec(30, -0.5), rec(20, -2.0)];
        let s = RunSummary::from_runs("m", &runs).unwrap();
        assert_eq!((s.evals_min, s.evals_max, s.evals_mean), (10, 30, 20.0));
        assert_eq!((s.e_min, s.e_max), (-2.0, -0.5));
        assert!((s.e_mean + 3.5 / 3.0).abs() < 1e-15);
        assert!(RunSummary::from_runs("m", &[]).is_none());
    }

    #[test]
    fn floats_round_trip() {
        let x = -1.1373060357534002_f64;
        assert_eq!(x.to_string().parse::<f64>().unwrap(), x);
    }
}
