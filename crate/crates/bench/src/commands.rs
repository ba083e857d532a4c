//! Subcommand implementations.

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use saoo_core::de::{de_minimize, Bounds};
use saoo_core::fermion::{freeze_core, load_fcidump, MolecularIntegrals};
use saoo_core::local::{bfgs_minimize, gradient_descent};
use saoo_core::saoo::run_sa_oo_vqe;
use saoo_core::savqe::{AnsatzSpec, Optimizer};
use saoo_core::Error;

use crate::config::{BenchConfig, Mode};
use crate::output::{self, RunFailure, RunRecord, RunSummary};
use crate::BenchError;

type RunOutcome = Result<RunRecord, RunFailure>;

fn jobs(methods: &[String], seeds: &[u64]) -> Vec<(String, u64)> {
    methods.iter().flat_map(|m| seeds.iter().map(move |&s| (m.clone(), s))).collect()
}

/// Writes traces, per-run rows, the summary, failures and the manifest.
/// Fails only when every run failed.
fn finish(
    cfg: &BenchConfig,
    command: &str,
    methods: &[String],
    outcomes: Vec<RunOutcome>,
    out: &Path,
) -> Result<Vec<RunSummary>, BenchError> {
    let total = outcomes.len();
    let (runs, failures): (Vec<_>, Vec<_>) = outcomes.into_iter().partition(Result::is_ok);
    let runs: Vec<RunRecord> = runs.into_iter().map(Result::unwrap).collect();
    let failures: Vec<RunFailure> = failures.into_iter().map(|r| r.unwrap_err()).collect();
    for r in &runs {
        output::write_trace(&out.join(format!("trace_{}_{}.csv", r.method, r.seed)), &r.trace)?;
    }
    for f in &failures {
        log::warn!("{} seed {} failed: {}", f.method, f.seed, f.message);
    }
    let summaries: Vec<RunSummary> = methods
        .iter()
        .filter_map(|m| RunSummary::from_runs(m, runs.iter().filter(|r| &r.method == m)))
        .collect();
    output::write_runs(&out.join("runs.csv"), &runs)?;
    output::write_summary(&out.join("summary.csv"), &summaries)?;
    output::write_failures(&out.join("failures.csv"), &failures)?;
    let mut manifest = vec![
        ("command".to_string(), command.to_string()),
        ("methods".to_string(), methods.join(" ")),
    ];
    manifest.extend(cfg.manifest());
    output::write_manifest(&out.join("manifest.csv"), &manifest)?;
    if runs.is_empty() && total > 0 {
        return Err(BenchError::Runtime(format!("all {total} runs failed; see failures.csv")));
    }
    Ok(summaries)
}

/// Minimizes a built-in test function for every (optimizer, seed) pair.
/// Local methods start from a point drawn uniformly from the search box.
pub fn optimize(cfg: &BenchConfig, out: &Path) -> Result<Vec<RunSummary>, BenchError> {
    let function = cfg
        .function
        .ok_or_else(|| BenchError::Usage("optimize needs `function` (sphere, rosenbrock, rastrigin)".into()))?;
    let dim = cfg.dimension;
    if dim == 0 {
        return Err(BenchError::Usage("dimension must be positive".into()));
    }
    let methods = cfg.method_names()?;
    let w = function.half_width();
    let bounds = Bounds::uniform(dim, -w, w).map_err(|e| BenchError::Usage(e.to_string()))?;
    let objective = move |x: &[f64]| function.evaluate(x);

    let outcomes = jobs(&methods, &cfg.seeds)
        .into_par_iter()
        .map(|(method, seed)| {
            let fail = |e: Error| RunFailure { method: method.clone(), seed, message: e.to_string() };
            let optimizer = cfg.optimizer(&method, dim, seed).map_err(|e| RunFailure {
                method: method.clone(),
                seed,
                message: e.to_string(),
            })?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x0: Vec<f64> = (0..dim).map(|_| rng.random_range(-w..=w)).collect();
            let (value, evaluations, iterations, stop_reason, trace) = match &optimizer {
                Optimizer::De(de) => {
                    let r = de_minimize(&objective, &bounds, de).map_err(fail)?;
                    (r.best_fitness, r.evaluations, r.generations, r.stop_reason.name().to_string(), r.trace)
                }
                Optimizer::GradientDescent(local) | Optimizer::Bfgs(local) => {
                    let r = if matches!(optimizer, Optimizer::Bfgs(_)) {
                        bfgs_minimize(&objective, &x0, local)
                    } else {
                        gradient_descent(&objective, &x0, local)
                    }
                    .map_err(fail)?;
                    (r.value, r.evaluations, r.iterations, r.stop_reason.name().to_string(), r.trace)
                }
            };
            Ok(RunRecord {
                method,
                seed,
                evaluations,
                value,
                state_energies: Vec::new(),
                sorted_energies: Vec::new(),
                iterations,
                stop_reason,
                trace,
            })
        })
        .collect();
    finish(cfg, &format!("optimize {}", function.name()), &methods, outcomes, out)
}

fn load_molecule(cfg: &BenchConfig, path: &Path) -> Result<MolecularIntegrals, Error> {
    let ints = load_fcidump(path)?;
    if cfg.frozen_core > 0 {
        freeze_core(&ints, cfg.frozen_core)
    } else {
        Ok(ints)
    }
}

/// One SA-VQE (`Mode::SaVqe`, orbitals fixed) or SA-OO-VQE run.
fn molecular_run(
    cfg: &BenchConfig,
    ints: &MolecularIntegrals,
    ansatz: &AnsatzSpec,
    mode: Mode,
    method: &str,
    seed: u64,
) -> RunOutcome {
    let fail = |message: String| RunFailure { method: method.to_string(), seed, message };
    let optimizer = cfg.optimizer(method, ansatz.parameter_count(), seed).map_err(|e| fail(e.to_string()))?;
    let ensemble = cfg.ensemble().map_err(|e| fail(e.to_string()))?;
    let mut macro_cfg = cfg.macro_config();
    macro_cfg.optimize_orbitals = mode == Mode::SaOo;
    let res = run_sa_oo_vqe(ints, ansatz, &ensemble, &optimizer, &cfg.orbital_config(), &macro_cfg)
        .map_err(|e| fail(e.to_string()))?;
    let stop_reason = match (mode, res.converged) {
        (Mode::SaVqe, _) => "fixed_orbitals",
        (Mode::SaOo, true) => "converged",
        (Mode::SaOo, false) => "max_macro_iters",
    };
    Ok(RunRecord {
        method: method.to_string(),
        seed,
        evaluations: res.evaluations,
        value: res.e_sa,
        state_energies: res.state_energies,
        sorted_energies: res.sorted_energies,
        iterations: res.macro_trace.records.len(),
        stop_reason: stop_reason.to_string(),
        trace: res.trace,
    })
}

/// Runs every (optimizer, seed) pair on the configured molecule.
pub fn molecular(cfg: &BenchConfig, mode: Mode, out: &Path) -> Result<Vec<RunSummary>, BenchError> {
    let path = cfg.molecule.as_ref().ok_or_else(|| BenchError::Usage("no molecule configured".into()))?;
    let methods = cfg.method_names()?;
    cfg.ensemble()?;
    let ints = load_molecule(cfg, path).map_err(|e| BenchError::Usage(format!("{}: {e}", path.display())))?;
    let ansatz =
        AnsatzSpec::default_roster(ints.n_orb, ints.n_elec).map_err(|e| BenchError::Usage(e.to_string()))?;
    let outcomes = jobs(&methods, &cfg.seeds)
        .into_par_iter()
        .map(|(method, seed)| molecular_run(cfg, &ints, &ansatz, mode, &method, seed))
        .collect();
    finish(cfg, mode.name(), &methods, outcomes, out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanPoint {
    pub label: String,
    pub e0: f64,
    pub e1: f64,
    pub e_sa: f64,
    pub status: String,
}

fn scan_inputs(dir: &Path) -> Result<Vec<PathBuf>, BenchError> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| BenchError::Usage(format!("cannot read scan directory {}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry?.path();
        let hidden = path.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.starts_with('.'));
        if path.is_file() && !hidden {
            files.push(path);
        }
    }
    files.sort();
    if files.is_empty() {
        return Err(BenchError::Usage(format!("scan directory {} contains no files", dir.display())));
    }
    Ok(files)
}

fn scan_point(cfg: &BenchConfig, path: &Path, method: &str, seed: u64) -> Result<RunRecord, String> {
    let ints = load_molecule(cfg, path).map_err(|e| e.to_string())?;
    let ansatz = AnsatzSpec::default_roster(ints.n_orb, ints.n_elec).map_err(|e| e.to_string())?;
    molecular_run(cfg, &ints, &ansatz, cfg.mode, method, seed).map_err(|f| f.message)
}

/// One run per file in `dir` (sorted by name) with the first configured
/// optimizer and seed. Writes `pes.csv`.
pub fn scan(cfg: &BenchConfig, dir: &Path, out: &Path) -> Result<Vec<ScanPoint>, BenchError> {
    let files = scan_inputs(dir)?;
    let methods = cfg.method_names()?;
    cfg.ensemble()?;
    let method = methods[0].clone();
    let seed = cfg.seeds[0];
    let results: Vec<(String, Result<RunRecord, String>)> = files
        .par_iter()
        .map(|path| {
            let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            (label, scan_point(cfg, path, &method, seed))
        })
        .collect();

    let mut w = csv::Writer::from_path(out.join("pes.csv"))?;
    w.write_record(output::PES_HEADER)?;
    let mut points = Vec::with_capacity(results.len());
    for (label, res) in results {
        let point = match res {
            Ok(r) => {
                output::write_trace(&out.join(format!("trace_{label}.csv")), &r.trace)?;
                ScanPoint { label, e0: r.sorted_energies[0], e1: r.sorted_energies[1], e_sa: r.value, status: "ok".into() }
            }
            Err(message) => {
                log::warn!("scan point {label} failed: {message}");
                ScanPoint { label, e0: f64::NAN, e1: f64::NAN, e_sa: f64::NAN, status: format!("failed: {message}") }
            }
        };
        w.write_record([
            point.label.clone(),
            point.e0.to_string(),
            point.e1.to_string(),
            point.e_sa.to_string(),
            cfg.mode.name().to_string(),
            point.status.clone(),
        ])?;
        points.push(point);
    }
    w.flush()?;
    let mut manifest = vec![
        ("command".to_string(), "scan".to_string()),
        ("input".to_string(), dir.display().to_string()),
        ("method".to_string(), method),
        ("seed".to_string(), seed.to_string()),
    ];
    manifest.extend(cfg.manifest());
    output::write_manifest(&out.join("manifest.csv"), &manifest)?;
    Ok(points)
}
