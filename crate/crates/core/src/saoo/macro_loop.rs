use super::{minimize_orbitals, OrbitalOptConfig};
use crate::error::{Error, Result};
use crate::fermion::{jordan_wigner, MolecularIntegrals};
use crate::savqe::{build_initial_states, run_sa_vqe, AnsatzSpec, EnsembleSpec, Optimizer};
use crate::trace::{OptimizationTrace, Scope, TraceEvent};

const SEED_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, PartialEq)]
pub struct MacroConfig {
    pub macro_tol: f64,
    pub max_macro_iters: usize,
    /// Start each SA-VQE stage from the previous optimum instead of zero.
    pub warm_start: bool,
    /// With `false` the orbitals are never rotated.
    pub optimize_orbitals: bool,
    pub max_consecutive_failures: usize,
}

impl Default for MacroConfig {
    fn default() -> Self {
        Self {
            macro_tol: 1e-4,
            max_macro_iters: 20,
            warm_start: true,
            optimize_orbitals: true,
            max_consecutive_failures: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MacroRecord {
    pub macro_index: usize,
    pub e_sa_vqe: f64,
    pub e_sa_oo: f64,
    /// Lineage-ordered state energies after the orbital step.
    pub e_states: Vec<f64>,
    pub cumulative_evaluations: usize,
    pub kappa_gradient_norm: f64,
    pub failure: Option<String>,
    pub oo_warning: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MacroTrace {
    pub records: Vec<MacroRecord>,
}

#[derive(Debug, Clone)]
pub struct SAOOVQEResult {
    pub e_sa: f64,
    pub state_energies: Vec<f64>,
    pub sorted_energies: Vec<f64>,
    pub theta: Vec<f64>,
    /// Integrals in the final orbital basis.
    pub integrals: MolecularIntegrals,
    pub macro_trace: MacroTrace,
    pub trace: OptimizationTrace,
    /// Ensemble-energy evaluations summed over every SA-VQE stage.
    pub evaluations: usize,
    pub converged: bool,
}

fn reseeded(optimizer: &Optimizer, macro_index: usize) -> Optimizer {
    match optimizer {
        Optimizer::De(cfg) => {
            let mut cfg = cfg.clone();
            cfg.seed ^= (macro_index as u64).wrapping_mul(SEED_STRIDE);
            Optimizer::De(cfg)
        }
        other => other.clone(),
    }
}

/// Alternates SA-VQE on the current orbitals with orbital optimization
/// against the resulting RDMs until the ensemble energy changes by less
/// than `macro_tol` between macro-iterations.
pub fn run_sa_oo_vqe(
    integrals: &MolecularIntegrals,
    ansatz: &AnsatzSpec,
    ensemble: &EnsembleSpec,
    optimizer: &Optimizer,
    oo_config: &OrbitalOptConfig,
    macro_config: &MacroConfig,
) -> Result<SAOOVQEResult> {
    if macro_config.max_macro_iters == 0 {
        return Err(Error::Config("at least one macro-iteration is required".into()));
    }
    let refs = build_initial_states(integrals.n_orb, integrals.n_elec)?;
    let mut current = integrals.clone();
    let mut theta: Option<Vec<f64>> = None;
    let mut trace = OptimizationTrace::new();
    let mut macro_trace = MacroTrace::default();
    let mut evaluations = 0usize;
    let mut consecutive_failures = 0usize;
    let mut last: Option<(f64, Vec<f64>)> = None;
    let mut converged = false;

    for m in 0..macro_config.max_macro_iters {
        let stage = jordan_wigner(&current).and_then(|hq| {
            let start = if macro_config.warm_start { theta.as_deref() } else { None };
            run_sa_vqe(&hq, ansatz, &refs, ensemble, &reseeded(optimizer, m), start, m)
        });
        let vqe = match stage {
            Ok(v) => v,
            Err(e) => {
                if let Error::Objective { trace: partial, .. } = &e {
                    trace.extend_shifted(partial, evaluations, m);
                    evaluations = trace.last().map_or(evaluations, |ev| ev.cumulative_evaluations);
                }
                consecutive_failures += 1;
                let message = e.to_string();
                log::warn!("macro-iteration {m}: SA-VQE failed: {message}");
                macro_trace.records.push(MacroRecord {
                    macro_index: m,
                    e_sa_vqe: f64::NAN,
                    e_sa_oo: f64::NAN,
                    e_states: Vec::new(),
                    cumulative_evaluations: evaluations,
                    kappa_gradient_norm: f64::NAN,
                    failure: Some(message.clone()),
                    oo_warning: None,
                });
                if consecutive_failures >= macro_config.max_consecutive_failures {
                    return Err(Error::MacroAborted {
                        failures: consecutive_failures,
                        last: message,
                        trace: Box::new(trace),
                    });
                }
                continue;
            }
        };
        trace.extend_shifted(&vqe.trace, evaluations, m);
        evaluations += vqe.evaluations;

        let (e_oo, e_states, grad_norm, warning) = if macro_config.optimize_orbitals {
            match minimize_orbitals(&current, &vqe.rdms, ensemble, oo_config) {
                Ok(oo) => {
                    current = oo.integrals;
                    (oo.e_sa, oo.state_energies, oo.gradient_norm, oo.warning)
                }
                Err(e) => {
                    consecutive_failures += 1;
                    let message = e.to_string();
                    log::warn!("macro-iteration {m}: orbital optimization failed: {message}");
                    if consecutive_failures >= macro_config.max_consecutive_failures {
                        return Err(Error::MacroAborted {
                            failures: consecutive_failures,
                            last: message,
                            trace: Box::new(trace),
                        });
                    }
                    (vqe.e_sa, vqe.state_energies.clone(), f64::NAN, Some(message))
                }
            }
        } else {
            (vqe.e_sa, vqe.state_energies.clone(), 0.0, None)
        };
        if warning.is_none() {
            consecutive_failures = 0;
        }
        if let Some(w) = &warning {
            log::warn!("macro-iteration {m}: {w}");
        }

        trace.push(TraceEvent {
            cumulative_evaluations: evaluations,
            scope: Scope::SaOoVqeIteration,
            macro_index: m,
            e_sa: e_oo,
            e_states: e_states.clone(),
        });
        macro_trace.records.push(MacroRecord {
            macro_index: m,
            e_sa_vqe: vqe.e_sa,
            e_sa_oo: e_oo,
            e_states: e_states.clone(),
            cumulative_evaluations: evaluations,
            kappa_gradient_norm: grad_norm,
            failure: None,
            oo_warning: warning,
        });
        theta = Some(vqe.theta_star);

        let previous = last.replace((e_oo, e_states)).map(|(e, _)| e);
        if let Some(prev) = previous {
            if (e_oo - prev).abs() < macro_config.macro_tol {
                converged = true;
                break;
            }
        }
        if !macro_config.optimize_orbitals {
            // Nothing changes between iterations without orbital updates.
            break;
        }
    }

    let (e_sa, state_energies) = last.ok_or_else(|| Error::MacroAborted {
        failures: consecutive_failures,
        last: "no macro-iteration completed".into(),
        trace: Box::new(trace.clone()),
    })?;
    let mut sorted_energies = state_energies.clone();
    sorted_energies.sort_by(f64::total_cmp);
    Ok(SAOOVQEResult {
        e_sa,
        state_energies,
        sorted_energies,
        theta: theta.unwrap_or_default(),
        integrals: current,
        macro_trace,
        trace,
        evaluations,
        converged,
    })
}
