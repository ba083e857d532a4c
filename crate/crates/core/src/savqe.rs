//! State-averaged VQE: one shared excitation unitary applied to two
//! orthogonal reference states, minimizing the weighted ensemble energy.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;

use crate::de::{de_minimize_observed, Bounds, DEConfig};
use crate::error::{Error, Result};
use crate::fermion::{spin_orbital, QubitHamiltonian};
use crate::local::{bfgs_minimize_observed, gradient_descent_observed, LocalOptConfig};
use crate::objective::{Objective, StepReport};
use crate::qsim::{measure_rdms, Excitation, ExcitationKind, RDMPair, StateVector};
use crate::trace::OptimizationTrace;

/// Ensemble weights: non-negative and summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSpec {
    weights: Vec<f64>,
}

impl EnsembleSpec {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.len() != 2 {
            return Err(Error::Unsupported(format!("{} ensemble states; only 2 are supported", weights.len())));
        }
        if weights.iter().any(|w| !(*w >= 0.0)) {
            return Err(Error::Config(format!("ensemble weights must be non-negative: {weights:?}")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Config(format!("ensemble weights sum to {total}, not 1")));
        }
        Ok(Self { weights })
    }

    pub fn equal() -> Self {
        Self { weights: vec![0.5, 0.5] }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn n_states(&self) -> usize {
        self.weights.len()
    }
}

impl Default for EnsembleSpec {
    fn default() -> Self {
        Self::equal()
    }
}

/// Ordered excitation generators, one parameter each.
#[derive(Debug, Clone, PartialEq)]
pub struct AnsatzSpec {
    excitations: Vec<Excitation>,
}

impl AnsatzSpec {
    pub fn new(excitations: Vec<Excitation>) -> Self {
        Self { excitations }
    }

    /// Spin-adapted singles followed by paired doubles, each over
    /// (occupied, virtual) spatial-orbital pairs in lexicographic order.
    /// Both spin components of a single share one angle, which keeps
    /// singlet references in the singlet sector.
    pub fn default_roster(n_orb: usize, n_elec: usize) -> Result<Self> {
        let n_occ = n_elec / 2;
        let pairs: Vec<(usize, usize)> =
            (0..n_occ).flat_map(|i| (n_occ..n_orb).map(move |a| (i, a))).collect();
        let mut excitations = Vec::with_capacity(2 * pairs.len());
        for &(occ, virt) in &pairs {
            excitations.push(Excitation::new(ExcitationKind::SpinAdaptedSingle { occ, virt })?);
        }
        for &(occ, virt) in &pairs {
            excitations.push(Excitation::new(ExcitationKind::PairedDouble { occ, virt })?);
        }
        Ok(Self { excitations })
    }

    pub fn excitations(&self) -> &[Excitation] {
        &self.excitations
    }

    pub fn parameter_count(&self) -> usize {
        self.excitations.len()
    }

    /// Applies `prod_k exp(theta_k G_k)`, first generator first.
    pub fn apply(&self, state: &mut StateVector, theta: &[f64]) -> Result<()> {
        if theta.len() != self.parameter_count() {
            return Err(Error::Shape(format!(
                "{} parameters for an ansatz with {}",
                theta.len(),
                self.parameter_count()
            )));
        }
        for (ex, &t) in self.excitations.iter().zip(theta) {
            ex.apply(state, t)?;
        }
        Ok(())
    }
}

fn ladder_on_basis(det: usize, mode: usize, dagger: bool) -> Option<(f64, usize)> {
    let bit = 1usize << mode;
    if (det & bit != 0) == dagger {
        return None;
    }
    let sign = if (det & (bit - 1)).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
    Some((sign, det ^ bit))
}

/// Hartree–Fock determinant and the singlet HOMO -> LUMO excitation
/// `(c+_{L up} c_{H up} + c+_{L down} c_{H down}) |HF> / sqrt 2`.
pub fn build_initial_states(n_orb: usize, n_elec: usize) -> Result<[StateVector; 2]> {
    if n_elec % 2 == 1 {
        return Err(Error::Unsupported(format!("open-shell reference with {n_elec} electrons")));
    }
    if n_elec == 0 || n_orb <= n_elec / 2 {
        return Err(Error::Unsupported(format!(
            "{n_elec} electrons in {n_orb} orbitals leave no HOMO -> LUMO excitation"
        )));
    }
    let nq = 2 * n_orb;
    let occupied: Vec<usize> = (0..n_elec).collect();
    let hf = StateVector::basis_state(nq, &occupied)?;
    let hf_index = (1usize << n_elec) - 1;
    let (homo, lumo) = (n_elec / 2 - 1, n_elec / 2);
    let mut amps = vec![num_complex::Complex64::default(); 1 << nq];
    for down in [false, true] {
        let (s1, d1) = ladder_on_basis(hf_index, spin_orbital(homo, down), false).expect("HOMO is occupied");
        let (s2, d2) = ladder_on_basis(d1, spin_orbital(lumo, down), true).expect("LUMO is empty");
        amps[d2] += s1 * s2 * std::f64::consts::FRAC_1_SQRT_2;
    }
    let excited = StateVector::from_amplitudes(nq, amps)?;
    Ok([hf, excited])
}

/// Ensemble energy at one parameter vector.
#[derive(Debug, Clone, PartialEq)]
pub struct SAEnergy {
    pub e_sa: f64,
    pub energies: Vec<f64>,
    pub states: Vec<StateVector>,
}

/// Applies the same `U(theta)` to every reference state and returns
/// `sum_k w_k <Psi_k|H|Psi_k>` with its components.
pub fn sa_energy(
    theta: &[f64],
    hamiltonian: &QubitHamiltonian,
    ansatz: &AnsatzSpec,
    initial_states: &[StateVector],
    ensemble: &EnsembleSpec,
) -> Result<SAEnergy> {
    if initial_states.len() != ensemble.n_states() {
        return Err(Error::Shape(format!(
            "{} reference states for {} weights",
            initial_states.len(),
            ensemble.n_states()
        )));
    }
    let evolved: Vec<(StateVector, f64)> = initial_states
        .par_iter()
        .map(|s0| {
            let mut s = s0.clone();
            ansatz.apply(&mut s, theta)?;
            let e = s.expectation(hamiltonian)?;
            Ok((s, e))
        })
        .collect::<Result<_>>()?;
    let (states, energies): (Vec<_>, Vec<_>) = evolved.into_iter().unzip();
    let e_sa = ensemble.weights().iter().zip(&energies).map(|(w, e)| w * e).sum();
    Ok(SAEnergy { e_sa, energies, states })
}

/// Inner optimizer for the ensemble energy.
#[derive(Debug, Clone, PartialEq)]
pub enum Optimizer {
    /// Searches `theta` in `[-pi, pi]^n`; the starting point is not used.
    De(DEConfig),
    GradientDescent(LocalOptConfig),
    Bfgs(LocalOptConfig),
}

impl Optimizer {
    pub fn label(&self) -> String {
        match self {
            Optimizer::De(cfg) => cfg.label(),
            Optimizer::GradientDescent(_) => "gd".into(),
            Optimizer::Bfgs(_) => "bfgs".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SAVQEResult {
    pub theta_star: Vec<f64>,
    pub e_sa: f64,
    /// Energies by reference lineage: entry `k` belongs to `U |Phi_k>`.
    pub state_energies: Vec<f64>,
    /// The same energies in ascending order.
    pub sorted_energies: Vec<f64>,
    pub final_states: Vec<StateVector>,
    pub rdms: Vec<RDMPair>,
    pub trace: OptimizationTrace,
    /// Number of ensemble-energy evaluations.
    pub evaluations: usize,
    pub stop_reason: String,
}

/// The ensemble energy as an optimizer objective. Remembers the component
/// energies of every evaluated point so trace events can report them.
pub struct SAObjective<'a> {
    hamiltonian: &'a QubitHamiltonian,
    ansatz: &'a AnsatzSpec,
    initial_states: &'a [StateVector],
    ensemble: &'a EnsembleSpec,
    calls: AtomicUsize,
    components: Mutex<HashMap<Vec<u64>, Vec<f64>>>,
}

fn key(x: &[f64]) -> Vec<u64> {
    x.iter().map(|v| v.to_bits()).collect()
}

impl<'a> SAObjective<'a> {
    pub fn new(
        hamiltonian: &'a QubitHamiltonian,
        ansatz: &'a AnsatzSpec,
        initial_states: &'a [StateVector],
        ensemble: &'a EnsembleSpec,
    ) -> Self {
        Self {
            hamiltonian,
            ansatz,
            initial_states,
            ensemble,
            calls: AtomicUsize::new(0),
            components: Mutex::new(HashMap::new()),
        }
    }

    pub fn calls(&self) -> usize {
        self.calls.load(Ordering::SeqCst)
    }

    pub fn components(&self, x: &[f64]) -> Option<Vec<f64>> {
        self.components.lock().expect("component cache poisoned").get(&key(x)).cloned()
    }
}

impl Objective for SAObjective<'_> {
    fn evaluate(&self, x: &[f64]) -> std::result::Result<f64, String> {
        self.calls.fetch_add(1, Ordering::SeqCst);
        let res = sa_energy(x, self.hamiltonian, self.ansatz, self.initial_states, self.ensemble)
            .map_err(|e| e.to_string())?;
        self.components.lock().expect("component cache poisoned").insert(key(x), res.energies);
        Ok(res.e_sa)
    }
}

/// Minimizes the ensemble energy. `theta0` defaults to zeros. Trace events
/// use `macro_index` and count evaluations from zero.
pub fn run_sa_vqe(
    hamiltonian: &QubitHamiltonian,
    ansatz: &AnsatzSpec,
    initial_states: &[StateVector],
    ensemble: &EnsembleSpec,
    optimizer: &Optimizer,
    theta0: Option<&[f64]>,
    macro_index: usize,
) -> Result<SAVQEResult> {
    let n_params = ansatz.parameter_count();
    let theta0 = match theta0 {
        Some(t) if t.len() != n_params => {
            return Err(Error::Shape(format!("theta0 has {} entries, ansatz needs {n_params}", t.len())));
        }
        Some(t) => t.to_vec(),
        None => vec![0.0; n_params],
    };
    if hamiltonian.n_qubits() % 2 == 1 {
        return Err(Error::Shape(format!("{} qubits is not a spin-orbital register", hamiltonian.n_qubits())));
    }
    let n_orb = hamiltonian.n_qubits() / 2;
    let objective = SAObjective::new(hamiltonian, ansatz, initial_states, ensemble);
    let mut trace = OptimizationTrace::new();
    let mut observer = |r: &StepReport| {
        let e_states = objective.components(r.x).unwrap_or_default();
        trace.step(r.evaluations, macro_index, r.value, e_states);
    };

    let (theta_star, evaluations, stop_reason) = if n_params == 0 {
        let value =
            objective.evaluate(&theta0).map_err(|message| Error::Objective { message, trace: Box::default() })?;
        observer(&StepReport { evaluations: 1, iteration: 0, x: &theta0, value });
        (theta0, 1, "no_parameters".to_string())
    } else {
        match optimizer {
            Optimizer::De(cfg) => {
                let bounds = Bounds::uniform(n_params, -std::f64::consts::PI, std::f64::consts::PI)?;
                let res = de_minimize_observed(&objective, &bounds, cfg, &mut observer)?;
                (res.best_vector, res.evaluations, res.stop_reason.name().to_string())
            }
            Optimizer::GradientDescent(cfg) => {
                let res = gradient_descent_observed(&objective, &theta0, cfg, &mut observer)?;
                (res.x, res.evaluations, res.stop_reason.name().to_string())
            }
            Optimizer::Bfgs(cfg) => {
                let res = bfgs_minimize_observed(&objective, &theta0, cfg, &mut observer)?;
                (res.x, res.evaluations, res.stop_reason.name().to_string())
            }
        }
    };
    debug_assert_eq!(evaluations, objective.calls());

    let fin = sa_energy(&theta_star, hamiltonian, ansatz, initial_states, ensemble)?;
    let rdms = fin.states.iter().map(|s| measure_rdms(s, n_orb)).collect::<Result<Vec<_>>>()?;
    let mut sorted_energies = fin.energies.clone();
    sorted_energies.sort_by(f64::total_cmp);
    Ok(SAVQEResult {
        theta_star,
        e_sa: fin.e_sa,
        state_energies: fin.energies,
        sorted_energies,
        final_states: fin.states,
        rdms,
        trace,
        evaluations,
        stop_reason,
    })
}
