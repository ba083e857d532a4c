use super::{rotate_integrals, KappaMatrix};
use crate::error::{Error, Result};
use crate::fermion::MolecularIntegrals;
use crate::local::{Bfgs, LocalOptConfig, LocalStopReason};
use crate::objective::Fallible;
use crate::qsim::{energy_from_rdms, RDMPair};
use crate::savqe::EnsembleSpec;

/// `sum_k w_k E_k(kappa)`, each `E_k` contracting the rotated integrals with
/// the fixed RDMs of state `k`.
pub fn sa_oo_energy(
    kappa: &KappaMatrix,
    base: &MolecularIntegrals,
    rdms: &[RDMPair],
    ensemble: &EnsembleSpec,
) -> Result<f64> {
    Ok(state_energies(kappa, base, rdms, ensemble)?.0)
}

fn state_energies(
    kappa: &KappaMatrix,
    base: &MolecularIntegrals,
    rdms: &[RDMPair],
    ensemble: &EnsembleSpec,
) -> Result<(f64, Vec<f64>)> {
    if rdms.len() != ensemble.n_states() {
        return Err(Error::Shape(format!("{} RDM sets for {} weights", rdms.len(), ensemble.n_states())));
    }
    let rotated = rotate_integrals(base, kappa)?;
    let energies = rdms.iter().map(|r| energy_from_rdms(&rotated, r)).collect::<Result<Vec<f64>>>()?;
    let e = ensemble.weights().iter().zip(&energies).map(|(w, e)| w * e).sum();
    Ok((e, energies))
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitalOptConfig {
    pub local: LocalOptConfig,
    /// Per-pair switch in [`KappaMatrix::pairs`] order; `false` pins the
    /// rotation angle at zero.
    pub pair_mask: Option<Vec<bool>>,
}

impl Default for OrbitalOptConfig {
    fn default() -> Self {
        Self { local: LocalOptConfig { max_iters: 200, ..LocalOptConfig::default() }, pair_mask: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitalOptResult {
    pub kappa: KappaMatrix,
    pub integrals: MolecularIntegrals,
    pub e_sa: f64,
    pub e_sa_initial: f64,
    /// Contracted energy of each state at the returned rotation.
    pub state_energies: Vec<f64>,
    pub gradient_norm: f64,
    pub evaluations: usize,
    pub iterations: usize,
    /// Set when the line search stalled; the returned rotation is the best
    /// one found, never worse than no rotation.
    pub warning: Option<String>,
}

/// Minimizes [`sa_oo_energy`] over the free rotation angles by BFGS.
pub fn minimize_orbitals(
    base: &MolecularIntegrals,
    rdms: &[RDMPair],
    ensemble: &EnsembleSpec,
    config: &OrbitalOptConfig,
) -> Result<OrbitalOptResult> {
    let n = base.n_orb;
    let pairs = KappaMatrix::pairs(n);
    let free: Vec<usize> = match &config.pair_mask {
        Some(mask) if mask.len() != pairs.len() => {
            return Err(Error::Shape(format!("pair mask has {} entries, expected {}", mask.len(), pairs.len())));
        }
        Some(mask) => (0..pairs.len()).filter(|&i| mask[i]).collect(),
        None => (0..pairs.len()).collect(),
    };
    let expand = |x: &[f64]| -> Result<KappaMatrix> {
        let mut params = vec![0.0; pairs.len()];
        for (&i, &v) in free.iter().zip(x) {
            params[i] = v;
        }
        KappaMatrix::from_params(n, params)
    };

    let (e0, energies0) = state_energies(&KappaMatrix::zeros(n), base, rdms, ensemble)?;
    let identity = |warning: Option<String>, evaluations: usize, gradient_norm: f64| OrbitalOptResult {
        kappa: KappaMatrix::zeros(n),
        integrals: base.clone(),
        e_sa: e0,
        e_sa_initial: e0,
        state_energies: energies0.clone(),
        gradient_norm,
        evaluations,
        iterations: 0,
        warning,
    };
    if free.is_empty() {
        return Ok(identity(None, 1, 0.0));
    }

    let objective = Fallible(|x: &[f64]| {
        let k = expand(x).map_err(|e| e.to_string())?;
        sa_oo_energy(&k, base, rdms, ensemble).map_err(|e| e.to_string())
    });
    let mut bfgs = Bfgs::new(&objective, &vec![0.0; free.len()], &config.local)?;
    let reason = loop {
        if let Some(reason) = bfgs.step()? {
            break reason;
        }
    };
    let warning =
        (reason == LocalStopReason::LineSearchFailed).then(|| "orbital line search failed; kept best rotation".into());
    if !(bfgs.value() < e0) {
        let g = bfgs.gradient().iter().map(|v| v * v).sum::<f64>().sqrt();
        return Ok(identity(warning, bfgs.evaluations(), g));
    }
    let result = bfgs.into_result();
    let kappa = expand(&result.x)?;
    let integrals = rotate_integrals(base, &kappa)?;
    let (e_sa, state_energies) = state_energies(&kappa, base, rdms, ensemble)?;
    Ok(OrbitalOptResult {
        kappa,
        integrals,
        e_sa,
        e_sa_initial: e0,
        state_energies,
        gradient_norm: result.gradient_norm,
        evaluations: result.evaluations,
        iterations: result.iterations,
        warning,
    })
}
