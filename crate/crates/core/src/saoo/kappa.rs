use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::fermion::MolecularIntegrals;

/// Real antisymmetric orbital-rotation generator, parameterized by its
/// strictly lower triangle in row order `(1,0), (2,0), (2,1), (3,0), ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct KappaMatrix {
    n_orb: usize,
    params: Vec<f64>,
}

impl KappaMatrix {
    pub fn zeros(n_orb: usize) -> Self {
        Self { n_orb, params: vec![0.0; Self::parameter_count(n_orb)] }
    }

    pub fn from_params(n_orb: usize, params: Vec<f64>) -> Result<Self> {
        if params.len() != Self::parameter_count(n_orb) {
            return Err(Error::Shape(format!(
                "{} rotation parameters for {n_orb} orbitals, expected {}",
                params.len(),
                Self::parameter_count(n_orb)
            )));
        }
        Ok(Self { n_orb, params })
    }

    pub fn parameter_count(n_orb: usize) -> usize {
        n_orb * n_orb.saturating_sub(1) / 2
    }

    /// `(p, q)` with `p > q`, in parameter order.
    pub fn pairs(n_orb: usize) -> Vec<(usize, usize)> {
        (1..n_orb).flat_map(|p| (0..p).map(move |q| (p, q))).collect()
    }

    pub fn n_orb(&self) -> usize {
        self.n_orb
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        let mut k = DMatrix::zeros(self.n_orb, self.n_orb);
        for (&(p, q), &v) in Self::pairs(self.n_orb).iter().zip(&self.params) {
            k[(p, q)] = v;
            k[(q, p)] = -v;
        }
        k
    }

    /// `U = exp(-kappa)`.
    pub fn rotation(&self) -> DMatrix<f64> {
        (-self.matrix()).exp()
    }
}

/// `h' = U^T h U` and the matching transform of every index of `g`.
pub fn transform_integrals(integrals: &MolecularIntegrals, u: &DMatrix<f64>) -> Result<MolecularIntegrals> {
    let n = integrals.n_orb;
    if u.nrows() != n || u.ncols() != n {
        return Err(Error::Shape(format!("{}x{} rotation for {n} orbitals", u.nrows(), u.ncols())));
    }
    let h = u.transpose() * &integrals.h * u;
    let mut g = integrals.g_tensor().to_vec();
    let mut scratch = vec![0.0; g.len()];
    let n2 = n * n;
    let n3 = n2 * n;
    // Contract one index at a time; `stride` selects which.
    for stride in [n3, n2, n, 1] {
        for (idx, out) in scratch.iter_mut().enumerate() {
            let p = (idx / stride) % n;
            let base = idx - p * stride;
            *out = (0..n).map(|a| u[(a, p)] * g[base + a * stride]).sum();
        }
        std::mem::swap(&mut g, &mut scratch);
    }
    MolecularIntegrals::new(n, integrals.n_elec, integrals.ms2, integrals.core_energy, h, g)
}

pub fn rotate_integrals(integrals: &MolecularIntegrals, kappa: &KappaMatrix) -> Result<MolecularIntegrals> {
    if kappa.n_orb() != integrals.n_orb {
        return Err(Error::Shape(format!(
            "rotation over {} orbitals, integrals over {}",
            kappa.n_orb(),
            integrals.n_orb
        )));
    }
    transform_integrals(integrals, &kappa.rotation())
}
