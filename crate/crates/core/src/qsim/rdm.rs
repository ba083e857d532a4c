use nalgebra::DMatrix;
use num_complex::Complex64;

use super::StateVector;
use crate::error::{Error, Result};
use crate::fermion::{spin_orbital, MolecularIntegrals};

/// Spin-summed reduced density matrices of a real state:
/// `D_pq = sum_s <c+_ps c_qs>` and
/// `d_pqrs = sum_{s,t} <c+_ps c+_qt c_st c_rs>`.
#[derive(Debug, Clone, PartialEq)]
pub struct RDMPair {
    pub n_orb: usize,
    pub one_rdm: DMatrix<f64>,
    two_rdm: Vec<f64>,
}

impl RDMPair {
    pub fn new(n_orb: usize, one_rdm: DMatrix<f64>, two_rdm: Vec<f64>) -> Result<Self> {
        if one_rdm.nrows() != n_orb || one_rdm.ncols() != n_orb || two_rdm.len() != n_orb.pow(4) {
            return Err(Error::Shape(format!("RDM dimensions do not match {n_orb} orbitals")));
        }
        Ok(Self { n_orb, one_rdm, two_rdm })
    }

    pub fn d(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        let n = self.n_orb;
        self.two_rdm[((p * n + q) * n + r) * n + s]
    }

    /// Flat tensor, index `((p n + q) n + r) n + s`.
    pub fn two_rdm(&self) -> &[f64] {
        &self.two_rdm
    }
}

fn annihilate(amps: &[Complex64], mode: usize) -> Vec<Complex64> {
    let bit = 1usize << mode;
    let below = bit - 1;
    let mut out = vec![Complex64::default(); amps.len()];
    for (b, a) in amps.iter().enumerate() {
        if b & bit != 0 {
            let sign = if (b & below).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            out[b ^ bit] = a * sign;
        }
    }
    out
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn measure_rdms(state: &StateVector, n_orb: usize) -> Result<RDMPair> {
    let nq = state.n_qubits();
    if nq % 2 == 1 || nq != 2 * n_orb {
        return Err(Error::Shape(format!("{nq} qubits cannot hold {n_orb} spatial orbitals")));
    }
    let singles: Vec<Vec<Complex64>> = (0..nq).map(|j| annihilate(state.amplitudes(), j)).collect();
    // pairs[a * nq + b] = c_b c_a |psi>
    let pairs: Vec<Vec<Complex64>> = (0..nq)
        .flat_map(|a| {
            let singles = &singles;
            (0..nq).map(move |b| annihilate(&singles[a], b))
        })
        .collect();

    let mut one = DMatrix::zeros(n_orb, n_orb);
    for p in 0..n_orb {
        for q in 0..n_orb {
            one[(p, q)] = [false, true]
                .iter()
                .map(|&s| dot(&singles[spin_orbital(p, s)], &singles[spin_orbital(q, s)]).re)
                .sum();
        }
    }

    let pair = |a: usize, b: usize| &pairs[a * nq + b];
    let mut two = vec![0.0; n_orb.pow(4)];
    for p in 0..n_orb {
        for q in 0..n_orb {
            for r in 0..n_orb {
                for s in 0..n_orb {
                    let mut acc = 0.0;
                    for sigma in [false, true] {
                        for tau in [false, true] {
                            let (ps, qt) = (spin_orbital(p, sigma), spin_orbital(q, tau));
                            let (rs, st) = (spin_orbital(r, sigma), spin_orbital(s, tau));
                            if ps == qt || rs == st {
                                continue;
                            }
                            acc += dot(pair(ps, qt), pair(rs, st)).re;
                        }
                    }
                    two[((p * n_orb + q) * n_orb + r) * n_orb + s] = acc;
                }
            }
        }
    }
    Ok(RDMPair { n_orb, one_rdm: one, two_rdm: two })
}

/// `core + sum h_pq D_pq + 1/2 sum g_pqrs d_pqrs`.
pub fn energy_from_rdms(integrals: &MolecularIntegrals, rdm: &RDMPair) -> Result<f64> {
    let n = integrals.n_orb;
    if rdm.n_orb != n {
        return Err(Error::Shape(format!("RDMs over {} orbitals, integrals over {n}", rdm.n_orb)));
    }
    let one: f64 = integrals.h.component_mul(&rdm.one_rdm).sum();
    let two: f64 = integrals.g_tensor().iter().zip(&rdm.two_rdm).map(|(g, d)| g * d).sum();
    Ok(integrals.core_energy + one + 0.5 * two)
}
