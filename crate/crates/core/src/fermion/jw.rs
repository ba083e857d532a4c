use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{spin_orbital, MolecularIntegrals, Pauli, PauliString, PauliSum, MAX_QUBITS};
use crate::error::{Error, Result};

const DROP_TOL: f64 = 1e-12;
const IMAG_TOL: f64 = 1e-10;

fn ladder(mode: usize, dagger: bool) -> PauliSum {
    let string = PauliString { x: 0, z: (1u64 << mode) - 1 };
    let sign = if dagger { -0.5 } else { 0.5 };
    PauliSum::from_terms([
        (string.with(mode, Pauli::X), Complex64::new(0.5, 0.0)),
        (string.with(mode, Pauli::Y), Complex64::new(0.0, sign)),
    ])
}

/// Jordan–Wigner image of `c_mode`.
pub fn annihilation(mode: usize) -> PauliSum {
    ladder(mode, false)
}

/// Jordan–Wigner image of `c_mode^dagger`.
pub fn creation(mode: usize) -> PauliSum {
    ladder(mode, true)
}

/// Product of ladder operators, leftmost first. Each entry is
/// `(mode, is_creation)`.
pub fn ladder_product(ops: &[(usize, bool)]) -> PauliSum {
    ops.iter().fold(PauliSum::identity(Complex64::new(1.0, 0.0)), |acc, &(mode, dagger)| {
        acc.mul(&ladder(mode, dagger))
    })
}

/// Hermitian qubit operator `sum_k w_k P_k` with real weights.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitHamiltonian {
    n_qubits: usize,
    terms: Vec<(PauliString, f64)>,
}

impl QubitHamiltonian {
    /// Converts a Pauli sum whose coefficients must be real. Terms below
    /// `1e-12` are dropped.
    pub fn from_pauli_sum(n_qubits: usize, sum: &PauliSum) -> Result<Self> {
        let mut terms = Vec::with_capacity(sum.len());
        for (p, c) in sum.terms() {
            if c.im.abs() > IMAG_TOL {
                return Err(Error::Algebra(c.im));
            }
            if p.support_len() > n_qubits {
                return Err(Error::Shape(format!("term {p} acts outside {n_qubits} qubits")));
            }
            if c.re.abs() >= DROP_TOL {
                terms.push((*p, c.re));
            }
        }
        Ok(Self { n_qubits, terms })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[(PauliString, f64)] {
        &self.terms
    }

    pub fn coefficient(&self, p: &PauliString) -> f64 {
        self.terms.iter().find(|(q, _)| q == p).map_or(0.0, |(_, w)| *w)
    }

    /// `H |psi>` for a dense amplitude vector.
    pub fn apply(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::default(); psi.len()];
        for (p, w) in &self.terms {
            for (b, a) in psi.iter().enumerate() {
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let (phase, target) = p.apply_to_basis(b);
                out[target] += phase * a * *w;
            }
        }
        out
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.n_qubits;
        let mut m = DMatrix::zeros(dim, dim);
        for (p, w) in &self.terms {
            for b in 0..dim {
                let (phase, target) = p.apply_to_basis(b);
                m[(target, b)] += phase * *w;
            }
        }
        m
    }
}

/// Maps the electronic Hamiltonian
/// `sum h_pq c+_p c_q + 1/2 sum g_pqrs c+_p c+_q c_s c_r + core`
/// (spin-summed over interleaved spin orbitals) to a qubit Hamiltonian.
pub fn jordan_wigner(integrals: &MolecularIntegrals) -> Result<QubitHamiltonian> {
    let n = integrals.n_orb;
    let nq = 2 * n;
    if nq > MAX_QUBITS {
        return Err(Error::Unsupported(format!("{nq} qubits exceeds the limit of {MAX_QUBITS}")));
    }
    let create: Vec<PauliSum> = (0..nq).map(creation).collect();
    let annihilate: Vec<PauliSum> = (0..nq).map(annihilation).collect();
    let create_pair = |a: usize, b: usize| create[a].mul(&create[b]);
    let annihilate_pair = |a: usize, b: usize| annihilate[a].mul(&annihilate[b]);
    let one = Complex64::new(1.0, 0.0);

    let mut sum = PauliSum::identity(Complex64::new(integrals.core_energy, 0.0));
    for p in 0..n {
        for q in 0..n {
            let h = integrals.h[(p, q)];
            if h == 0.0 {
                continue;
            }
            for down in [false, true] {
                let term = create[spin_orbital(p, down)].mul(&annihilate[spin_orbital(q, down)]);
                sum.add_scaled(&term, one * h);
            }
        }
    }

    let spins = [false, true];
    let mut creators = vec![None; nq * nq];
    let mut annihilators = vec![None; nq * nq];
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let g = integrals.g(p, q, r, s);
                    if g == 0.0 {
                        continue;
                    }
                    for sigma in spins {
                        for tau in spins {
                            let (a, b) = (spin_orbital(p, sigma), spin_orbital(q, tau));
                            let (c, d) = (spin_orbital(s, tau), spin_orbital(r, sigma));
                            if a == b || c == d {
                                continue;
                            }
                            let left: &PauliSum =
                                creators[a * nq + b].get_or_insert_with(|| create_pair(a, b));
                            let right: &PauliSum =
                                annihilators[c * nq + d].get_or_insert_with(|| annihilate_pair(c, d));
                            sum.add_scaled(&left.mul(right), one * (0.5 * g));
                        }
                    }
                }
            }
        }
    }
    QubitHamiltonian::from_pauli_sum(nq, &sum)
}
