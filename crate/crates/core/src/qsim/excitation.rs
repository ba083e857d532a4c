use num_complex::Complex64;

use super::StateVector;
use crate::error::{Error, Result};
use crate::fermion::{ladder_product, spin_orbital, PauliString, PauliSum};

/// Fermionic excitation. Indices of `Single` and `Double` are spin orbitals;
/// the spin-adapted kinds take spatial orbitals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExcitationKind {
    /// `c+_to c_from`.
    Single { from: usize, to: usize },
    /// `c+_to.0 c+_to.1 c_from.1 c_from.0`.
    Double { from: (usize, usize), to: (usize, usize) },
    /// `sum_sigma c+_{virt sigma} c_{occ sigma}`.
    SpinAdaptedSingle { occ: usize, virt: usize },
    /// `c+_{virt up} c+_{virt down} c_{occ down} c_{occ up}`.
    PairedDouble { occ: usize, virt: usize },
}

/// Anti-Hermitian generator `G = tau - tau^dagger` stored as
/// `G = sum_k i a_k P_k` over mutually commuting Pauli words, so that
/// `exp(theta G)` factorizes exactly into Pauli rotations.
#[derive(Debug, Clone, PartialEq)]
pub struct Excitation {
    kind: ExcitationKind,
    terms: Vec<(PauliString, f64)>,
}

fn spin(mode: usize) -> i32 {
    if mode % 2 == 0 {
        1
    } else {
        -1
    }
}

impl Excitation {
    pub fn new(kind: ExcitationKind) -> Result<Self> {
        let tau = match kind {
            ExcitationKind::Single { from, to } => {
                if from == to {
                    return Err(Error::Mode(format!("single excitation {from} -> {to} is a number operator")));
                }
                if spin(from) != spin(to) {
                    return Err(Error::Config(format!("single excitation {from} -> {to} changes S_z")));
                }
                ladder_product(&[(to, true), (from, false)])
            }
            ExcitationKind::Double { from: (p, q), to: (r, s) } => {
                if p == q || r == s {
                    return Err(Error::Mode(format!("double excitation ({p},{q}) -> ({r},{s}) repeats a mode")));
                }
                if spin(p) + spin(q) != spin(r) + spin(s) {
                    return Err(Error::Config(format!("double excitation ({p},{q}) -> ({r},{s}) changes S_z")));
                }
                ladder_product(&[(r, true), (s, true), (q, false), (p, false)])
            }
            ExcitationKind::SpinAdaptedSingle { occ, virt } => {
                if occ == virt {
                    return Err(Error::Mode(format!("orbital {occ} excited onto itself")));
                }
                let mut t = PauliSum::new();
                for down in [false, true] {
                    let op = ladder_product(&[(spin_orbital(virt, down), true), (spin_orbital(occ, down), false)]);
                    t.add_scaled(&op, Complex64::new(1.0, 0.0));
                }
                t
            }
            ExcitationKind::PairedDouble { occ, virt } => {
                if occ == virt {
                    return Err(Error::Mode(format!("orbital {occ} excited onto itself")));
                }
                ladder_product(&[
                    (spin_orbital(virt, false), true),
                    (spin_orbital(virt, true), true),
                    (spin_orbital(occ, true), false),
                    (spin_orbital(occ, false), false),
                ])
            }
        };
        let mut generator = tau.clone();
        generator.add_scaled(&tau.adjoint(), Complex64::new(-1.0, 0.0));
        generator.simplify(1e-14);

        let mut terms = Vec::with_capacity(generator.len());
        for (p, c) in generator.terms() {
            if c.re.abs() > 1e-12 {
                return Err(Error::Algebra(c.re));
            }
            terms.push((*p, c.im));
        }
        for (i, (p, _)) in terms.iter().enumerate() {
            if terms[i + 1..].iter().any(|(q, _)| !p.commutes_with(q)) {
                return Err(Error::Unsupported(format!("generator words of {kind:?} do not commute")));
            }
        }
        Ok(Self { kind, terms })
    }

    pub fn kind(&self) -> ExcitationKind {
        self.kind
    }

    /// `(P_k, a_k)` with `G = sum_k i a_k P_k`.
    pub fn pauli_terms(&self) -> &[(PauliString, f64)] {
        &self.terms
    }

    /// Highest qubit touched plus one.
    pub fn support_len(&self) -> usize {
        self.terms.iter().map(|(p, _)| p.support_len()).max().unwrap_or(0)
    }

    /// `|psi> <- exp(theta G) |psi>`.
    pub fn apply(&self, state: &mut StateVector, theta: f64) -> Result<()> {
        if self.support_len() > state.n_qubits() {
            return Err(Error::Shape(format!(
                "excitation touches {} qubits, state has {}",
                self.support_len(),
                state.n_qubits()
            )));
        }
        // exp(i theta a P) = exp(-i (phi/2) P) with phi = -2 theta a.
        for (p, a) in &self.terms {
            state.apply_pauli_rotation(p, -2.0 * theta * a)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn zero_angle_is_identity() {
        let ex = Excitation::new(ExcitationKind::Double { from: (0, 1), to: (2, 3) }).unwrap();
        let mut s = StateVector::basis_state(4, &[0, 1]).unwrap();
        let before = s.clone();
        ex.apply(&mut s, 0.0).unwrap();
        assert_eq!(s, before);
    }

    #[test]
    fn quarter_turn_double_moves_the_pair() {
        let ex = Excitation::new(ExcitationKind::Double { from: (0, 1), to: (2, 3) }).unwrap();
        let mut s = StateVector::basis_state(4, &[0, 1]).unwrap();
        ex.apply(&mut s, FRAC_PI_2).unwrap();
        assert!((s.amplitudes()[0b1100].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn single_rotates_real_amplitudes() {
        let ex = Excitation::new(ExcitationKind::Single { from: 0, to: 2 }).unwrap();
        let mut s = StateVector::basis_state(3, &[0]).unwrap();
        ex.apply(&mut s, 0.3).unwrap();
        let a = s.amplitudes();
        assert!((a[0b001].re - 0.3f64.cos()).abs() < 1e-14);
        assert!((a[0b100].re - 0.3f64.sin()).abs() < 1e-14);
        assert!(a.iter().all(|c| c.im.abs() < 1e-14));
    }

    #[test]
    fn spin_changing_excitations_are_rejected() {
        assert!(Excitation::new(ExcitationKind::Single { from: 0, to: 1 }).is_err());
        assert!(Excitation::new(ExcitationKind::Double { from: (0, 2), to: (1, 3) }).is_err());
        assert!(Excitation::new(ExcitationKind::Double { from: (0, 0), to: (1, 3) }).is_err());
        assert!(Excitation::new(ExcitationKind::PairedDouble { occ: 1, virt: 1 }).is_err());
    }

    #[test]
    fn too_small_state_is_a_shape_error() {
        let ex = Excitation::new(ExcitationKind::PairedDouble { occ: 0, virt: 2 }).unwrap();
        let mut s = StateVector::basis_state(4, &[0, 1]).unwrap();
        assert!(matches!(ex.apply(&mut s, 0.1), Err(Error::Shape(_))));
    }
}
