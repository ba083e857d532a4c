use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fermion::{PauliString, QubitHamiltonian, MAX_QUBITS};

const IMAG_TOL: f64 = 1e-10;

/// `2^n` complex amplitudes; bit `j` of a basis index is qubit `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Computational basis state with the listed modes set to `|1>`.
    pub fn basis_state(n_qubits: usize, occupied: &[usize]) -> Result<Self> {
        if n_qubits > 30.min(MAX_QUBITS) {
            return Err(Error::Unsupported(format!("{n_qubits} qubits is too many for a dense statevector")));
        }
        let mut index = 0usize;
        for &m in occupied {
            if m >= n_qubits {
                return Err(Error::Mode(format!("mode {m} outside 0..{n_qubits}")));
            }
            if index >> m & 1 == 1 {
                return Err(Error::Mode(format!("mode {m} listed twice")));
            }
            index |= 1 << m;
        }
        let mut amps = vec![Complex64::default(); 1 << n_qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != 1 << n_qubits {
            return Err(Error::Shape(format!("{} amplitudes for {n_qubits} qubits", amps.len())));
        }
        Ok(Self { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.check_qubits(other.n_qubits)?;
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    fn check_qubits(&self, n: usize) -> Result<()> {
        if n != self.n_qubits {
            return Err(Error::Shape(format!("operand acts on {n} qubits, state has {}", self.n_qubits)));
        }
        Ok(())
    }

    fn check_support(&self, p: &PauliString) -> Result<()> {
        if p.support_len() > self.n_qubits {
            return Err(Error::Shape(format!("Pauli word {p} longer than {} qubits", self.n_qubits)));
        }
        Ok(())
    }

    /// `|psi> <- exp(-i theta/2 P) |psi>`.
    pub fn apply_pauli_rotation(&mut self, p: &PauliString, theta: f64) -> Result<()> {
        self.check_support(p)?;
        let (c, s) = ((0.5 * theta).cos(), (0.5 * theta).sin());
        let minus_i_sin = Complex64::new(0.0, -s);
        let flip = p.x as usize;
        if flip == 0 {
            for (b, a) in self.amps.iter_mut().enumerate() {
                let (phase, _) = p.apply_to_basis(b);
                *a *= c + minus_i_sin * phase;
            }
            return Ok(());
        }
        for b in 0..self.amps.len() {
            let partner = b ^ flip;
            if partner < b {
                continue;
            }
            let (to_partner, _) = p.apply_to_basis(b);
            let (to_b, _) = p.apply_to_basis(partner);
            let (ab, ap) = (self.amps[b], self.amps[partner]);
            self.amps[b] = ab * c + minus_i_sin * to_b * ap;
            self.amps[partner] = ap * c + minus_i_sin * to_partner * ab;
        }
        Ok(())
    }

    /// `|psi> <- P |psi>`.
    pub fn apply_pauli(&mut self, p: &PauliString) -> Result<()> {
        self.check_support(p)?;
        let mut out = vec![Complex64::default(); self.amps.len()];
        for (b, a) in self.amps.iter().enumerate() {
            let (phase, t) = p.apply_to_basis(b);
            out[t] = phase * a;
        }
        self.amps = out;
        Ok(())
    }

    /// `<psi|H|psi>` for a Hermitian qubit Hamiltonian.
    pub fn expectation(&self, h: &QubitHamiltonian) -> Result<f64> {
        self.check_qubits(h.n_qubits())?;
        let h_psi = h.apply(&self.amps);
        let e: Complex64 = self.amps.iter().zip(&h_psi).map(|(a, b)| a.conj() * b).sum();
        if e.im.abs() > IMAG_TOL {
            return Err(Error::Hermiticity(e.im));
        }
        Ok(e.re)
    }

    /// Expected total occupation `sum_j <n_j>`.
    pub fn particle_number(&self) -> f64 {
        self.amps.iter().enumerate().map(|(b, a)| b.count_ones() as f64 * a.norm_sqr()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermion::{Pauli, PauliSum};
    use proptest::prelude::{prop_assert, proptest};

    fn ham(terms: &[(&str, f64)], n: usize) -> QubitHamiltonian {
        let sum = PauliSum::from_terms(terms.iter().map(|(l, w)| (l.parse().unwrap(), Complex64::new(*w, 0.0))));
        QubitHamiltonian::from_pauli_sum(n, &sum).unwrap()
    }

    #[test]
    fn basis_states() {
        let vac = StateVector::basis_state(4, &[]).unwrap();
        assert_eq!(vac.amplitudes()[0], Complex64::new(1.0, 0.0));
        let s = StateVector::basis_state(4, &[0, 1]).unwrap();
        assert_eq!(s.amplitudes()[0b0011], Complex64::new(1.0, 0.0));
        assert_eq!(s.norm(), 1.0);
        assert!(matches!(StateVector::basis_state(4, &[4]), Err(Error::Mode(_))));
        assert!(matches!(StateVector::basis_state(4, &[1, 1]), Err(Error::Mode(_))));
    }

    #[test]
    fn rotation_examples() {
        let x = PauliString::single(0, Pauli::X);
        let mut s = StateVector::basis_state(1, &[]).unwrap();
        let before = s.clone();
        s.apply_pauli_rotation(&x, 0.0).unwrap();
        assert_eq!(s, before);
        s.apply_pauli_rotation(&x, std::f64::consts::PI).unwrap();
        assert!((s.amplitudes()[1].norm() - 1.0).abs() < 1e-15);
        assert!(s.amplitudes()[0].norm() < 1e-15);

        let mut t = StateVector::basis_state(1, &[]).unwrap();
        t.apply_pauli_rotation(&PauliString::single(0, Pauli::Z), 1.234).unwrap();
        assert!((t.amplitudes()[0].norm() - 1.0).abs() < 1e-15);
        let too_long: PauliString = "IIX".parse().unwrap();
        assert!(matches!(t.apply_pauli_rotation(&too_long, 0.1), Err(Error::Shape(_))));
    }

    #[test]
    fn expectation_examples() {
        let s = StateVector::basis_state(3, &[]).unwrap();
        assert_eq!(s.expectation(&ham(&[("Z", 1.0)], 3)).unwrap(), 1.0);
        let mut t = StateVector::basis_state(3, &[1]).unwrap();
        t.apply_pauli_rotation(&"XYZ".parse().unwrap(), 0.7).unwrap();
        assert!((t.expectation(&ham(&[("", 2.5)], 3)).unwrap() - 2.5).abs() < 1e-14);
        assert!(matches!(t.expectation(&ham(&[("Z", 1.0)], 2)), Err(Error::Shape(_))));
    }

    fn random_word(bits: u16) -> PauliString {
        PauliString { x: (bits & 0xf) as u64, z: ((bits >> 4) & 0xf) as u64 }
    }

    proptest! {
        #[test]
        fn rotation_angles_add(bits in 0u16..256, t1 in -3.0f64..3.0, t2 in -3.0f64..3.0, occ in 0usize..16) {
            let p = random_word(bits);
            let modes: Vec<usize> = (0..4).filter(|j| occ >> j & 1 == 1).collect();
            let mut a = StateVector::basis_state(4, &modes).unwrap();
            a.apply_pauli_rotation(&PauliString::single(0, Pauli::X), 0.4).unwrap();
            let mut b = a.clone();
            a.apply_pauli_rotation(&p, t1).unwrap();
            a.apply_pauli_rotation(&p, t2).unwrap();
            b.apply_pauli_rotation(&p, t1 + t2).unwrap();
            let diff: f64 = a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
            prop_assert!(diff < 1e-12);
        }

        #[test]
        fn expectation_ignores_global_phase(bits in 0u16..256, phi in -3.0f64..3.0, theta in -3.0f64..3.0) {
            let h = ham(&[("XXYZ", 0.3), ("ZIZI", -0.7), ("IYYI", 0.2)], 4);
            let mut s = StateVector::basis_state(4, &[0, 2]).unwrap();
            s.apply_pauli_rotation(&random_word(bits), theta).unwrap();
            let phased = StateVector::from_amplitudes(
                4,
                s.amplitudes().iter().map(|a| a * Complex64::from_polar(1.0, phi)).collect(),
            ).unwrap();
            prop_assert!((s.expectation(&h).unwrap() - phased.expectation(&h).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn thousand_rotations_keep_the_norm() {
        let mut s = StateVector::basis_state(5, &[0, 3]).unwrap();
        for k in 0..1000u64 {
            let p = PauliString { x: (k * 7 + 3) % 32, z: (k * 13 + 5) % 32 };
            s.apply_pauli_rotation(&p, 0.1 + k as f64 * 0.37).unwrap();
        }
        assert!((s.norm() - 1.0).abs() < 1e-12);
    }
}
