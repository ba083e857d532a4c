use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

/// Pauli word in symplectic form: qubit `j` carries `X` if bit `j` of `x` is
/// set, `Z` if bit `j` of `z` is set, and `Y` if both are. The word denotes
/// `i^{|x & z|} X^x Z^z`, which is the tensor product of the letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PauliString {
    pub x: u64,
    pub z: u64,
}

fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

impl PauliString {
    pub const IDENTITY: PauliString = PauliString { x: 0, z: 0 };

    pub fn single(qubit: usize, p: Pauli) -> Self {
        Self::IDENTITY.with(qubit, p)
    }

    pub fn with(mut self, qubit: usize, p: Pauli) -> Self {
        let bit = 1u64 << qubit;
        self.x &= !bit;
        self.z &= !bit;
        match p {
            Pauli::I => {}
            Pauli::X => self.x |= bit,
            Pauli::Y => {
                self.x |= bit;
                self.z |= bit;
            }
            Pauli::Z => self.z |= bit,
        }
        self
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        match ((self.x >> qubit) & 1, (self.z >> qubit) & 1) {
            (0, 0) => Pauli::I,
            (1, 0) => Pauli::X,
            (1, 1) => Pauli::Y,
            _ => Pauli::Z,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    /// Index one past the highest non-identity qubit.
    pub fn support_len(&self) -> usize {
        64 - (self.x | self.z).leading_zeros() as usize
    }

    fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// `self * other = phase * word`.
    pub fn mul(&self, other: &PauliString) -> (Complex64, PauliString) {
        let out = PauliString { x: self.x ^ other.x, z: self.z ^ other.z };
        let e = self.y_count() + other.y_count() + 2 * (self.z & other.x).count_ones() + 4 - out.y_count() % 4;
        (i_pow(e), out)
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()) % 2 == 0
    }

    /// `P|b> = phase |b'>`.
    pub fn apply_to_basis(&self, b: usize) -> (Complex64, usize) {
        let sign = if (self.z & b as u64).count_ones() % 2 == 1 { 2 } else { 0 };
        (i_pow(self.y_count() + sign), b ^ self.x as usize)
    }

    /// Label with qubit 0 first, padded to `n` letters.
    pub fn label(&self, n: usize) -> String {
        (0..n)
            .map(|j| match self.get(j) {
                Pauli::I => 'I',
                Pauli::X => 'X',
                Pauli::Y => 'Y',
                Pauli::Z => 'Z',
            })
            .collect()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label(self.support_len().max(1)))
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.len() > MAX_QUBITS {
            return Err(Error::Shape(format!("Pauli label longer than {MAX_QUBITS} qubits")));
        }
        s.chars().enumerate().try_fold(PauliString::IDENTITY, |acc, (j, c)| {
            let p = match c {
                'I' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                _ => return Err(Error::Shape(format!("invalid Pauli letter {c:?}"))),
            };
            Ok(acc.with(j, p))
        })
    }
}

/// Linear combination of Pauli words with complex coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PauliSum {
    terms: BTreeMap<PauliString, Complex64>,
}

impl PauliSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (PauliString, Complex64)>) -> Self {
        let mut sum = Self::new();
        for (p, c) in terms {
            sum.add_term(p, c);
        }
        sum
    }

    pub fn identity(c: Complex64) -> Self {
        Self::from_terms([(PauliString::IDENTITY, c)])
    }

    pub fn add_term(&mut self, p: PauliString, c: Complex64) {
        *self.terms.entry(p).or_default() += c;
    }

    pub fn add_scaled(&mut self, other: &PauliSum, scale: Complex64) {
        for (p, c) in &other.terms {
            self.add_term(*p, c * scale);
        }
    }

    pub fn mul(&self, other: &PauliSum) -> PauliSum {
        let mut out = PauliSum::new();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                let (phase, r) = p.mul(q);
                out.add_term(r, phase * a * b);
            }
        }
        out
    }

    /// Drops terms whose coefficient magnitude is below `tol`.
    pub fn simplify(&mut self, tol: f64) {
        self.terms.retain(|_, c| c.norm() >= tol);
    }

    pub fn adjoint(&self) -> PauliSum {
        PauliSum { terms: self.terms.iter().map(|(p, c)| (*p, c.conj())).collect() }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &PauliString) -> Complex64 {
        self.terms.get(p).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}
