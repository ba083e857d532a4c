//! Molecular integrals and their Jordan–Wigner qubit Hamiltonian.
//!
//! Spin orbitals are interleaved: mode `2p` is spatial orbital `p` with spin
//! up and mode `2p + 1` the same orbital with spin down. Qubit `j` in state
//! `|0>` means mode `j` is empty, so `n_j = (I - Z_j) / 2`.

mod fcidump;
mod integrals;
mod jw;
mod pauli;

pub use fcidump::{load_fcidump, parse_fcidump};
pub use integrals::{freeze_core, MolecularIntegrals};
pub use jw::{annihilation, creation, jordan_wigner, ladder_product, QubitHamiltonian};
pub use pauli::{Pauli, PauliString, PauliSum, MAX_QUBITS};

/// Mode index of spatial orbital `orbital` with spin `down`.
pub fn spin_orbital(orbital: usize, down: bool) -> usize {
    2 * orbital + down as usize
}
