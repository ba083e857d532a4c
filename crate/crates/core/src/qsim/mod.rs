//! Dense statevector simulation: Pauli rotations, fermionic excitation
//! unitaries, expectation values and spin-summed reduced density matrices.

mod excitation;
mod rdm;
mod state;

pub use excitation::{Excitation, ExcitationKind};
pub use rdm::{energy_from_rdms, measure_rdms, RDMPair};
pub use state::StateVector;
