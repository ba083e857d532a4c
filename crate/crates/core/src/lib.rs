//! Differential evolution, local optimizers and a dense-statevector
//! implementation of the state-averaged orbital-optimized VQE.
//!
//! The crate is organised bottom-up:
//!
//! - [`de`]: the differential evolution engine (all mutation strategies,
//!   binomial/exponential crossover, boundary handling, termination).
//! - [`local`]: finite-difference gradients, gradient descent and BFGS.
//! - [`fermion`]: molecular integrals, FCIDUMP ingestion, frozen core and the
//!   Jordan–Wigner mapping onto a Pauli-sum Hamiltonian.
//! - [`qsim`]: statevector simulation, excitation rotations and RDMs.
//! - [`savqe`]: the state-averaged VQE objective and driver.
//! - [`saoo`]: orbital rotations, state-averaged orbital optimization and the
//!   full macro-iteration loop.

pub mod de;
pub mod error;
pub mod fermion;
pub mod local;
pub mod objective;
pub mod qsim;
pub mod saoo;
pub mod savqe;
pub mod trace;

pub use error::{Error, Result};
pub use objective::{Objective, StepReport};
pub use trace::{OptimizationTrace, Scope, TraceEvent};
