//! Orbital rotations, state-averaged orbital optimization against fixed
//! RDMs, and the macro-iteration loop alternating it with SA-VQE.

mod kappa;
mod macro_loop;
mod orbital;

pub use kappa::{rotate_integrals, transform_integrals, KappaMatrix};
pub use macro_loop::{run_sa_oo_vqe, MacroConfig, MacroRecord, MacroTrace, SAOOVQEResult};
pub use orbital::{minimize_orbitals, sa_oo_energy, OrbitalOptConfig, OrbitalOptResult};
