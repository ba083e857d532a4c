//! Differential evolution.
//!
//! A run initializes a population inside the box, then repeats mutation,
//! crossover, boundary repair, evaluation and greedy selection until one of
//! the configured termination criteria fires. All random draws of a
//! generation are made serially from a single seeded ChaCha stream before
//! any objective call, so results do not depend on evaluation parallelism.

mod bounds;
mod crossover;
mod engine;
mod mutation;
mod population;
mod termination;

pub use bounds::{handle_bounds, BoundaryHandling, Bounds};
pub use crossover::{crossover, crossover_binomial, crossover_exponential, exponential_length, Crossover};
pub use engine::{de_minimize, de_minimize_observed, DEConfig, DEResult};
pub use mutation::{donor, draw_indices, mutate, MutationIndices, Strategy};
pub use population::{initialize_population, select, InitDistribution, Population, MIN_POPULATION};
pub use termination::{
    should_terminate, AbsTol, BestWorst, GenerationRecord, RelTol, RunningMean, StopReason, TerminationCriteria,
};
