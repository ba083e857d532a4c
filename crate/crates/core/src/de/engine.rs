use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::bounds::{handle_bounds, BoundaryHandling, Bounds};
use super::crossover::{crossover, Crossover};
use super::mutation::{donor, draw_indices, Strategy};
use super::population::{initialize_population, select, InitDistribution, Population};
use super::termination::{should_terminate, GenerationRecord, StopReason, TerminationCriteria};
use crate::error::{Error, Result};
use crate::objective::{Objective, StepReport};
use crate::trace::OptimizationTrace;

#[derive(Debug, Clone, PartialEq)]
pub struct DEConfig {
    pub np: usize,
    pub f: f64,
    pub cr: f64,
    pub strategy: Strategy,
    pub crossover: Crossover,
    pub boundary: BoundaryHandling,
    pub p_best_fraction: f64,
    pub seed: u64,
    pub termination: TerminationCriteria,
    pub init: InitDistribution,
    /// Evaluate each generation's trials on the rayon pool. Results are
    /// bitwise identical either way.
    pub parallel: bool,
}

impl DEConfig {
    /// Common-practice defaults for a `dim`-dimensional problem:
    /// `Np = max(15, 5 D)`, `F = 0.5`, `Cr = 0.9`, `p = 0.11`.
    pub fn for_dimension(dim: usize) -> Self {
        Self {
            np: (5 * dim).max(15),
            f: 0.5,
            cr: 0.9,
            strategy: Strategy::Rand1,
            crossover: Crossover::Binomial,
            boundary: BoundaryHandling::Clamp,
            p_best_fraction: 0.11,
            seed: 0,
            termination: TerminationCriteria::max_generations(1000),
            init: InitDistribution::Uniform,
            parallel: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.f > 0.0 && self.f.is_finite()) {
            return Err(Error::Config(format!("scale factor F must be positive, got {}", self.f)));
        }
        if !(0.0..=1.0).contains(&self.cr) {
            return Err(Error::Config(format!("crossover rate must lie in [0, 1], got {}", self.cr)));
        }
        if !(self.p_best_fraction > 0.0 && self.p_best_fraction <= 1.0) {
            return Err(Error::Config(format!(
                "p-best fraction must lie in (0, 1], got {}",
                self.p_best_fraction
            )));
        }
        if self.np < self.strategy.min_population() {
            return Err(Error::Config(format!(
                "strategy {} needs a population of at least {}, got {}",
                self.strategy,
                self.strategy.min_population(),
                self.np
            )));
        }
        self.termination.validate()
    }

    /// Label such as `de_rand1_bin`.
    pub fn label(&self) -> String {
        format!("de_{}_{}", self.strategy.name(), self.crossover.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DEResult {
    pub best_vector: Vec<f64>,
    pub best_fitness: f64,
    pub evaluations: usize,
    pub generations: usize,
    pub stop_reason: StopReason,
    pub history: Vec<GenerationRecord>,
    pub trace: OptimizationTrace,
    pub final_population: Population,
}

fn fitness_of(value: std::result::Result<f64, String>) -> std::result::Result<f64, String> {
    value.map(|v| if v.is_finite() { v } else { f64::INFINITY })
}

fn evaluate_all<O: Objective + ?Sized>(
    objective: &O,
    xs: &[Vec<f64>],
    parallel: bool,
) -> std::result::Result<Vec<f64>, String> {
    if parallel {
        xs.par_iter().map(|x| fitness_of(objective.evaluate(x))).collect()
    } else {
        xs.iter().map(|x| fitness_of(objective.evaluate(x))).collect()
    }
}

/// Minimizes `objective` over `bounds` with differential evolution.
pub fn de_minimize<O: Objective + ?Sized>(objective: &O, bounds: &Bounds, config: &DEConfig) -> Result<DEResult> {
    de_minimize_observed(objective, bounds, config, &mut |_| {})
}

/// As [`de_minimize`], calling `observer` once per generation (including
/// the initial population) with the best member found so far.
pub fn de_minimize_observed<O: Objective + ?Sized>(
    objective: &O,
    bounds: &Bounds,
    config: &DEConfig,
    observer: &mut dyn FnMut(&StepReport),
) -> Result<DEResult> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut pop = initialize_population(bounds, config.np, config.init, &mut rng)?;
    let mut trace = OptimizationTrace::new();

    let abort = |message: String, trace: &OptimizationTrace| Error::Objective {
        message,
        trace: Box::new(trace.clone()),
    };

    pop.fitnesses = evaluate_all(objective, &pop.members, config.parallel).map_err(|m| abort(m, &trace))?;
    let mut evaluations = config.np;
    let mut best_vector = pop.members[pop.best_index()].clone();
    let mut best_fitness = pop.best_fitness();
    let mut history = vec![GenerationRecord {
        generation: 0,
        evaluations,
        best: best_fitness,
        worst: pop.worst_fitness(),
    }];
    trace.step(evaluations, 0, best_fitness, Vec::new());
    observer(&StepReport { evaluations, iteration: 0, x: &best_vector, value: best_fitness });

    let stop_reason = loop {
        if let Some(reason) = should_terminate(&history, &config.termination) {
            break reason;
        }
        // All random draws for the generation happen here, before any
        // objective call.
        let mut trials = Vec::with_capacity(pop.size());
        for i in 0..pop.size() {
            let idx = draw_indices(config.strategy, &pop, i, config.p_best_fraction, &mut rng)?;
            let v = donor(config.strategy, &pop, &idx, config.f);
            let mut u = crossover(config.crossover, &pop.members[i], &v, config.cr, &mut rng)?;
            handle_bounds(&mut u, bounds, config.boundary, &mut rng)?;
            trials.push(u);
        }
        let trial_fitness = evaluate_all(objective, &trials, config.parallel).map_err(|m| abort(m, &trace))?;
        evaluations += trials.len();
        pop = select(&pop, trials, &trial_fitness)?;

        let gen_best = pop.best_index();
        if pop.fitnesses[gen_best] < best_fitness {
            best_fitness = pop.fitnesses[gen_best];
            best_vector = pop.members[gen_best].clone();
        }
        history.push(GenerationRecord {
            generation: pop.generation,
            evaluations,
            best: pop.best_fitness(),
            worst: pop.worst_fitness(),
        });
        trace.step(evaluations, 0, best_fitness, Vec::new());
        observer(&StepReport {
            evaluations,
            iteration: pop.generation,
            x: &best_vector,
            value: best_fitness,
        });
    };

    Ok(DEResult {
        best_vector,
        best_fitness,
        evaluations,
        generations: pop.generation,
        stop_reason,
        history,
        trace,
        final_population: pop,
    })
}
