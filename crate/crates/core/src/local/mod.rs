//! Gradient-based local optimizers driven by central finite differences.

mod bfgs;
mod gd;
mod gradient;

pub use bfgs::{bfgs_minimize, bfgs_minimize_observed, Bfgs, MAX_BACKTRACKS};
pub use gd::{gradient_descent, gradient_descent_observed};
pub use gradient::fd_gradient;

use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::trace::OptimizationTrace;

#[derive(Debug, Clone, PartialEq)]
pub struct LocalOptConfig {
    /// Central-difference half step.
    pub grad_step: f64,
    pub max_iters: usize,
    pub grad_tol: f64,
    pub gd_learning_rate: f64,
    pub armijo_c: f64,
    pub backtrack_factor: f64,
}

impl Default for LocalOptConfig {
    fn default() -> Self {
        Self {
            grad_step: 1e-6,
            max_iters: 500,
            grad_tol: 1e-6,
            gd_learning_rate: 0.1,
            armijo_c: 1e-4,
            backtrack_factor: 0.5,
        }
    }
}

impl LocalOptConfig {
    pub fn validate(&self) -> Result<()> {
        let open_unit = |v: f64| v > 0.0 && v < 1.0;
        if !(self.grad_step > 0.0) {
            return Err(Error::Config(format!("gradient step must be positive, got {}", self.grad_step)));
        }
        if !(self.grad_tol > 0.0) {
            return Err(Error::Config(format!("gradient tolerance must be positive, got {}", self.grad_tol)));
        }
        if !open_unit(self.armijo_c) {
            return Err(Error::Config(format!("armijo constant must lie in (0, 1), got {}", self.armijo_c)));
        }
        if !open_unit(self.backtrack_factor) {
            return Err(Error::Config(format!(
                "backtrack factor must lie in (0, 1), got {}",
                self.backtrack_factor
            )));
        }
        if !(self.gd_learning_rate >= 0.0 && self.gd_learning_rate.is_finite()) {
            return Err(Error::Config(format!("learning rate must be non-negative, got {}", self.gd_learning_rate)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LocalStopReason {
    GradTol,
    MaxIters,
    NonImprovement,
    LineSearchFailed,
}

impl LocalStopReason {
    pub fn name(self) -> &'static str {
        match self {
            LocalStopReason::GradTol => "grad_tol",
            LocalStopReason::MaxIters => "max_iters",
            LocalStopReason::NonImprovement => "non_improvement",
            LocalStopReason::LineSearchFailed => "line_search_failed",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub gradient_norm: f64,
    pub evaluations: usize,
    pub iterations: usize,
    pub stop_reason: LocalStopReason,
    pub trace: OptimizationTrace,
}

/// Objective wrapper that counts every call.
pub(crate) struct Counted<'a, O: ?Sized> {
    objective: &'a O,
    pub(crate) evaluations: usize,
}

impl<'a, O: Objective + ?Sized> Counted<'a, O> {
    pub(crate) fn new(objective: &'a O) -> Self {
        Self { objective, evaluations: 0 }
    }

    pub(crate) fn call(&mut self, x: &[f64]) -> std::result::Result<f64, String> {
        self.evaluations += 1;
        self.objective.evaluate(x)
    }
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|g| g * g).sum::<f64>().sqrt()
}

pub(crate) fn objective_error(message: String, trace: &OptimizationTrace) -> Error {
    Error::Objective { message, trace: Box::new(trace.clone()) }
}
