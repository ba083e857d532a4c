use super::gradient::{fd_gradient_counted, GradientFailure};
use super::{norm, objective_error, Counted, LocalOptConfig, LocalResult, LocalStopReason};
use crate::error::{Error, Result};
use crate::objective::{Objective, StepReport};
use crate::trace::OptimizationTrace;

/// Fixed-step gradient descent `x <- x - lr * g(x)`.
///
/// A step that would raise the objective is rejected and the run stops
/// with [`LocalStopReason::NonImprovement`].
pub fn gradient_descent<O: Objective + ?Sized>(objective: &O, x0: &[f64], config: &LocalOptConfig) -> Result<LocalResult> {
    gradient_descent_observed(objective, x0, config, &mut |_| {})
}

pub fn gradient_descent_observed<O: Objective + ?Sized>(
    objective: &O,
    x0: &[f64],
    config: &LocalOptConfig,
    observer: &mut dyn FnMut(&StepReport),
) -> Result<LocalResult> {
    config.validate()?;
    let mut counted = Counted::new(objective);
    let mut trace = OptimizationTrace::new();
    let mut x = x0.to_vec();
    let mut value = counted.call(&x).map_err(|m| objective_error(m, &trace))?;
    trace.step(counted.evaluations, 0, value, Vec::new());
    observer(&StepReport { evaluations: counted.evaluations, iteration: 0, x: &x, value });

    let mut iterations = 0;
    let (stop_reason, gradient_norm) = loop {
        let grad = fd_gradient_counted(&mut counted, &x, config.grad_step).map_err(|e| match e {
            GradientFailure::Objective(m) => objective_error(m, &trace),
            GradientFailure::NonFinite(index) => Error::Gradient { index },
        })?;
        let gnorm = norm(&grad);
        if gnorm < config.grad_tol {
            break (LocalStopReason::GradTol, gnorm);
        }
        if iterations >= config.max_iters {
            break (LocalStopReason::MaxIters, gnorm);
        }
        let candidate: Vec<f64> = x.iter().zip(&grad).map(|(xi, gi)| xi - config.gd_learning_rate * gi).collect();
        let candidate_value = counted.call(&candidate).map_err(|m| objective_error(m, &trace))?;
        iterations += 1;
        if !(candidate_value <= value) {
            break (LocalStopReason::NonImprovement, gnorm);
        }
        x = candidate;
        value = candidate_value;
        trace.step(counted.evaluations, 0, value, Vec::new());
        observer(&StepReport { evaluations: counted.evaluations, iteration: iterations, x: &x, value });
    };

    Ok(LocalResult {
        x,
        value,
        gradient_norm,
        evaluations: counted.evaluations,
        iterations,
        stop_reason,
        trace,
    })
}
