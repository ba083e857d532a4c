use nalgebra::{DMatrix, DVector};

use super::gradient::{fd_gradient_counted, GradientFailure};
use super::{norm, objective_error, Counted, LocalOptConfig, LocalResult, LocalStopReason};
use crate::error::{Error, Result};
use crate::objective::{Objective, StepReport};
use crate::trace::OptimizationTrace;

/// Backtracking reductions tried before the line search gives up.
pub const MAX_BACKTRACKS: usize = 40;

const CURVATURE_FLOOR: f64 = 1e-12;

/// BFGS iterate. [`Bfgs::step`] advances one iteration, which lets callers
/// inspect the inverse-Hessian approximation between steps.
pub struct Bfgs<'a, O: ?Sized> {
    counted: Counted<'a, O>,
    config: LocalOptConfig,
    x: DVector<f64>,
    value: f64,
    grad: DVector<f64>,
    inv_hessian: DMatrix<f64>,
    iterations: usize,
    trace: OptimizationTrace,
    stop_reason: Option<LocalStopReason>,
}

impl<'a, O: Objective + ?Sized> Bfgs<'a, O> {
    pub fn new(objective: &'a O, x0: &[f64], config: &LocalOptConfig) -> Result<Self> {
        config.validate()?;
        let mut counted = Counted::new(objective);
        let mut trace = OptimizationTrace::new();
        let value = counted.call(x0).map_err(|m| objective_error(m, &trace))?;
        let grad = gradient(&mut counted, x0, config.grad_step, &trace)?;
        trace.step(counted.evaluations, 0, value, Vec::new());
        let n = x0.len();
        Ok(Self {
            counted,
            config: config.clone(),
            x: DVector::from_column_slice(x0),
            value,
            grad: DVector::from_vec(grad),
            inv_hessian: DMatrix::identity(n, n),
            iterations: 0,
            trace,
            stop_reason: None,
        })
    }

    pub fn x(&self) -> &[f64] {
        self.x.as_slice()
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn gradient(&self) -> &[f64] {
        self.grad.as_slice()
    }

    pub fn inverse_hessian(&self) -> &DMatrix<f64> {
        &self.inv_hessian
    }

    pub fn evaluations(&self) -> usize {
        self.counted.evaluations
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn stop_reason(&self) -> Option<LocalStopReason> {
        self.stop_reason
    }

    /// Runs one iteration. Returns `Some(reason)` once the run has stopped;
    /// further calls are no-ops.
    pub fn step(&mut self) -> Result<Option<LocalStopReason>> {
        if self.stop_reason.is_some() {
            return Ok(self.stop_reason);
        }
        if self.grad.norm() < self.config.grad_tol {
            return Ok(self.stop(LocalStopReason::GradTol));
        }
        if self.iterations >= self.config.max_iters {
            return Ok(self.stop(LocalStopReason::MaxIters));
        }

        let mut direction = -(&self.inv_hessian * &self.grad);
        let mut slope = self.grad.dot(&direction);
        if !(slope < 0.0) {
            self.inv_hessian.fill_with_identity();
            direction = -self.grad.clone();
            slope = self.grad.dot(&direction);
        }

        let mut alpha = 1.0;
        let mut accepted = None;
        for _ in 0..=MAX_BACKTRACKS {
            let candidate = &self.x + alpha * &direction;
            let f = self.counted.call(candidate.as_slice()).map_err(|m| objective_error(m, &self.trace))?;
            if f <= self.value + self.config.armijo_c * alpha * slope {
                accepted = Some((candidate, f));
                break;
            }
            alpha *= self.config.backtrack_factor;
        }
        let Some((x_new, f_new)) = accepted else {
            return Ok(self.stop(LocalStopReason::LineSearchFailed));
        };

        let g_new = DVector::from_vec(gradient(&mut self.counted, x_new.as_slice(), self.config.grad_step, &self.trace)?);
        let s = &x_new - &self.x;
        let y = &g_new - &self.grad;
        let sy = s.dot(&y);
        if sy > CURVATURE_FLOOR {
            let rho = 1.0 / sy;
            let n = s.len();
            let left = DMatrix::identity(n, n) - rho * &s * y.transpose();
            let right = DMatrix::identity(n, n) - rho * &y * s.transpose();
            self.inv_hessian = &left * &self.inv_hessian * &right + rho * &s * s.transpose();
            // Round-off can break exact symmetry; restore it.
            self.inv_hessian = (&self.inv_hessian + self.inv_hessian.transpose()) * 0.5;
        }

        self.x = x_new;
        self.value = f_new;
        self.grad = g_new;
        self.iterations += 1;
        self.trace.step(self.counted.evaluations, 0, self.value, Vec::new());
        Ok(None)
    }

    fn stop(&mut self, reason: LocalStopReason) -> Option<LocalStopReason> {
        self.stop_reason = Some(reason);
        self.stop_reason
    }

    pub fn into_result(self) -> LocalResult {
        LocalResult {
            x: self.x.as_slice().to_vec(),
            value: self.value,
            gradient_norm: norm(self.grad.as_slice()),
            evaluations: self.counted.evaluations,
            iterations: self.iterations,
            stop_reason: self.stop_reason.unwrap_or(LocalStopReason::MaxIters),
            trace: self.trace,
        }
    }
}

fn gradient<O: Objective + ?Sized>(
    counted: &mut Counted<'_, O>,
    x: &[f64],
    h: f64,
    trace: &OptimizationTrace,
) -> Result<Vec<f64>> {
    fd_gradient_counted(counted, x, h).map_err(|e| match e {
        GradientFailure::Objective(m) => objective_error(m, trace),
        GradientFailure::NonFinite(index) => Error::Gradient { index },
    })
}

/// BFGS with Armijo backtracking and finite-difference gradients.
pub fn bfgs_minimize<O: Objective + ?Sized>(objective: &O, x0: &[f64], config: &LocalOptConfig) -> Result<LocalResult> {
    bfgs_minimize_observed(objective, x0, config, &mut |_| {})
}

pub fn bfgs_minimize_observed<O: Objective + ?Sized>(
    objective: &O,
    x0: &[f64],
    config: &LocalOptConfig,
    observer: &mut dyn FnMut(&StepReport),
) -> Result<LocalResult> {
    let mut bfgs = Bfgs::new(objective, x0, config)?;
    observer(&StepReport { evaluations: bfgs.evaluations(), iteration: 0, x: bfgs.x(), value: bfgs.value() });
    while bfgs.step()?.is_none() {
        observer(&StepReport {
            evaluations: bfgs.evaluations(),
            iteration: bfgs.iterations(),
            x: bfgs.x(),
            value: bfgs.value(),
        });
    }
    Ok(bfgs.into_result())
}
