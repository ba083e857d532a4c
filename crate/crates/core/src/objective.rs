//! The objective abstraction shared by every optimizer in the crate.

/// A scalar function of a real parameter vector.
///
/// Closures `Fn(&[f64]) -> f64` implement this automatically. Implementors
/// that can fail return `Err(message)`; optimizers then abort and hand back
/// whatever trace they have accumulated.
pub trait Objective: Sync {
    fn evaluate(&self, x: &[f64]) -> Result<f64, String>;
}

impl<F> Objective for F
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    fn evaluate(&self, x: &[f64]) -> Result<f64, String> {
        Ok(self(x))
    }
}

/// Adapter for closures that can fail.
pub struct Fallible<F>(pub F);

impl<F> Objective for Fallible<F>
where
    F: Fn(&[f64]) -> Result<f64, String> + Sync,
{
    fn evaluate(&self, x: &[f64]) -> Result<f64, String> {
        (self.0)(x)
    }
}

/// Progress report emitted after every internal optimizer step.
///
/// `evaluations` is the cumulative number of objective calls made by the
/// optimizer so far; `x` and `value` are the incumbent after the step.
#[derive(Debug, Clone, Copy)]
pub struct StepReport<'a> {
    pub evaluations: usize,
    pub iteration: usize,
    pub x: &'a [f64],
    pub value: f64,
}
