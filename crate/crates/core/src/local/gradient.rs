use super::Counted;
use crate::error::{Error, Result};
use crate::objective::Objective;

/// Central finite-difference gradient. Uses exactly `2 * x.len()` calls.
pub fn fd_gradient<O: Objective + ?Sized>(objective: &O, x: &[f64], h: f64) -> Result<Vec<f64>> {
    let mut counted = Counted::new(objective);
    fd_gradient_counted(&mut counted, x, h).map_err(|e| match e {
        GradientFailure::Objective(message) => Error::Objective { message, trace: Box::default() },
        GradientFailure::NonFinite(index) => Error::Gradient { index },
    })
}

pub(crate) enum GradientFailure {
    Objective(String),
    NonFinite(usize),
}

pub(crate) fn fd_gradient_counted<O: Objective + ?Sized>(
    counted: &mut Counted<'_, O>,
    x: &[f64],
    h: f64,
) -> std::result::Result<Vec<f64>, GradientFailure> {
    let mut probe = x.to_vec();
    let mut grad = Vec::with_capacity(x.len());
    for j in 0..x.len() {
        probe[j] = x[j] + h;
        let plus = counted.call(&probe).map_err(GradientFailure::Objective)?;
        probe[j] = x[j] - h;
        let minus = counted.call(&probe).map_err(GradientFailure::Objective)?;
        probe[j] = x[j];
        if !plus.is_finite() || !minus.is_finite() {
            return Err(GradientFailure::NonFinite(j));
        }
        grad.push((plus - minus) / (2.0 * h));
    }
    Ok(grad)
}
