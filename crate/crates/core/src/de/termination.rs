use crate::error::{Error, Result};

/// Per-generation statistics used by the termination tests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenerationRecord {
    pub generation: usize,
    /// Cumulative objective evaluations after this generation.
    pub evaluations: usize,
    pub best: f64,
    pub worst: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsTol {
    pub eps: f64,
    pub n_tol: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelTol {
    pub eps: f64,
    pub n_tol: usize,
    pub delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunningMean {
    pub eps: f64,
    pub n_mean: usize,
    pub n_tol: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BestWorst {
    pub eps: f64,
    pub n_tol: usize,
}

/// Composable stopping rules. Any subset may be enabled; the first one that
/// fires (in field order) ends the run.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TerminationCriteria {
    pub max_evals: Option<usize>,
    pub max_generations: Option<usize>,
    pub abs_tol: Option<AbsTol>,
    pub rel_tol: Option<RelTol>,
    pub running_mean: Option<RunningMean>,
    pub best_worst: Option<BestWorst>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StopReason {
    MaxEvaluations,
    MaxGenerations,
    AbsoluteTolerance,
    RelativeTolerance,
    RunningMean,
    BestWorst,
}

impl StopReason {
    pub fn name(self) -> &'static str {
        match self {
            StopReason::MaxEvaluations => "max_evals",
            StopReason::MaxGenerations => "max_generations",
            StopReason::AbsoluteTolerance => "abs_tol",
            StopReason::RelativeTolerance => "rel_tol",
            StopReason::RunningMean => "running_mean",
            StopReason::BestWorst => "best_worst",
        }
    }
}

impl std::fmt::Display for StopReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl TerminationCriteria {
    pub fn max_evals(n: usize) -> Self {
        Self { max_evals: Some(n), ..Self::default() }
    }

    pub fn max_generations(n: usize) -> Self {
        Self { max_generations: Some(n), ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let any = self.max_evals.is_some()
            || self.max_generations.is_some()
            || self.abs_tol.is_some()
            || self.rel_tol.is_some()
            || self.running_mean.is_some()
            || self.best_worst.is_some();
        if !any {
            return Err(Error::Config("no termination criterion set".into()));
        }
        let tol_ok = |eps: f64, windows: &[usize], name: &str| -> Result<()> {
            if !(eps > 0.0) {
                return Err(Error::Config(format!("{name}: tolerance must be positive, got {eps}")));
            }
            if windows.iter().any(|&w| w == 0) {
                return Err(Error::Config(format!("{name}: window lengths must be at least 1")));
            }
            Ok(())
        };
        if let Some(c) = self.abs_tol {
            tol_ok(c.eps, &[c.n_tol], "abs_tol")?;
        }
        if let Some(c) = self.rel_tol {
            tol_ok(c.eps, &[c.n_tol], "rel_tol")?;
            if !(c.delta > 0.0) {
                return Err(Error::Config("rel_tol: delta must be positive".into()));
            }
        }
        if let Some(c) = self.running_mean {
            tol_ok(c.eps, &[c.n_mean, c.n_tol], "running_mean")?;
        }
        if let Some(c) = self.best_worst {
            tol_ok(c.eps, &[c.n_tol], "best_worst")?;
        }
        Ok(())
    }
}

/// True when `holds(g)` is true for each of the last `n` generations.
fn sustained(history: &[GenerationRecord], n: usize, holds: impl Fn(usize) -> bool) -> bool {
    let len = history.len();
    len >= n && (len - n..len).all(holds)
}

fn improvement(history: &[GenerationRecord], g: usize) -> Option<f64> {
    (g >= 1).then(|| (history[g].best - history[g - 1].best).abs())
}

/// Checks the criteria against the generation history (index = generation).
pub fn should_terminate(history: &[GenerationRecord], criteria: &TerminationCriteria) -> Option<StopReason> {
    let last = history.last()?;
    if criteria.max_evals.is_some_and(|m| last.evaluations >= m) {
        return Some(StopReason::MaxEvaluations);
    }
    if criteria.max_generations.is_some_and(|m| last.generation >= m) {
        return Some(StopReason::MaxGenerations);
    }
    if let Some(c) = criteria.abs_tol {
        if sustained(history, c.n_tol, |g| improvement(history, g).is_some_and(|d| d < c.eps)) {
            return Some(StopReason::AbsoluteTolerance);
        }
    }
    if let Some(c) = criteria.rel_tol {
        let rel = |g: usize| improvement(history, g).map(|d| d / (history[g].best.abs() + c.delta));
        if sustained(history, c.n_tol, |g| rel(g).is_some_and(|r| r < c.eps)) {
            return Some(StopReason::RelativeTolerance);
        }
    }
    if let Some(c) = criteria.running_mean {
        let mean = |g: usize| -> Option<f64> {
            if g < c.n_mean {
                return None;
            }
            let total: f64 = (0..c.n_mean).map(|k| improvement(history, g - k).unwrap()).sum();
            Some(total / c.n_mean as f64)
        };
        if sustained(history, c.n_tol, |g| mean(g).is_some_and(|m| m < c.eps)) {
            return Some(StopReason::RunningMean);
        }
    }
    if let Some(c) = criteria.best_worst {
        if sustained(history, c.n_tol, |g| (history[g].worst - history[g].best).abs() < c.eps) {
            return Some(StopReason::BestWorst);
        }
    }
    None
}
