//! Convergence traces.
//!
//! A trace is an ordered list of events. Each event carries the cumulative
//! number of objective evaluations, a scope tag and the energies at that
//! point. Filtering on the scope alone recovers the three usual views of a
//! run: energy per macro-iteration, energy per macro-iteration against
//! cumulative evaluations, and energy per optimizer step against cumulative
//! evaluations.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scope {
    OptimizerStep,
    SaOoVqeIteration,
}

impl Scope {
    pub fn as_str(self) -> &'static str {
        match self {
            Scope::OptimizerStep => "optimizer_step",
            Scope::SaOoVqeIteration => "sa_oo_vqe_iteration",
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "optimizer_step" => Ok(Scope::OptimizerStep),
            "sa_oo_vqe_iteration" => Ok(Scope::SaOoVqeIteration),
            other => Err(format!("unknown trace scope '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceEvent {
    pub cumulative_evaluations: usize,
    pub scope: Scope,
    pub macro_index: usize,
    pub e_sa: f64,
    pub e_states: Vec<f64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct OptimizationTrace {
    events: Vec<TraceEvent>,
}

impl OptimizationTrace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends an event.
    ///
    /// Panics if the cumulative evaluation count decreases or if a
    /// macro-iteration event does not follow its predecessor by exactly one;
    /// both indicate a bookkeeping bug in the caller.
    pub fn push(&mut self, event: TraceEvent) {
        if let Some(last) = self.events.last() {
            assert!(
                event.cumulative_evaluations >= last.cumulative_evaluations,
                "cumulative evaluations went backwards ({} -> {})",
                last.cumulative_evaluations,
                event.cumulative_evaluations
            );
        }
        if event.scope == Scope::SaOoVqeIteration {
            let expected = self.last_macro_index().map_or(event.macro_index, |m| m + 1);
            assert_eq!(event.macro_index, expected, "macro index must increase by one");
        }
        self.events.push(event);
    }

    pub fn step(&mut self, cumulative_evaluations: usize, macro_index: usize, e_sa: f64, e_states: Vec<f64>) {
        self.push(TraceEvent {
            cumulative_evaluations,
            scope: Scope::OptimizerStep,
            macro_index,
            e_sa,
            e_states,
        });
    }

    pub fn events(&self) -> &[TraceEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn last(&self) -> Option<&TraceEvent> {
        self.events.last()
    }

    pub fn filter(&self, scope: Scope) -> impl Iterator<Item = &TraceEvent> {
        self.events.iter().filter(move |e| e.scope == scope)
    }

    fn last_macro_index(&self) -> Option<usize> {
        self.filter(Scope::SaOoVqeIteration).last().map(|e| e.macro_index)
    }

    /// Appends all events of `other`, shifting their evaluation counts by
    /// `offset` and relabelling them with `macro_index`.
    pub fn extend_shifted(&mut self, other: &OptimizationTrace, offset: usize, macro_index: usize) {
        for e in &other.events {
            let mut e = e.clone();
            e.cumulative_evaluations += offset;
            e.macro_index = macro_index;
            self.push(e);
        }
    }
}
