use rand::Rng;
use rand_distr::{Distribution, Normal};

use super::bounds::Bounds;
use crate::error::{Error, Result};

/// Smallest population every strategy can work with.
pub const MIN_POPULATION: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitDistribution {
    Uniform,
    /// Per-component normal draws, clamped into the box.
    Normal { mean: f64, sigma: f64 },
}

/// One generation of candidate vectors and their fitnesses.
///
/// Unevaluated fitnesses are NaN.
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    pub generation: usize,
    pub members: Vec<Vec<f64>>,
    pub fitnesses: Vec<f64>,
}

impl Population {
    pub fn from_members(members: Vec<Vec<f64>>) -> Result<Self> {
        if members.len() < MIN_POPULATION {
            return Err(Error::Config(format!(
                "population of {} is below the minimum of {MIN_POPULATION}",
                members.len()
            )));
        }
        let d = members[0].len();
        if members.iter().any(|m| m.len() != d) {
            return Err(Error::Shape("population members differ in dimension".into()));
        }
        let np = members.len();
        Ok(Self {
            generation: 0,
            members,
            fitnesses: vec![f64::NAN; np],
        })
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn dim(&self) -> usize {
        self.members.first().map_or(0, Vec::len)
    }

    pub fn is_evaluated(&self) -> bool {
        self.fitnesses.iter().all(|f| !f.is_nan())
    }

    /// Index of the lowest fitness; ties go to the lowest index.
    pub fn best_index(&self) -> usize {
        let mut best = 0;
        for (i, f) in self.fitnesses.iter().enumerate() {
            if *f < self.fitnesses[best] || self.fitnesses[best].is_nan() {
                best = i;
            }
        }
        best
    }

    pub fn best_fitness(&self) -> f64 {
        self.fitnesses[self.best_index()]
    }

    pub fn worst_fitness(&self) -> f64 {
        self.fitnesses.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Member indices sorted by ascending fitness (stable).
    pub fn ranking(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.size()).collect();
        idx.sort_by(|&a, &b| self.fitnesses[a].total_cmp(&self.fitnesses[b]));
        idx
    }
}

pub fn initialize_population<R: Rng + ?Sized>(
    bounds: &Bounds,
    np: usize,
    distribution: InitDistribution,
    rng: &mut R,
) -> Result<Population> {
    if np < MIN_POPULATION {
        return Err(Error::Config(format!(
            "population size {np} is below the minimum of {MIN_POPULATION}"
        )));
    }
    let d = bounds.dim();
    let members = match distribution {
        InitDistribution::Uniform => (0..np)
            .map(|_| (0..d).map(|j| bounds.sample(j, rng)).collect())
            .collect(),
        InitDistribution::Normal { mean, sigma } => {
            let normal = Normal::new(mean, sigma)
                .map_err(|e| Error::Config(format!("normal initialization: {e}")))?;
            (0..np)
                .map(|_| {
                    (0..d)
                        .map(|j| normal.sample(rng).clamp(bounds.lower()[j], bounds.upper()[j]))
                        .collect()
                })
                .collect()
        }
    };
    Population::from_members(members)
}

/// Greedy one-to-one survivor selection: a trial replaces its target when
/// its fitness is equal or better.
pub fn select(current: &Population, trials: Vec<Vec<f64>>, trial_fitnesses: &[f64]) -> Result<Population> {
    if trials.len() != current.size() || trial_fitnesses.len() != current.size() {
        return Err(Error::Shape(format!(
            "{} trials / {} fitnesses for a population of {}",
            trials.len(),
            trial_fitnesses.len(),
            current.size()
        )));
    }
    let mut members = Vec::with_capacity(current.size());
    let mut fitnesses = Vec::with_capacity(current.size());
    for (i, (trial, &ft)) in trials.into_iter().zip(trial_fitnesses).enumerate() {
        if ft <= current.fitnesses[i] {
            members.push(trial);
            fitnesses.push(ft);
        } else {
            members.push(current.members[i].clone());
            fitnesses.push(current.fitnesses[i]);
        }
    }
    Ok(Population {
        generation: current.generation + 1,
        members,
        fitnesses,
    })
}
