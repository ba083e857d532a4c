use rand::Rng;

use super::population::Population;
use crate::error::{Error, Result};

/// Differential mutation strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// `v = x_r0 + F (x_r1 - x_r2)`
    Rand1,
    /// `v = x_r0 + F (x_r1 - x_r2) + F (x_r3 - x_r4)`
    Rand2,
    /// `v = x_best + F (x_r1 - x_r2)`
    Best1,
    /// `v = x_best + F (x_r1 - x_r2) + F (x_r3 - x_r4)`
    Best2,
    /// `v = x_i + F (x_r1 - x_r2)`
    CurrentToRand1,
    /// `v = x_i + F (x_best - x_i) + F (x_r1 - x_r2)`
    CurrentToBest1,
    /// `v = x_i + F (x_pbest - x_i) + F (x_r1 - x_r2)`, with `pbest` drawn
    /// from the top `p * Np` members.
    CurrentToPBest1,
    /// `v = x_r1 + F (x_best - x_r1) + F (x_r2 - x_r3)`
    RandToBest1,
}

impl Strategy {
    pub const ALL: [Strategy; 8] = [
        Strategy::Rand1,
        Strategy::Rand2,
        Strategy::Best1,
        Strategy::Best2,
        Strategy::CurrentToRand1,
        Strategy::CurrentToBest1,
        Strategy::CurrentToPBest1,
        Strategy::RandToBest1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Rand1 => "rand1",
            Strategy::Rand2 => "rand2",
            Strategy::Best1 => "best1",
            Strategy::Best2 => "best2",
            Strategy::CurrentToRand1 => "current_to_rand1",
            Strategy::CurrentToBest1 => "current_to_best1",
            Strategy::CurrentToPBest1 => "current_to_pbest1",
            Strategy::RandToBest1 => "rand_to_best1",
        }
    }

    /// Number of random indices drawn besides the target (and besides the
    /// `pbest` pick, which is counted separately).
    fn random_count(self) -> usize {
        match self {
            Strategy::Rand1 | Strategy::RandToBest1 => 3,
            Strategy::Rand2 => 5,
            Strategy::Best2 => 4,
            Strategy::Best1 | Strategy::CurrentToRand1 | Strategy::CurrentToBest1 | Strategy::CurrentToPBest1 => 2,
        }
    }

    /// Smallest population for which the required distinct indices exist.
    pub fn min_population(self) -> usize {
        let pbest = usize::from(self == Strategy::CurrentToPBest1);
        (1 + self.random_count() + pbest).max(super::population::MIN_POPULATION)
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Strategy::ALL.iter().map(|s| s.name()).collect();
                Error::Config(format!("unknown strategy '{s}' (expected one of {})", names.join(", ")))
            })
    }
}

/// Indices drawn for one donor vector.
///
/// `random` holds the strategy's random picks in formula order
/// (`r0, r1, ...` for the rand family, `r1, r2, ...` otherwise). `anchor`
/// is the best or p-best index for strategies that use one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationIndices {
    pub target: usize,
    pub anchor: Option<usize>,
    pub random: Vec<usize>,
}

fn draw_excluding<R: Rng + ?Sized>(np: usize, excluded: &[usize], rng: &mut R) -> usize {
    loop {
        let r = rng.random_range(0..np);
        if !excluded.contains(&r) {
            return r;
        }
    }
}

/// Draws the indices needed by `strategy` for target `i`.
///
/// Random indices are pairwise distinct and distinct from `i`; for
/// current-to-pbest they are also distinct from the p-best pick.
pub fn draw_indices<R: Rng + ?Sized>(
    strategy: Strategy,
    pop: &Population,
    i: usize,
    p_best_fraction: f64,
    rng: &mut R,
) -> Result<MutationIndices> {
    let np = pop.size();
    if np < strategy.min_population() {
        return Err(Error::Config(format!(
            "strategy {strategy} needs a population of at least {}, got {np}",
            strategy.min_population()
        )));
    }
    if i >= np {
        return Err(Error::Shape(format!("target index {i} out of range for population {np}")));
    }
    let mut excluded = vec![i];
    let anchor = match strategy {
        Strategy::Best1 | Strategy::Best2 | Strategy::CurrentToBest1 | Strategy::RandToBest1 => Some(pop.best_index()),
        Strategy::CurrentToPBest1 => {
            if !(p_best_fraction > 0.0 && p_best_fraction <= 1.0) {
                return Err(Error::Config(format!("p-best fraction {p_best_fraction} outside (0, 1]")));
            }
            let ranking = pop.ranking();
            let top = ((p_best_fraction * np as f64).ceil() as usize).clamp(1, np);
            let mut candidates: Vec<usize> = ranking[..top].iter().copied().filter(|&r| r != i).collect();
            if candidates.is_empty() {
                candidates.push(ranking[1]);
            }
            let pick = candidates[rng.random_range(0..candidates.len())];
            excluded.push(pick);
            Some(pick)
        }
        Strategy::Rand1 | Strategy::Rand2 | Strategy::CurrentToRand1 => None,
    };
    let mut random = Vec::with_capacity(strategy.random_count());
    for _ in 0..strategy.random_count() {
        let r = draw_excluding(np, &excluded, rng);
        excluded.push(r);
        random.push(r);
    }
    Ok(MutationIndices { target: i, anchor, random })
}

/// Builds the donor vector from pre-drawn indices.
pub fn donor(strategy: Strategy, pop: &Population, idx: &MutationIndices, f: f64) -> Vec<f64> {
    let x = |k: usize| pop.members[k].as_slice();
    let r = &idx.random;
    let d = pop.dim();
    let anchor = || x(idx.anchor.expect("strategy requires an anchor index"));
    let xi = x(idx.target);
    (0..d)
        .map(|j| match strategy {
            Strategy::Rand1 => x(r[0])[j] + f * (x(r[1])[j] - x(r[2])[j]),
            Strategy::Rand2 => x(r[0])[j] + f * (x(r[1])[j] - x(r[2])[j]) + f * (x(r[3])[j] - x(r[4])[j]),
            Strategy::Best1 => anchor()[j] + f * (x(r[0])[j] - x(r[1])[j]),
            Strategy::Best2 => anchor()[j] + f * (x(r[0])[j] - x(r[1])[j]) + f * (x(r[2])[j] - x(r[3])[j]),
            Strategy::CurrentToRand1 => xi[j] + f * (x(r[0])[j] - x(r[1])[j]),
            Strategy::CurrentToBest1 | Strategy::CurrentToPBest1 => {
                xi[j] + f * (anchor()[j] - xi[j]) + f * (x(r[0])[j] - x(r[1])[j])
            }
            Strategy::RandToBest1 => {
                let base = x(r[0])[j];
                base + f * (anchor()[j] - base) + f * (x(r[1])[j] - x(r[2])[j])
            }
        })
        .collect()
}

/// Draws indices and returns the donor for target `i`. The population is
/// not modified.
pub fn mutate<R: Rng + ?Sized>(
    strategy: Strategy,
    pop: &Population,
    i: usize,
    f: f64,
    p_best_fraction: f64,
    rng: &mut R,
) -> Result<Vec<f64>> {
    let idx = draw_indices(strategy, pop, i, p_best_fraction, rng)?;
    Ok(donor(strategy, pop, &idx, f))
}
