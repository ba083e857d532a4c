use rand::Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Crossover {
    #[default]
    Binomial,
    Exponential,
}

impl Crossover {
    pub fn name(self) -> &'static str {
        match self {
            Crossover::Binomial => "bin",
            Crossover::Exponential => "exp",
        }
    }
}

impl std::str::FromStr for Crossover {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bin" | "binomial" => Ok(Self::Binomial),
            "exp" | "exponential" => Ok(Self::Exponential),
            other => Err(Error::Config(format!(
                "unknown crossover '{other}' (expected bin or exp)"
            ))),
        }
    }
}

fn check_dims(target: &[f64], donor: &[f64]) -> Result<()> {
    if target.len() != donor.len() || target.is_empty() {
        return Err(Error::Shape(format!(
            "target has {} components, donor has {}",
            target.len(),
            donor.len()
        )));
    }
    Ok(())
}

/// Uniform crossover with one forced donor component at `j_rand`.
///
/// Draws `j_rand` first, then one uniform number per component (including
/// `j_rand`), so the number of draws is independent of `cr`.
pub fn crossover_binomial<R: Rng + ?Sized>(target: &[f64], donor: &[f64], cr: f64, rng: &mut R) -> Result<Vec<f64>> {
    check_dims(target, donor)?;
    let d = target.len();
    let j_rand = rng.random_range(0..d);
    Ok((0..d)
        .map(|j| {
            let r: f64 = rng.random();
            if r < cr || j == j_rand {
                donor[j]
            } else {
                target[j]
            }
        })
        .collect())
}

/// Length of the exponential-crossover window: starts at one and grows
/// while a fresh uniform draw stays below `cr`, up to `d`.
pub fn exponential_length<R: Rng + ?Sized>(d: usize, cr: f64, rng: &mut R) -> usize {
    let mut len = 1;
    while len < d && rng.random::<f64>() < cr {
        len += 1;
    }
    len
}

/// Copies a contiguous, wrapping block of donor components starting at a
/// random index.
pub fn crossover_exponential<R: Rng + ?Sized>(
    target: &[f64],
    donor: &[f64],
    cr: f64,
    rng: &mut R,
) -> Result<Vec<f64>> {
    check_dims(target, donor)?;
    let d = target.len();
    let start = rng.random_range(0..d);
    let len = exponential_length(d, cr, rng);
    let mut trial = target.to_vec();
    for k in 0..len {
        let j = (start + k) % d;
        trial[j] = donor[j];
    }
    Ok(trial)
}

pub fn crossover<R: Rng + ?Sized>(
    kind: Crossover,
    target: &[f64],
    donor: &[f64],
    cr: f64,
    rng: &mut R,
) -> Result<Vec<f64>> {
    match kind {
        Crossover::Binomial => crossover_binomial(target, donor, cr, rng),
        Crossover::Exponential => crossover_exponential(target, donor, cr, rng),
    }
}
