use rand::Rng;

use crate::error::{Error, Result};

/// Per-dimension box constraints `[lower[j], upper[j]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::Bounds(format!(
                "lower has {} entries, upper has {}",
                lower.len(),
                upper.len()
            )));
        }
        if lower.is_empty() {
            return Err(Error::Bounds("zero-dimensional problem".into()));
        }
        for (j, (l, u)) in lower.iter().zip(&upper).enumerate() {
            if l.is_nan() || u.is_nan() || l > u {
                return Err(Error::Bounds(format!("dimension {j}: lower {l} exceeds upper {u}")));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval in every one of `dim` dimensions.
    pub fn uniform(dim: usize, lower: f64, upper: f64) -> Result<Self> {
        Self::new(vec![lower; dim], vec![upper; dim])
    }

    /// No user bounds: the extreme finite doubles in every dimension.
    pub fn unbounded(dim: usize) -> Self {
        Self {
            lower: vec![f64::MIN; dim],
            upper: vec![f64::MAX; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (l, u))| *v >= *l && *v <= *u)
    }

    /// Uniform draw from `[lower[j], upper[j])`.
    pub(crate) fn sample<R: Rng + ?Sized>(&self, j: usize, rng: &mut R) -> f64 {
        let r: f64 = rng.random();
        scale_unit(r, self.lower[j], self.upper[j])
    }
}

/// Maps `r` in `[0, 1)` onto `[lower, upper)`. The width may overflow for
/// unbounded boxes, in which case the affine combination is used instead.
pub(crate) fn scale_unit(r: f64, lower: f64, upper: f64) -> f64 {
    let width = upper - lower;
    if width.is_finite() {
        r * width + lower
    } else {
        r * upper + (1.0 - r) * lower
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundaryHandling {
    #[default]
    Clamp,
    Toroidal,
    Reinit,
}

impl BoundaryHandling {
    pub fn name(self) -> &'static str {
        match self {
            BoundaryHandling::Clamp => "clamp",
            BoundaryHandling::Toroidal => "toroidal",
            BoundaryHandling::Reinit => "reinit",
        }
    }
}

impl std::str::FromStr for BoundaryHandling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "clamp" => Ok(Self::Clamp),
            "toroidal" => Ok(Self::Toroidal),
            "reinit" => Ok(Self::Reinit),
            other => Err(Error::Config(format!(
                "unknown boundary handling '{other}' (expected clamp, toroidal or reinit)"
            ))),
        }
    }
}

/// Repairs the components of `v` that fall outside `bounds`.
///
/// In-range components are left untouched. NaN components count as
/// violations. Reinitialization consumes one uniform draw per violating
/// component, in index order.
pub fn handle_bounds<R: Rng + ?Sized>(
    v: &mut [f64],
    bounds: &Bounds,
    strategy: BoundaryHandling,
    rng: &mut R,
) -> Result<()> {
    if v.len() != bounds.dim() {
        return Err(Error::Shape(format!(
            "vector has {} components, bounds have {}",
            v.len(),
            bounds.dim()
        )));
    }
    for j in 0..v.len() {
        let (lo, hi) = (bounds.lower[j], bounds.upper[j]);
        let x = v[j];
        let below = x < lo || x.is_nan();
        let above = x > hi;
        if !below && !above {
            continue;
        }
        v[j] = match strategy {
            BoundaryHandling::Clamp => {
                if below {
                    lo
                } else {
                    hi
                }
            }
            BoundaryHandling::Reinit => {
                if lo == hi {
                    lo
                } else {
                    bounds.sample(j, rng)
                }
            }
            BoundaryHandling::Toroidal => {
                let range = hi - lo;
                if range == 0.0 {
                    return Err(Error::DegenerateRange { dim: j });
                }
                if x.is_nan() {
                    lo
                } else if below {
                    (hi - (lo - x) % range).clamp(lo, hi)
                } else {
                    (lo + (x - hi) % range).clamp(lo, hi)
                }
            }
        };
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unit(dim: usize) -> Bounds {
        Bounds::uniform(dim, 0.0, 1.0).unwrap()
    }

    #[test]
    fn rejects_inverted_bounds() {
        assert!(matches!(Bounds::new(vec![1.0], vec![0.0]), Err(Error::Bounds(_))));
        assert!(matches!(Bounds::new(vec![0.0, 0.0], vec![1.0]), Err(Error::Bounds(_))));
    }

    #[test]
    fn clamp_assigns_violated_boundary() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut v = [1.5, -0.5, 0.25];
        handle_bounds(&mut v, &unit(3), BoundaryHandling::Clamp, &mut rng).unwrap();
        assert_eq!(v, [1.0, 0.0, 0.25]);
    }

    #[test]
    fn toroidal_wraps_overflow_and_underflow() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut v = [1.3, -0.25];
        handle_bounds(&mut v, &unit(2), BoundaryHandling::Toroidal, &mut rng).unwrap();
        assert!((v[0] - 0.3).abs() < 1e-12);
        assert!((v[1] - 0.75).abs() < 1e-12);
    }

    #[test]
    fn toroidal_rejects_zero_width() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let b = Bounds::new(vec![0.0, 2.0], vec![1.0, 2.0]).unwrap();
        let mut ok = [0.5, 2.0];
        handle_bounds(&mut ok, &b, BoundaryHandling::Toroidal, &mut rng).unwrap();
        let mut bad = [0.5, 2.5];
        let err = handle_bounds(&mut bad, &b, BoundaryHandling::Toroidal, &mut rng).unwrap_err();
        assert!(matches!(err, Error::DegenerateRange { dim: 1 }));
        for s in [BoundaryHandling::Clamp, BoundaryHandling::Reinit] {
            let mut v = [0.5, 2.5];
            handle_bounds(&mut v, &b, s, &mut rng).unwrap();
            assert_eq!(v[1], 2.0);
        }
    }

    #[test]
    fn reinit_only_touches_violators() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let mut v = [-0.2, 0.5];
            handle_bounds(&mut v, &unit(2), BoundaryHandling::Reinit, &mut rng).unwrap();
            assert!((0.0..=1.0).contains(&v[0]));
            assert_eq!(v[1], 0.5);
        }
    }

    #[test]
    fn nan_is_repaired() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for s in [BoundaryHandling::Clamp, BoundaryHandling::Toroidal, BoundaryHandling::Reinit] {
            let mut v = [f64::NAN];
            handle_bounds(&mut v, &unit(1), s, &mut rng).unwrap();
            assert!((0.0..=1.0).contains(&v[0]));
        }
    }

    proptest! {
        #[test]
        fn repaired_vectors_lie_in_box(
            raw in proptest::collection::vec(-50.0f64..50.0, 1..8),
            lo in -3.0f64..0.0,
            width in 0.01f64..5.0,
            which in 0usize..3,
            seed in any::<u64>(),
        ) {
            let strategy = [BoundaryHandling::Clamp, BoundaryHandling::Toroidal, BoundaryHandling::Reinit][which];
            let b = Bounds::uniform(raw.len(), lo, lo + width).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut v = raw.clone();
            handle_bounds(&mut v, &b, strategy, &mut rng).unwrap();
            prop_assert!(b.contains(&v));
            for (orig, new) in raw.iter().zip(&v) {
                if *orig >= lo && *orig <= lo + width {
                    prop_assert_eq!(orig, new);
                }
            }
        }
    }
}
