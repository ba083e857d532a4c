//! Flat `key = value` run configuration.
//!
//! Blank lines and lines starting with `#` are ignored. Keys are case
//! sensitive and unknown keys are rejected. Relative paths are resolved
//! against the directory containing the config file.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use saoo_core::de::{AbsTol, BoundaryHandling, Crossover, DEConfig, Strategy, TerminationCriteria};
use saoo_core::local::LocalOptConfig;
use saoo_core::saoo::{MacroConfig, OrbitalOptConfig};
use saoo_core::savqe::{EnsembleSpec, Optimizer};

use crate::BenchError;

pub const KEYS: &[&str] = &[
    "molecule",
    "optimizer",
    "strategy",
    "crossover",
    "boundary",
    "np",
    "f",
    "cr",
    "p_best",
    "seeds",
    "weights",
    "macro_tol",
    "max_macro_iters",
    "mode",
    "function",
    "dimension",
    "max_iters",
    "lr",
    "grad_tol",
    "max_generations",
    "max_evals",
    "abs_tol",
    "n_tol",
    "frozen_core",
    "warm_start",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    SaVqe,
    SaOo,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::SaVqe => "savqe",
            Mode::SaOo => "saoo",
        }
    }
}

impl FromStr for Mode {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        match s {
            "savqe" => Ok(Mode::SaVqe),
            "saoo" => Ok(Mode::SaOo),
            _ => Err(BenchError::Usage(format!("unknown mode {s:?}; expected savqe or saoo"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestFunction {
    Sphere,
    Rosenbrock,
    Rastrigin,
}

impl TestFunction {
    pub fn name(self) -> &'static str {
        match self {
            TestFunction::Sphere => "sphere",
            TestFunction::Rosenbrock => "rosenbrock",
            TestFunction::Rastrigin => "rastrigin",
        }
    }

    pub fn evaluate(self, x: &[f64]) -> f64 {
        match self {
            TestFunction::Sphere => x.iter().map(|v| v * v).sum(),
            TestFunction::Rosenbrock => {
                x.windows(2).map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (1.0 - w[0]).powi(2)).sum()
            }
            TestFunction::Rastrigin => {
                10.0 * x.len() as f64
                    + x.iter().map(|v| v * v - 10.0 * (2.0 * std::f64::consts::PI * v).cos()).sum::<f64>()
            }
        }
    }

    /// Symmetric search box half-width.
    pub fn half_width(self) -> f64 {
        match self {
            TestFunction::Rastrigin => 5.12,
            _ => 5.0,
        }
    }
}

impl FromStr for TestFunction {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        match s {
            "sphere" => Ok(TestFunction::Sphere),
            "rosenbrock" => Ok(TestFunction::Rosenbrock),
            "rastrigin" => Ok(TestFunction::Rastrigin),
            _ => Err(BenchError::Usage(format!(
                "unknown function {s:?}; valid functions are sphere, rosenbrock, rastrigin"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub molecule: Option<PathBuf>,
    pub optimizers: Vec<String>,
    pub strategy: Strategy,
    pub crossover: Crossover,
    pub boundary: BoundaryHandling,
    pub np: Option<usize>,
    pub f: f64,
    pub cr: f64,
    pub p_best: f64,
    pub seeds: Vec<u64>,
    pub weights: Vec<f64>,
    pub macro_tol: f64,
    pub max_macro_iters: usize,
    pub mode: Mode,
    pub function: Option<TestFunction>,
    pub dimension: usize,
    pub max_iters: usize,
    pub lr: f64,
    pub grad_tol: f64,
    pub max_generations: Option<usize>,
    pub max_evals: Option<usize>,
    pub abs_tol: Option<f64>,
    pub n_tol: usize,
    pub frozen_core: usize,
    pub warm_start: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        let local = LocalOptConfig::default();
        Self {
            molecule: None,
            optimizers: vec!["bfgs".into()],
            strategy: Strategy::Rand1,
            crossover: Crossover::Binomial,
            boundary: BoundaryHandling::Clamp,
            np: None,
            f: 0.5,
            cr: 0.9,
            p_best: 0.11,
            seeds: (0..10).collect(),
            weights: vec![0.5, 0.5],
            macro_tol: 1e-4,
            max_macro_iters: 20,
            mode: Mode::SaOo,
            function: None,
            dimension: 2,
            max_iters: local.max_iters,
            lr: local.gd_learning_rate,
            grad_tol: local.grad_tol,
            max_generations: None,
            max_evals: None,
            abs_tol: Some(1e-6),
            n_tol: 5,
            frozen_core: 0,
            warm_start: true,
        }
    }
}

/// DE generation cap used when no DE stopping rule is configured.
pub const DEFAULT_MAX_GENERATIONS: usize = 200;

pub const VALID_OPTIMIZERS: &str =
    "bfgs, gd (gradient_descent), de (uses strategy/crossover keys), de_<strategy>_<bin|exp>, all";

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, BenchError> {
    value.parse().map_err(|_| BenchError::Usage(format!("invalid value {value:?} for key {key}")))
}

fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>, BenchError> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty()).map(|s| parse(key, s)).collect()
}

pub fn parse_seeds(value: &str) -> Result<Vec<u64>, BenchError> {
    let seeds: Vec<u64> = parse_list("seeds", value)?;
    if seeds.is_empty() {
        return Err(BenchError::Usage("seed list is empty".into()));
    }
    Ok(seeds)
}

impl BenchConfig {
    pub fn parse_str(text: &str, base_dir: &Path) -> Result<Self, BenchError> {
        let mut cfg = Self::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| BenchError::Usage(format!("config line {}: expected key = value", n + 1)))?;
            cfg.set(key.trim(), value.trim(), base_dir)?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, BenchError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| BenchError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse_str(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn set(&mut self, key: &str, value: &str, base_dir: &Path) -> Result<(), BenchError> {
        let core = |e: saoo_core::Error| BenchError::Usage(format!("key {key}: {e}"));
        match key {
            "molecule" => self.molecule = Some(base_dir.join(value)),
            "optimizer" => {
                self.optimizers = value.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
                if self.optimizers.is_empty() {
                    return Err(BenchError::Usage("optimizer list is empty".into()));
                }
            }
            "strategy" => self.strategy = value.parse().map_err(core)?,
            "crossover" => self.crossover = value.parse().map_err(core)?,
            "boundary" => self.boundary = value.parse().map_err(core)?,
            "np" => self.np = Some(parse(key, value)?),
            "f" => self.f = parse(key, value)?,
            "cr" => self.cr = parse(key, value)?,
            "p_best" => self.p_best = parse(key, value)?,
            "seeds" => self.seeds = parse_seeds(value)?,
            "weights" => self.weights = parse_list(key, value)?,
            "macro_tol" => self.macro_tol = parse(key, value)?,
            "max_macro_iters" => self.max_macro_iters = parse(key, value)?,
            "mode" => self.mode = value.parse()?,
            "function" => self.function = Some(value.parse()?),
            "dimension" => self.dimension = parse(key, value)?,
            "max_iters" => self.max_iters = parse(key, value)?,
            "lr" => self.lr = parse(key, value)?,
            "grad_tol" => self.grad_tol = parse(key, value)?,
            "max_generations" => self.max_generations = Some(parse(key, value)?),
            "max_evals" => self.max_evals = Some(parse(key, value)?),
            "abs_tol" => self.abs_tol = if value == "none" { None } else { Some(parse(key, value)?) },
            "n_tol" => self.n_tol = parse(key, value)?,
            "frozen_core" => self.frozen_core = parse(key, value)?,
            "warm_start" => self.warm_start = parse(key, value)?,
            _ => {
                return Err(BenchError::Usage(format!(
                    "unknown config key {key:?}; valid keys are {}",
                    KEYS.join(", ")
                )))
            }
        }
        Ok(())
    }

    pub fn ensemble(&self) -> Result<EnsembleSpec, BenchError> {
        EnsembleSpec::new(self.weights.clone()).map_err(|e| BenchError::Usage(e.to_string()))
    }

    pub fn local(&self) -> LocalOptConfig {
        LocalOptConfig {
            max_iters: self.max_iters,
            gd_learning_rate: self.lr,
            grad_tol: self.grad_tol,
            ..LocalOptConfig::default()
        }
    }

    pub fn termination(&self) -> TerminationCriteria {
        let mut t = TerminationCriteria {
            max_evals: self.max_evals,
            max_generations: self.max_generations,
            abs_tol: self.abs_tol.map(|eps| AbsTol { eps, n_tol: self.n_tol }),
            ..TerminationCriteria::default()
        };
        if t.max_evals.is_none() && t.max_generations.is_none() {
            t.max_generations = Some(DEFAULT_MAX_GENERATIONS);
        }
        t
    }

    pub fn de(&self, strategy: Strategy, crossover: Crossover, dim: usize, seed: u64) -> DEConfig {
        let base = DEConfig::for_dimension(dim);
        DEConfig {
            np: self.np.unwrap_or(base.np),
            f: self.f,
            cr: self.cr,
            strategy,
            crossover,
            boundary: self.boundary,
            p_best_fraction: self.p_best,
            seed,
            termination: self.termination(),
            ..base
        }
    }

    /// Expands `all` and checks every name.
    pub fn method_names(&self) -> Result<Vec<String>, BenchError> {
        let mut out = Vec::new();
        for name in &self.optimizers {
            if name == "all" {
                out.push("bfgs".to_string());
                out.push("gd".to_string());
                out.extend(Strategy::ALL.iter().map(|s| format!("de_{}_bin", s.name())));
            } else if name == "de" {
                out.push(format!("de_{}_{}", self.strategy.name(), self.crossover.name()));
            } else {
                self.optimizer(name, 1, 0)?;
                out.push(if name == "gradient_descent" { "gd".to_string() } else { name.clone() });
            }
        }
        Ok(out)
    }

    /// Builds the optimizer for `name` on a `dim`-parameter problem.
    pub fn optimizer(&self, name: &str, dim: usize, seed: u64) -> Result<Optimizer, BenchError> {
        match name {
            "bfgs" => Ok(Optimizer::Bfgs(self.local())),
            "gd" | "gradient_descent" => Ok(Optimizer::GradientDescent(self.local())),
            "de" => Ok(Optimizer::De(self.de(self.strategy, self.crossover, dim, seed))),
            "cobyla" | "slsqp" => Err(BenchError::Usage(format!(
                "optimizer {name} is not available in this build; valid optimizers: {VALID_OPTIMIZERS}"
            ))),
            other => {
                let parsed = other.strip_prefix("de_").and_then(|rest| {
                    let (strategy, crossover) = rest.rsplit_once('_')?;
                    Some((strategy.parse::<Strategy>().ok()?, crossover.parse::<Crossover>().ok()?))
                });
                match parsed {
                    Some((s, c)) => Ok(Optimizer::De(self.de(s, c, dim, seed))),
                    None => Err(BenchError::Usage(format!(
                        "unknown optimizer {other:?}; valid optimizers: {VALID_OPTIMIZERS}"
                    ))),
                }
            }
        }
    }

    pub fn macro_config(&self) -> MacroConfig {
        MacroConfig {
            macro_tol: self.macro_tol,
            max_macro_iters: self.max_macro_iters,
            warm_start: self.warm_start,
            ..MacroConfig::default()
        }
    }

    pub fn orbital_config(&self) -> OrbitalOptConfig {
        OrbitalOptConfig::default()
    }

    /// Effective settings as `(key, value)` pairs.
    pub fn manifest(&self) -> Vec<(String, String)> {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "default".into());
        vec![
            ("molecule".into(), opt(self.molecule.as_ref().map(|p| p.display().to_string()))),
            ("boundary".into(), self.boundary.name().into()),
            ("np".into(), opt(self.np.map(|v| v.to_string()))),
            ("f".into(), self.f.to_string()),
            ("cr".into(), self.cr.to_string()),
            ("p_best".into(), self.p_best.to_string()),
            ("seeds".into(), self.seeds.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")),
            ("weights".into(), self.weights.iter().map(f64::to_string).collect::<Vec<_>>().join(" ")),
            ("macro_tol".into(), self.macro_tol.to_string()),
            ("max_macro_iters".into(), self.max_macro_iters.to_string()),
            ("mode".into(), self.mode.name().into()),
            ("max_iters".into(), self.max_iters.to_string()),
            ("lr".into(), self.lr.to_string()),
            ("grad_tol".into(), self.grad_tol.to_string()),
            ("termination".into(), format!("{:?}", self.termination())),
            ("frozen_core".into(), self.frozen_core.to_string()),
            ("warm_start".into(), self.warm_start.to_string()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_keys() {
        let text = "# comment\nmolecule = h2.fcidump\noptimizer = bfgs, de_rand2_exp\nnp = 20\nf=0.7\ncr = 0.3\n\
                    seeds = 1,1\nweights = 0.25,0.75\nmode = savqe\nboundary = toroidal\n";
        let cfg = BenchConfig::parse_str(text, Path::new("/data")).unwrap();
        assert_eq!(cfg.molecule, Some(PathBuf::from("/data/h2.fcidump")));
        assert_eq!(cfg.method_names().unwrap(), vec!["bfgs", "de_rand2_exp"]);
        assert_eq!(cfg.np, Some(20));
        assert_eq!(cfg.seeds, vec![1, 1]);
        assert_eq!(cfg.mode, Mode::SaVqe);
        assert_eq!(cfg.boundary, BoundaryHandling::Toroidal);
        match cfg.optimizer("de_rand2_exp", 3, 9).unwrap() {
            Optimizer::De(de) => {
                assert_eq!((de.np, de.f, de.cr, de.seed), (20, 0.7, 0.3, 9));
                assert_eq!(de.strategy, Strategy::Rand2);
                assert_eq!(de.crossover, Crossover::Exponential);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_keys_and_optimizers_are_usage_errors() {
        assert!(matches!(BenchConfig::parse_str("colour = blue\n", Path::new(".")), Err(BenchError::Usage(_))));
        assert!(matches!(BenchConfig::parse_str("np\n", Path::new(".")), Err(BenchError::Usage(_))));
        let cfg = BenchConfig { optimizers: vec!["nelder_mead".into()], ..Default::default() };
        match cfg.method_names() {
            Err(BenchError::Usage(m)) => assert!(m.contains("bfgs")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(BenchConfig::default().optimizer("cobyla", 2, 0), Err(BenchError::Usage(_))));
    }

    #[test]
    fn all_expands_to_ten_methods() {
        let cfg = BenchConfig { optimizers: vec!["all".into()], ..Default::default() };
        let names = cfg.method_names().unwrap();
        assert_eq!(names.len(), 10);
        assert_eq!(names[2], "de_rand1_bin");
        assert_eq!(names[9], "de_rand_to_best1_bin");
    }

    #[test]
    fn default_seeds_are_zero_through_nine() {
        assert_eq!(BenchConfig::default().seeds, (0..10).collect::<Vec<u64>>());
    }
}
