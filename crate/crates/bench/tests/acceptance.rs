//! Acceptance suite. Prints one `[PASS]`/`[FAIL]` line per criterion and
//! exits non-zero if any criterion fails.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use saoo_bench::{commands, BenchConfig, Mode};
use saoo_core::de::{
    crossover_binomial, de_minimize, exponential_length, should_terminate, AbsTol, BestWorst, Bounds, Crossover,
    DEConfig, GenerationRecord, RelTol, RunningMean, StopReason, Strategy, TerminationCriteria,
};
use saoo_core::fermion::{jordan_wigner, load_fcidump, MolecularIntegrals};
use saoo_core::local::LocalOptConfig;
use saoo_core::qsim::{energy_from_rdms, measure_rdms};
use saoo_core::saoo::{rotate_integrals, run_sa_oo_vqe, KappaMatrix, MacroConfig, OrbitalOptConfig};
use saoo_core::savqe::{build_initial_states, run_sa_vqe, AnsatzSpec, EnsembleSpec, Optimizer};
use saoo_oracles::{fock_hamiltonian, sorted_eigenvalues, spin_sector_eigen, RawIntegrals};

type Outcome = Result<String, String>;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn h2() -> MolecularIntegrals {
    load_fcidump(fixtures().join("h2_sto3g.fcidump")).unwrap()
}

fn raw(ints: &MolecularIntegrals) -> RawIntegrals<'_> {
    RawIntegrals { n_orb: ints.n_orb, core: ints.core_energy, h: &ints.h, g: ints.g_tensor() }
}

fn fci_ground(ints: &MolecularIntegrals) -> f64 {
    sorted_eigenvalues(&fock_hamiltonian(&raw(ints)))[0]
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn jw_spectrum() -> Outcome {
    let ints = h2();
    let dense = jordan_wigner(&ints).map_err(|e| e.to_string())?.to_dense();
    let ours = sorted_eigenvalues(&dense.map(|c| c.re));
    let oracle = sorted_eigenvalues(&fock_hamiltonian(&raw(&ints)));
    ensure(ours.len() == 16, format!("{} eigenvalues", ours.len()))?;
    let imag = dense.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
    let err = ours.iter().zip(&oracle).map(|(a, b)| (a - b).abs()).fold(imag, f64::max);
    ensure(err < 1e-10, format!("max deviation {err:e}"))?;
    Ok(format!("max deviation {err:.1e}"))
}

fn sa_vqe_exact() -> Outcome {
    let ints = h2();
    let (values, _) = spin_sector_eigen(&fock_hamiltonian(&raw(&ints)), 2, 2, 0.0);
    let target = 0.5 * (values[0] + values[1]);
    let hq = jordan_wigner(&ints).map_err(|e| e.to_string())?;
    let ansatz = AnsatzSpec::default_roster(2, 2).map_err(|e| e.to_string())?;
    let refs = build_initial_states(2, 2).map_err(|e| e.to_string())?;
    let res = run_sa_vqe(
        &hq,
        &ansatz,
        &refs,
        &EnsembleSpec::equal(),
        &Optimizer::Bfgs(LocalOptConfig::default()),
        None,
        0,
    )
    .map_err(|e| e.to_string())?;
    let err = (res.e_sa - target).abs();
    ensure(err < 1e-6, format!("E_SA {} vs {target}, error {err:e}", res.e_sa))?;
    Ok(format!("E_SA {:.10} error {err:.1e}", res.e_sa))
}

fn rotation_invariance() -> Outcome {
    let ints = h2();
    let e_ref = fci_ground(&ints);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n_params = KappaMatrix::parameter_count(ints.n_orb);
    let mut worst = 0.0_f64;
    for _ in 0..20 {
        let params: Vec<f64> = (0..n_params).map(|_| rng.random_range(-0.5..=0.5)).collect();
        let kappa = KappaMatrix::from_params(ints.n_orb, params).map_err(|e| e.to_string())?;
        let rotated = rotate_integrals(&ints, &kappa).map_err(|e| e.to_string())?;
        worst = worst.max((fci_ground(&rotated) - e_ref).abs());
    }
    ensure(worst < 1e-8, format!("max deviation {worst:e}"))?;
    Ok(format!("max deviation over 20 rotations {worst:.1e}"))
}

fn energy_paths() -> Outcome {
    let ints = h2();
    let hq = jordan_wigner(&ints).map_err(|e| e.to_string())?;
    let ansatz = AnsatzSpec::default_roster(2, 2).map_err(|e| e.to_string())?;
    let refs = build_initial_states(2, 2).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0_f64;
    for k in 0..50 {
        let theta: Vec<f64> = (0..ansatz.parameter_count()).map(|_| rng.random_range(-3.2..3.2)).collect();
        let mut state = refs[k % 2].clone();
        ansatz.apply(&mut state, &theta).map_err(|e| e.to_string())?;
        let pauli = state.expectation(&hq).map_err(|e| e.to_string())?;
        let rdm = measure_rdms(&state, 2).map_err(|e| e.to_string())?;
        let contracted = energy_from_rdms(&ints, &rdm).map_err(|e| e.to_string())?;
        worst = worst.max((pauli - contracted).abs());
    }
    ensure(worst < 1e-10, format!("max deviation {worst:e}"))?;
    Ok(format!("max deviation over 50 states {worst:.1e}"))
}

fn de_sphere() -> Outcome {
    let sphere = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>();
    let bounds = Bounds::uniform(5, -5.0, 5.0).map_err(|e| e.to_string())?;
    let mut hits = 0;
    let mut details = Vec::new();
    for seed in 0..10 {
        let cfg = DEConfig {
            np: 20,
            f: 0.5,
            cr: 0.9,
            strategy: Strategy::Rand1,
            crossover: Crossover::Binomial,
            seed,
            termination: TerminationCriteria::max_evals(30_000),
            ..DEConfig::for_dimension(5)
        };
        let res = de_minimize(&sphere, &bounds, &cfg).map_err(|e| e.to_string())?;
        // first generation whose best drops below the threshold
        let reached = res.history.iter().find(|g| g.best < 1e-6).map(|g| g.evaluations);
        if reached.is_some_and(|e| e <= 30_000) {
            hits += 1;
        }
        details.push(reached.map_or("-".to_string(), |e| e.to_string()));
    }
    ensure(hits >= 9, format!("{hits}/10 seeds reached 1e-6 (evals {})", details.join(" ")))?;
    Ok(format!("{hits}/10 seeds, evals to 1e-6: {}", details.join(" ")))
}

fn read_summary(path: &Path) -> Result<Vec<(String, Vec<f64>)>, String> {
    let mut rd = csv::Reader::from_path(path).map_err(|e| e.to_string())?;
    let header: Vec<String> = rd.headers().map_err(|e| e.to_string())?.iter().map(String::from).collect();
    ensure(
        header.join(",") == "method,evals_min,evals_max,evals_mean,E_min,E_max,E_mean",
        format!("summary header {header:?}"),
    )?;
    rd.records()
        .map(|r| {
            let r = r.map_err(|e| e.to_string())?;
            let nums = r.iter().skip(1).map(|v| v.parse::<f64>().map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
            Ok((r[0].to_string(), nums))
        })
        .collect()
}

fn compare_trends() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = BenchConfig {
        molecule: Some(fixtures().join("h2_sto3g.fcidump")),
        optimizers: vec!["all".into()],
        seeds: (0..10).collect(),
        ..BenchConfig::default()
    };
    commands::molecular(&cfg, Mode::SaOo, dir.path()).map_err(|e| e.to_string())?;
    let rows = read_summary(&dir.path().join("summary.csv"))?;
    ensure(rows.len() == 10, format!("{} summary rows", rows.len()))?;
    let bfgs = &rows.iter().find(|(m, _)| m == "bfgs").ok_or("no bfgs row")?.1;
    ensure(bfgs[0] == bfgs[1], format!("(a) bfgs evals_min {} != evals_max {}", bfgs[0], bfgs[1]))?;
    let de: Vec<_> = rows.iter().filter(|(m, _)| m.starts_with("de_")).collect();
    ensure(de.len() == 8, format!("{} DE rows", de.len()))?;
    let mut widest = ("", 0.0_f64);
    for (m, v) in &de {
        ensure(bfgs[2] < v[2], format!("(b) bfgs evals_mean {} >= {m} evals_mean {}", bfgs[2], v[2]))?;
        ensure(v[5] >= bfgs[5] - 1e-9, format!("(c) {m} E_mean {} below bfgs {}", v[5], bfgs[5]))?;
        if v[4] - v[3] > widest.1 {
            widest = (m.as_str(), v[4] - v[3]);
        }
    }
    ensure(widest.1 > 1e-4, format!("(d) widest DE spread {:e}", widest.1))?;
    let min_de = de.iter().map(|(_, v)| v[2]).fold(f64::INFINITY, f64::min);
    Ok(format!(
        "bfgs evals {} vs smallest DE mean {min_de}; widest spread {:.2e} ({})",
        bfgs[0], widest.1, widest.0
    ))
}

fn macro_loop() -> Outcome {
    let ints = h2();
    let ansatz = AnsatzSpec::default_roster(2, 2).map_err(|e| e.to_string())?;
    let res = run_sa_oo_vqe(
        &ints,
        &ansatz,
        &EnsembleSpec::equal(),
        &Optimizer::Bfgs(LocalOptConfig::default()),
        &OrbitalOptConfig::default(),
        &MacroConfig::default(),
    )
    .map_err(|e| e.to_string())?;
    let seq: Vec<f64> = res.macro_trace.records.iter().map(|r| r.e_sa_oo).collect();
    for w in seq.windows(2) {
        ensure(w[1] <= w[0] + 1e-10, format!("E_SA rose from {} to {}", w[0], w[1]))?;
    }
    ensure(res.converged, "loop did not converge")?;
    ensure(seq.len() <= 10, format!("{} macro-iterations", seq.len()))?;
    let last = seq.len() - 1;
    ensure(last >= 1 && (seq[last] - seq[last - 1]).abs() < 1e-4, "final change not below 1e-4")?;
    Ok(format!("{} macro-iterations, E_SA {:.10}", seq.len(), res.e_sa))
}

fn within_3_sigma(hits: usize, trials: usize, p: f64) -> Result<f64, String> {
    let n = trials as f64;
    let sigma = (p * (1.0 - p) / n).sqrt();
    let freq = hits as f64 / n;
    let z = (freq - p) / sigma;
    ensure(z.abs() <= 3.0, format!("frequency {freq} vs {p} ({z:.2} sigma)"))?;
    Ok(z)
}

fn crossover_stats() -> Outcome {
    const TRIALS: usize = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut zs = Vec::new();
    for (cr, d) in [(0.3, 4usize), (0.9, 10)] {
        let target = vec![0.0; d];
        let donor = vec![1.0; d];
        let mut hits = 0;
        for _ in 0..TRIALS {
            let trial = crossover_binomial(&target, &donor, cr, &mut rng).map_err(|e| e.to_string())?;
            hits += usize::from(trial[0] == 1.0);
        }
        zs.push(within_3_sigma(hits, TRIALS, cr + (1.0 - cr) / d as f64)?);
        let long = (0..TRIALS).filter(|_| exponential_length(d, cr, &mut rng) >= 2).count();
        zs.push(within_3_sigma(long, TRIALS, cr)?);
    }
    Ok(format!("z-scores {}", zs.iter().map(|z| format!("{z:.2}")).collect::<Vec<_>>().join(" ")))
}

fn scan_comparison() -> Outcome {
    let input = fixtures().join("h2_stretch");
    let mut curves = Vec::new();
    for mode in [Mode::SaVqe, Mode::SaOo] {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let cfg = BenchConfig { mode, seeds: vec![0], ..BenchConfig::default() };
        curves.push(commands::scan(&cfg, &input, dir.path()).map_err(|e| e.to_string())?);
    }
    ensure(curves[0].len() == 3 && curves[1].len() == 3, "expected three points per curve")?;
    let mut gap = f64::INFINITY;
    for (fixed, relaxed) in curves[0].iter().zip(&curves[1]) {
        ensure(fixed.status == "ok" && relaxed.status == "ok", format!("point {} failed", fixed.label))?;
        ensure(relaxed.e0 <= fixed.e0 + 1e-8, format!("{}: E0 {} > {}", fixed.label, relaxed.e0, fixed.e0))?;
        ensure(relaxed.e_sa <= fixed.e_sa + 1e-8, format!("{}: E_SA {} > {}", fixed.label, relaxed.e_sa, fixed.e_sa))?;
        gap = gap.min(fixed.e_sa - relaxed.e_sa);
    }
    Ok(format!("smallest savqe - saoo E_SA gap {gap:.1e}"))
}

fn history(best: &[f64], worst: &[f64], evals: &[usize]) -> Vec<GenerationRecord> {
    (0..best.len())
        .map(|g| GenerationRecord { generation: g, evaluations: evals[g], best: best[g], worst: worst[g] })
        .collect()
}

fn termination_units() -> Outcome {
    let criteria = [
        ("max_evals", TerminationCriteria::max_evals(100)),
        ("max_generations", TerminationCriteria::max_generations(50)),
        ("abs_tol", TerminationCriteria { abs_tol: Some(AbsTol { eps: 1e-6, n_tol: 3 }), ..Default::default() }),
        (
            "rel_tol",
            TerminationCriteria { rel_tol: Some(RelTol { eps: 1e-6, n_tol: 3, delta: 1e-12 }), ..Default::default() },
        ),
        (
            "running_mean",
            TerminationCriteria {
                running_mean: Some(RunningMean { eps: 1e-3, n_mean: 3, n_tol: 3 }),
                ..Default::default()
            },
        ),
        (
            "best_worst",
            TerminationCriteria { best_worst: Some(BestWorst { eps: 1e-6, n_tol: 3 }), ..Default::default() },
        ),
    ];
    let ten = |n: usize| (1..=n).map(|g| 10 * g).collect::<Vec<_>>();
    let plus = |b: &[f64], d: f64| b.iter().map(|v| v + d).collect::<Vec<_>>();

    let b = [500.0, 400.0, 300.0, 200.0, 100.0];
    let max_evals = history(&b, &plus(&b, 10.0), &[10, 20, 30, 40, 100]);
    let b: Vec<f64> = (0..51).map(|g| 1000.0 - 10.0 * g as f64).collect();
    let max_generations = history(&b, &plus(&b, 10.0), &(1..=51).collect::<Vec<_>>());
    let b = [1e-7, 5e-8, 2.5e-8, 1.25e-8];
    let abs_tol = history(&b, &plus(&b, 1.0), &ten(4));
    let b = [1e9, 1e9 - 1.0, 1e9 - 2.0, 1e9 - 3.0];
    let rel_tol = history(&b, &plus(&b, 10.0), &ten(4));
    let b: Vec<f64> = (0..7).map(|g| 1.0 - 1e-5 * g as f64).collect();
    let running_mean = history(&b, &plus(&b, 1.0), &ten(7));
    let b = [10.0, 9.0, 8.0, 7.0];
    let best_worst = history(&b, &b, &ten(4));

    let cases = [
        (StopReason::MaxEvaluations, max_evals),
        (StopReason::MaxGenerations, max_generations),
        (StopReason::AbsoluteTolerance, abs_tol),
        (StopReason::RelativeTolerance, rel_tol),
        (StopReason::RunningMean, running_mean),
        (StopReason::BestWorst, best_worst),
    ];
    for (expected, hist) in &cases {
        let fired: Vec<&str> =
            criteria.iter().filter(|(_, c)| should_terminate(hist, c).is_some()).map(|(name, _)| *name).collect();
        ensure(fired == [expected.name()], format!("trace for {} tripped {fired:?}", expected.name()))?;
        let all = TerminationCriteria {
            max_evals: Some(100),
            max_generations: Some(50),
            abs_tol: criteria[2].1.abs_tol,
            rel_tol: criteria[3].1.rel_tol,
            running_mean: criteria[4].1.running_mean,
            best_worst: criteria[5].1.best_worst,
        };
        ensure(should_terminate(hist, &all) == Some(*expected), format!("combined check for {}", expected.name()))?;
    }
    Ok(format!("{} criteria each tripped in isolation", cases.len()))
}

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "JW spectrum vs Fock-space oracle", limit: Some(Duration::from_secs(1)), run: jw_spectrum },
        Criterion { id: 2, name: "SA-VQE exactness on H2", limit: Some(Duration::from_secs(10)), run: sa_vqe_exact },
        Criterion {
            id: 3,
            name: "orbital-rotation invariance",
            limit: Some(Duration::from_secs(10)),
            run: rotation_invariance,
        },
        Criterion { id: 4, name: "RDM vs Pauli energy", limit: None, run: energy_paths },
        Criterion { id: 5, name: "DE/rand/1/bin on 5-D sphere", limit: Some(Duration::from_secs(30)), run: de_sphere },
        Criterion { id: 6, name: "optimizer comparison trends", limit: Some(Duration::from_secs(600)), run: compare_trends },
        Criterion { id: 7, name: "macro-loop monotonicity and convergence", limit: None, run: macro_loop },
        Criterion { id: 8, name: "crossover statistics", limit: None, run: crossover_stats },
        Criterion { id: 9, name: "scan saoo vs savqe", limit: None, run: scan_comparison },
        Criterion { id: 10, name: "termination criteria in isolation", limit: None, run: termination_units },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(c.run).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("[{tag}] {:>2} {} ({elapsed:.2?}): {detail}", c.id, c.name);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
