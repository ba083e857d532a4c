use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use saoo_core::de::{DEConfig, TerminationCriteria};
use saoo_core::fermion::{jordan_wigner, load_fcidump, MolecularIntegrals};
use saoo_core::local::{fd_gradient, LocalOptConfig};
use saoo_core::savqe::{build_initial_states, run_sa_vqe, sa_energy, AnsatzSpec, EnsembleSpec, Optimizer, SAObjective};
use saoo_core::Objective;
use saoo_oracles::{fock_hamiltonian, spin_sector_eigen, RawIntegrals};

fn fixture(name: &str) -> MolecularIntegrals {
    load_fcidump(format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn singlet_values(ints: &MolecularIntegrals) -> Vec<f64> {
    let raw = RawIntegrals { n_orb: ints.n_orb, core: ints.core_energy, h: &ints.h, g: ints.g_tensor() };
    spin_sector_eigen(&fock_hamiltonian(&raw), ints.n_orb, ints.n_elec, 0.0).0
}

#[test]
fn h2_bfgs_reaches_exact_ensemble_energy() {
    let ints = fixture("h2_sto3g.fcidump");
    let hq = jordan_wigner(&ints).unwrap();
    let ansatz = AnsatzSpec::default_roster(2, 2).unwrap();
    let refs = build_initial_states(2, 2).unwrap();
    let ens = EnsembleSpec::equal();
    let res = run_sa_vqe(&hq, &ansatz, &refs, &ens, &Optimizer::Bfgs(LocalOptConfig::default()), None, 0).unwrap();
    let lambda = singlet_values(&ints);
    let exact = 0.5 * (lambda[0] + lambda[1]);
    assert!((res.e_sa - exact).abs() < 1e-6, "{} vs {exact}", res.e_sa);
    assert!((res.sorted_energies[0] - lambda[0]).abs() < 1e-5);
    let overlap = res.final_states[0].inner(&res.final_states[1]).unwrap();
    assert!(overlap.norm() < 1e-10);
    let weighted: f64 = res.state_energies.iter().map(|e| 0.5 * e).sum();
    assert!((res.e_sa - weighted).abs() < 1e-12);
    for ev in res.trace.events() {
        let w: f64 = ev.e_states.iter().map(|e| 0.5 * e).sum();
        assert!((ev.e_sa - w).abs() < 1e-12);
    }
    assert_eq!(res.trace.last().unwrap().cumulative_evaluations, res.evaluations);
}

#[test]
fn ensemble_energy_respects_the_variational_bound() {
    for name in ["h2_sto3g.fcidump", "h4_chain_sto3g.fcidump"] {
        let ints = fixture(name);
        let hq = jordan_wigner(&ints).unwrap();
        let ansatz = AnsatzSpec::default_roster(ints.n_orb, ints.n_elec).unwrap();
        let refs = build_initial_states(ints.n_orb, ints.n_elec).unwrap();
        let lambda = singlet_values(&ints);
        let floor = 0.5 * (lambda[0] + lambda[1]);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..30 {
            let theta: Vec<f64> = (0..ansatz.parameter_count()).map(|_| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI)).collect();
            let r = sa_energy(&theta, &hq, &ansatz, &refs, &EnsembleSpec::equal()).unwrap();
            assert!(r.e_sa >= floor - 1e-10, "{name}");
            assert!(r.states[0].inner(&r.states[1]).unwrap().norm() < 1e-10);
            for s in &r.states {
                assert!((s.norm() - 1.0).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn identity_circuit_gives_reference_energies() {
    let ints = fixture("h2_sto3g.fcidump");
    let hq = jordan_wigner(&ints).unwrap();
    let ansatz = AnsatzSpec::default_roster(2, 2).unwrap();
    let refs = build_initial_states(2, 2).unwrap();
    let r = sa_energy(&[0.0, 0.0], &hq, &ansatz, &refs, &EnsembleSpec::new(vec![1.0, 0.0]).unwrap()).unwrap();
    assert_eq!(r.e_sa, r.energies[0]);
    assert!((r.energies[0] - ints.closed_shell_energy()).abs() < 1e-10);
    assert_eq!(r.energies[0], refs[0].expectation(&hq).unwrap());
    assert_eq!(r.energies[1], refs[1].expectation(&hq).unwrap());
}

#[test]
fn objective_gradient_is_consistent_with_secants() {
    let ints = fixture("h4_chain_sto3g.fcidump");
    let hq = jordan_wigner(&ints).unwrap();
    let ansatz = AnsatzSpec::default_roster(ints.n_orb, ints.n_elec).unwrap();
    let refs = build_initial_states(ints.n_orb, ints.n_elec).unwrap();
    let ens = EnsembleSpec::equal();
    let obj = SAObjective::new(&hq, &ansatz, &refs, &ens);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let theta: Vec<f64> = (0..ansatz.parameter_count()).map(|_| rng.random_range(-1.0..1.0)).collect();
    let g = fd_gradient(&obj, &theta, 1e-6).unwrap();
    let dir: Vec<f64> = (0..theta.len()).map(|_| rng.random_range(-1.0..1.0)).collect();
    let t = 1e-4;
    let shifted = |s: f64| -> Vec<f64> { theta.iter().zip(&dir).map(|(x, d)| x + s * d).collect() };
    let secant = (obj.evaluate(&shifted(t)).unwrap() - obj.evaluate(&shifted(-t)).unwrap()) / (2.0 * t);
    let directional: f64 = g.iter().zip(&dir).map(|(a, b)| a * b).sum();
    assert!((secant - directional).abs() < 1e-6, "{secant} vs {directional}");
    assert_eq!(obj.calls(), 2 * theta.len() + 2);
}

#[test]
fn de_runs_are_reproducible() {
    let ints = fixture("h2_sto3g.fcidump");
    let hq = jordan_wigner(&ints).unwrap();
    let ansatz = AnsatzSpec::default_roster(2, 2).unwrap();
    let refs = build_initial_states(2, 2).unwrap();
    let cfg = DEConfig {
        seed: 3,
        termination: TerminationCriteria::max_generations(30),
        ..DEConfig::for_dimension(2)
    };
    let run = || run_sa_vqe(&hq, &ansatz, &refs, &EnsembleSpec::equal(), &Optimizer::De(cfg.clone()), None, 0).unwrap();
    let (a, b) = (run(), run());
    assert_eq!(a.trace, b.trace);
    assert_eq!(a.theta_star, b.theta_star);
    assert_eq!(a.evaluations, 15 * 31);
    let best: Vec<f64> = a.trace.events().iter().map(|e| e.e_sa).collect();
    assert!(best.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn gradient_descent_improves_on_the_reference() {
    let ints = fixture("h2_sto3g.fcidump");
    let hq = jordan_wigner(&ints).unwrap();
    let ansatz = AnsatzSpec::default_roster(2, 2).unwrap();
    let refs = build_initial_states(2, 2).unwrap();
    let start = sa_energy(&[0.0, 0.0], &hq, &ansatz, &refs, &EnsembleSpec::equal()).unwrap().e_sa;
    let cfg = LocalOptConfig { gd_learning_rate: 0.5, max_iters: 400, ..Default::default() };
    let res = run_sa_vqe(&hq, &ansatz, &refs, &EnsembleSpec::equal(), &Optimizer::GradientDescent(cfg), None, 0).unwrap();
    assert!(res.e_sa < start);
}
