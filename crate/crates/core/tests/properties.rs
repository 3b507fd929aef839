use amplearn_core::complexity::{
    fano_lower, greedy_packing, sample_lower_bound, sample_upper_bound, covering_log_bound, StateClassSpec,
};
use amplearn_core::learner::{
    estimate_overlap, exact_preparation_params, prepare, AnsatzLayout, CopySource, LearnerConfig, LearnerMode, Shots,
};
use amplearn_core::nosignal::{
    alice_input, computational_basis, hadamard_basis, rotated_basis, run_signaling_protocol, AliceProgram,
    BobEncoding, BobOp, LocalCircuit,
};
use amplearn_core::protocol::{run_amplify_learn, ProtocolConfig};
use amplearn_core::qcore::{
    householder_apply, no_reflection_witness, partial_trace_pure, pure_trace_distance, trace_distance,
    von_neumann_entropy, Keep,
};
use amplearn_core::search::{cubic_step, grover_success_closed_form, run_grover, Oracle};
use amplearn_core::{PureState, C64};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn haar(n: usize, seed: u64) -> PureState {
    PureState::haar_random(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// `sin θ |τ> + cos θ |τ⊥>` with `|τ⊥>` uniform over unmarked items.
fn plane_state(n: usize, tau: usize, theta: f64) -> PureState {
    let dim = 1usize << n;
    let rest = theta.cos() / ((dim - 1) as f64).sqrt();
    let amps: Vec<f64> = (0..dim).map(|x| if x == tau { theta.sin() } else { rest }).collect();
    PureState::from_real(&amps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn grover_matches_closed_form(n in 2usize..8, tau_seed in any::<usize>(), r in 0usize..20) {
        let tau = tau_seed % (1 << n);
        let traj = run_grover(n, tau, r).unwrap();
        prop_assert_eq!(traj.queries, r as u64);
        prop_assert!((traj.final_success() - grover_success_closed_form(n, r)).abs() < 1e-9);
    }

    #[test]
    fn cubic_step_triples_the_angle(n in 1usize..9, theta in 0.001f64..1.5, tau_seed in any::<usize>()) {
        let tau = tau_seed % (1 << n);
        let psi = plane_state(n, tau, theta);
        let next = cubic_step(&psi, &Oracle::marking(n, tau).unwrap()).unwrap();
        prop_assert!((next.amp(tau).re - (3.0 * theta).sin()).abs() < 1e-10);
        prop_assert!(next.amp(tau).im.abs() < 1e-12);
    }

    #[test]
    fn householder_is_an_involution(n in 1usize..6, s1 in any::<u64>(), s2 in any::<u64>()) {
        let (a, t) = (haar(n, s1), haar(n, s2));
        let twice = householder_apply(&a, &householder_apply(&a, &t).unwrap()).unwrap();
        prop_assert!(pure_trace_distance(&twice, &t).unwrap() < 1e-12);
        let neg = householder_apply(&a, &a).unwrap();
        prop_assert!((neg.inner(&a).unwrap() + C64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn trace_distance_is_a_bounded_symmetric_metric(n in 1usize..5, s1 in any::<u64>(), s2 in any::<u64>()) {
        let (a, b) = (haar(n, s1), haar(n, s2));
        let d = trace_distance(&a.to_density(), &b.to_density()).unwrap();
        let e = trace_distance(&b.to_density(), &a.to_density()).unwrap();
        prop_assert!((0.0..=1.0).contains(&d));
        prop_assert!((d - e).abs() < 1e-12);
        prop_assert!((d - pure_trace_distance(&a, &b).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn pure_bipartite_marginals_share_entropy(na in 1usize..4, nb in 1usize..4, seed in any::<u64>()) {
        let psi = haar(na + nb, seed);
        let dims = (1 << na, 1 << nb);
        let ra = partial_trace_pure(&psi, dims, Keep::A).unwrap();
        let rb = partial_trace_pure(&psi, dims, Keep::B).unwrap();
        let tr: f64 = (0..ra.dim()).map(|i| ra.entries()[(i, i)].re).sum();
        prop_assert!((tr - 1.0).abs() < 1e-12);
        let (sa, sb) = (von_neumann_entropy(&ra).unwrap(), von_neumann_entropy(&rb).unwrap());
        prop_assert!((sa - sb).abs() < 1e-8);
    }

    #[test]
    fn orthogonal_witness_is_sqrt_two(n in 1usize..5, i_seed in any::<usize>(), j_seed in any::<usize>()) {
        let dim = 1 << n;
        let i = i_seed % dim;
        let j = (i + 1 + j_seed % (dim - 1)) % dim;
        let w = no_reflection_witness(&PureState::basis(n, i).unwrap(), &PureState::basis(n, j).unwrap()).unwrap();
        prop_assert!((w - 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn witness_matches_real_overlap_closed_form(c in -0.95f64..0.999) {
        // ψ = |0>, φ = c|0> + √(1−c²)|1>
        let psi = PureState::basis(1, 0).unwrap();
        let phi = PureState::from_real(&[c, (1.0 - c * c).sqrt()]).unwrap();
        let w = no_reflection_witness(&psi, &phi).unwrap();
        prop_assert!((w - 2f64.sqrt() * (1.0 - c)).abs() < 1e-9);
    }

    #[test]
    fn exact_preparation_reproduces_random_states(n in 1usize..6, seed in any::<u64>()) {
        let psi = haar(n, seed);
        let got = prepare(&AnsatzLayout::exact_preparation(n), &exact_preparation_params(&psi)).unwrap();
        prop_assert!(got.fidelity(&psi).unwrap() > 1.0 - 1e-10);
    }

    #[test]
    fn estimates_are_probabilities(seed in any::<u64>(), shots in 1u64..500) {
        let psi = haar(2, seed);
        let layout = AnsatzLayout::hardware_efficient(2, 1);
        let params = amplearn_core::AnsatzParams(vec![0.3; layout.param_count()]);
        let mut source = CopySource::new(psi, shots);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let est = estimate_overlap(&layout, &params, &mut source, Shots::Finite(shots), &mut rng).unwrap();
        prop_assert!((0.0..=1.0).contains(&est));
        prop_assert_eq!(source.remaining(), 0);
    }

    #[test]
    fn ledger_identities(n in 2usize..9, ms in 1u64..300, qpc in 1u64..4) {
        let cfg = ProtocolConfig {
            queries_per_copy: qpc,
            ..ProtocolConfig::new(n, 1, ms, LearnerConfig::ideal(ms))
        };
        let run = run_amplify_learn(&cfg).unwrap();
        let l = &run.ledger;
        prop_assert_eq!(l.oracle_queries, l.training_queries + l.rounds);
        prop_assert!(l.training_queries >= qpc * ms * l.rounds);
        prop_assert!(l.training_queries <= l.oracle_queries);

        let more = ProtocolConfig { samples_per_round: ms + 1, ..cfg.clone() };
        let bigger = run_amplify_learn(&more).unwrap();
        prop_assert!(bigger.ledger.training_queries >= l.training_queries);
    }

    #[test]
    fn upper_bound_dominates_lower(n in 1usize..30, g in 1.0f64..1e6, eps in 0.001f64..0.25, delta in 0.0001f64..0.1) {
        let lo = sample_lower_bound(n, g, eps, delta, 1.0).value;
        let hi = sample_upper_bound(n, g, eps, delta, 1.0).value;
        prop_assert!(hi >= lo);
    }

    #[test]
    fn unlocked_substitution_identity(n in 2usize..40, eps in 0.01f64..0.25, delta in 0.001f64..0.1) {
        let big_n = (n as f64).exp2();
        let g = big_n.sqrt() / big_n.ln();
        let want = (g + (1.0 / delta).ln()) / (eps * eps);
        let got = sample_lower_bound(n, g, eps, delta, 1.0).value;
        prop_assert!((got - want).abs() <= 1e-12 * want);
    }

    #[test]
    fn cptp_programs_do_not_signal(seed in any::<u64>(), n in 1usize..3, ancilla in 0usize..2, depth in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let prog = AliceProgram::Cptp(LocalCircuit::random(n, ancilla, depth, &mut rng).unwrap());
        let bob = BobEncoding::measurement_basis(computational_basis(n), hadamard_basis(n));
        let rep = run_signaling_protocol(n, &prog, &bob).unwrap();
        prop_assert!(rep.tv < 1e-10 && rep.mi < 1e-9);
        prop_assert!((rep.p0.iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn bounds_are_monotone_on_a_grid() {
    for n in 2..12 {
        let cap = (n as f64).exp2();
        let mut prev = 0.0;
        for g in (1..=(cap as usize)).map(|g| g as f64) {
            let v = sample_lower_bound(n, g, 0.2, 0.05, 1.0).value;
            assert!(v >= prev);
            prev = v;
        }
        for (e1, e2) in [(0.05, 0.1), (0.1, 0.2), (0.2, 0.25)] {
            assert!(sample_lower_bound(n, 4.0, e1, 0.05, 1.0).value >= sample_lower_bound(n, 4.0, e2, 0.05, 1.0).value);
            assert!(sample_upper_bound(n, 4.0, e1, 0.05, 1.0).value >= sample_upper_bound(n, 4.0, e2, 0.05, 1.0).value);
        }
        for (d1, d2) in [(0.001, 0.01), (0.01, 0.1)] {
            assert!(sample_lower_bound(n, 4.0, 0.2, d1, 1.0).value >= sample_lower_bound(n, 4.0, 0.2, d2, 1.0).value);
            assert!(sample_upper_bound(n, 4.0, 0.2, d1, 1.0).value >= sample_upper_bound(n, 4.0, 0.2, d2, 1.0).value);
        }
    }
    let mut prev = 0.0;
    for g in 1..100 {
        let v = covering_log_bound(&StateClassSpec::new(4, g as f64), 0.1).unwrap().value;
        assert!(v >= prev);
        prev = v;
    }
    assert!(fano_lower(8, 0.1).unwrap() >= fano_lower(8, 0.3).unwrap());
}

#[test]
fn packing_grows_with_dimension() {
    let seeds = 20;
    let mut grew = 0;
    for seed in 0..seeds {
        let small = greedy_packing(4, 0.5, 5_000, seed).unwrap();
        let large = greedy_packing(8, 0.5, 5_000, seed).unwrap();
        assert!(small.verify() && large.verify());
        if large.len() > small.len() {
            grew += 1;
        }
    }
    assert!(grew * 100 >= 95 * seeds);
}

#[test]
fn perturbed_bob_basis_signal_fades_monotonically() {
    let alice = AliceProgram::magic_plus_probe();
    let mut prev = f64::INFINITY;
    for step in (0..=32).rev() {
        let phi = std::f64::consts::FRAC_PI_2 * step as f64 / 32.0;
        let bob = BobEncoding::measurement_basis(computational_basis(1), rotated_basis(phi));
        let rep = run_signaling_protocol(1, &alice, &bob).unwrap();
        assert!(rep.tv <= prev + 1e-12, "phi={phi} tv={}", rep.tv);
        // both Bob settings leave Alice the same average state
        let a = alice_input(1, &bob.zero).unwrap().average();
        let b = alice_input(1, &bob.one).unwrap().average();
        assert!((a.entries() - b.entries()).norm() < 1e-12);
        prev = rep.tv;
    }
    assert!(prev < 1e-12);
}

#[test]
fn magic_with_oracle_choice_is_rejected() {
    let bob = BobEncoding::oracle_choice(1, 0).unwrap();
    assert!(run_signaling_protocol(1, &AliceProgram::magic_plus_probe(), &bob).is_err());
    assert!(alice_input(1, &BobOp::Nothing).is_ok());
}

#[test]
fn variational_protocol_reaches_constant_success() {
    let trials = 30;
    let mut ok = 0;
    for seed in 0..trials {
        let learner = LearnerConfig {
            mode: LearnerMode::Variational,
            seed,
            ..Default::default()
        };
        let run = run_amplify_learn(&ProtocolConfig::new(3, (seed % 8) as usize, 20_000, learner)).unwrap();
        if run.trajectory.final_success() >= 0.3 {
            ok += 1;
        }
    }
    assert!(ok * 10 >= 7 * trials, "{ok}/{trials}");
}
