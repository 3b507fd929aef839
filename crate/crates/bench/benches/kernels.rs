use std::hint::black_box;

use amplearn_core::complexity::{discrimination_experiment, greedy_packing, DiscriminationConfig, Strategy};
use amplearn_core::learner::{exact_preparation_params, prepare, AnsatzLayout};
use amplearn_core::nosignal::{computational_basis, hadamard_basis, run_signaling_protocol, AliceProgram, BobEncoding};
use amplearn_core::protocol::{run_amplify_learn, ProtocolConfig};
use amplearn_core::search::{run_grover, run_ideal_log_search};
use amplearn_core::{LearnerConfig, PureState};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    for n in [6, 10] {
        g.bench_with_input(BenchmarkId::new("grover_full", n), &n, |b, &n| {
            let rounds = (std::f64::consts::FRAC_PI_4 * ((1u64 << n) as f64).sqrt()).ceil() as usize;
            b.iter(|| run_grover(black_box(n), 1, rounds).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("log_search", n), &n, |b, &n| {
            b.iter(|| run_ideal_log_search(black_box(n), 1, 0.5).unwrap())
        });
    }
    g.finish();
}

fn learning(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let psi = PureState::haar_random(8, &mut rng);
    let layout = AnsatzLayout::exact_preparation(8);
    c.bench_function("exact_preparation_n8", |b| {
        b.iter(|| prepare(&layout, &exact_preparation_params(black_box(&psi))).unwrap())
    });
    c.bench_function("amplify_learn_ideal_n8", |b| {
        let cfg = ProtocolConfig::new(8, 3, 100, LearnerConfig::ideal(100));
        b.iter(|| run_amplify_learn(black_box(&cfg)).unwrap())
    });
}

fn information(c: &mut Criterion) {
    let bob = BobEncoding::measurement_basis(computational_basis(1), hadamard_basis(1));
    let alice = AliceProgram::magic_plus_probe();
    c.bench_function("magic_signal_n1", |b| {
        b.iter(|| run_signaling_protocol(1, black_box(&alice), &bob).unwrap())
    });
    let set = greedy_packing(4, 0.5, 2_000, 1).unwrap().truncate(8);
    let cfg = DiscriminationConfig {
        copies: 4,
        strategy: Strategy::ExactPosterior,
        trials: 10_000,
        seed: 0,
        exact: false,
    };
    c.bench_function("discriminate_k8_10k", |b| {
        b.iter(|| discrimination_experiment(black_box(&set), &cfg).unwrap())
    });
}

criterion_group!(benches, search, learning, information);
criterion_main!(benches);
