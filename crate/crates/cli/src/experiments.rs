//! One runner per experiment family. Each expands its config into an ordered
//! job list, runs the jobs on the worker pool and collects rows in job order.

use amplearn_core::complexity::{
    covering_log_bound, discrimination_experiment, greedy_packing, greedy_packing_from_pool, sample_lower_bound,
    sample_upper_bound, universal_lock, DiscriminationConfig, LockConstants, StateClassSpec, Strategy,
};
use amplearn_core::learner::{LearnerConfig, LearnerMode, Shots};
use amplearn_core::nosignal::{
    computational_basis, hadamard_basis, rotated_basis, run_signaling_protocol, AliceProgram, BobEncoding, BobOp,
    LocalCircuit,
};
use amplearn_core::protocol::{run_amplify_learn, GateConstants, ProtocolConfig, QueryConstants, TriangleConstants};
use amplearn_core::search::{
    grover_success_closed_form, initial_angle, rounds_to_constant, run_grover, run_ideal_log_search_with,
    LogSearchOptions,
};
use amplearn_core::PureState;
use anyhow::{anyhow, bail, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{
    AmplifyLearnParams, BobKind, BoundsParams, CubicParams, DiscriminateParams, Experiment, ExperimentConfig,
    GroverParams, PackParams, ProgramKind, SignalParams, TriangleParams,
};
use crate::table::{num, opt, ResultTable};

/// Generator for sub-run `stream` of a run seeded with `seed`. Streams are
/// disjoint, so results do not depend on scheduling.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn sub_seed(seed: u64, stream: u64) -> u64 {
    stream_rng(seed, stream).random()
}

type Rows = Vec<Vec<String>>;

fn par_rows<T: Sync>(jobs: &[T], f: impl Fn(usize, &T) -> Result<Rows> + Sync) -> Result<Rows> {
    let chunks: Vec<Rows> = jobs
        .par_iter()
        .enumerate()
        .map(|(i, j)| f(i, j))
        .collect::<Result<_>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

fn s<T: ToString>(x: T) -> String {
    x.to_string()
}

pub fn run(cfg: &ExperimentConfig, threads: Option<usize>) -> Result<ResultTable> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = builder.build()?;
    pool.install(|| match &cfg.experiment {
        Experiment::Grover(p) => grover(p),
        Experiment::Cubic(p) => cubic(p),
        Experiment::AmplifyLearn(p) => amplify_learn(p, cfg.seed, cfg.exact),
        Experiment::Signal(p) => signal(p, cfg.seed),
        Experiment::Bounds(p) => bounds(p),
        Experiment::Pack(p) => pack(p, cfg.seed),
        Experiment::Discriminate(p) => discriminate(p, cfg.seed, cfg.exact),
        Experiment::Triangle(p) => triangle(p),
    })
}

fn grover(p: &GroverParams) -> Result<ResultTable> {
    let mut jobs = Vec::new();
    for &n in &p.n {
        if p.all_tau {
            jobs.extend((0..1usize << n).map(|t| (n, t)));
        } else {
            jobs.extend(p.tau.iter().map(|&t| (n, t)));
        }
    }
    let rows = par_rows(&jobs, |_, &(n, tau)| {
        let dim = (1usize << n) as f64;
        let rounds = p
            .rounds
            .unwrap_or(2 * (std::f64::consts::FRAC_PI_4 * dim.sqrt()).ceil() as usize);
        let traj = run_grover(n, tau, rounds)?;
        Ok(traj
            .success
            .iter()
            .enumerate()
            .map(|(r, &succ)| vec![s(n), s(tau), s(r), num(succ), num(grover_success_closed_form(n, r)), s(r)])
            .collect())
    })?;
    let mut t = ResultTable::new(vec!["n", "tau", "round", "success", "closed_form", "queries"]);
    rows.into_iter().for_each(|r| t.push(r));
    Ok(t)
}

fn cubic(p: &CubicParams) -> Result<ResultTable> {
    let rows = par_rows(&p.n, |_, &n| {
        let opts = LogSearchOptions {
            threshold: p.threshold,
            polish: p.polish,
            ..Default::default()
        };
        let traj = run_ideal_log_search_with(n, p.tau, opts)?;
        let planned = rounds_to_constant(n, p.threshold)?;
        let theta0 = initial_angle(n);
        Ok(traj
            .angles
            .iter()
            .zip(&traj.success)
            .enumerate()
            .map(|(r, (&angle, &succ))| {
                vec![
                    s(n),
                    s(p.tau),
                    num(p.threshold),
                    s(r),
                    num(angle),
                    num(3f64.powi(r as i32) * theta0),
                    num(succ),
                    s(r),
                    s(planned),
                ]
            })
            .collect())
    })?;
    let mut t = ResultTable::new(vec![
        "n",
        "tau",
        "threshold",
        "round",
        "angle",
        "tripled_angle",
        "success",
        "queries",
        "planned_rounds",
    ]);
    rows.into_iter().for_each(|r| t.push(r));
    Ok(t)
}

fn mode_name(m: LearnerMode) -> &'static str {
    match m {
        LearnerMode::Ideal => "ideal",
        LearnerMode::Variational => "variational",
    }
}

fn amplify_learn(p: &AmplifyLearnParams, seed: u64, exact: bool) -> Result<ResultTable> {
    let trials: Vec<u64> = (0..p.trials).collect();
    let rows = par_rows(&trials, |_, &trial| {
        let learner = LearnerConfig {
            mode: p.mode,
            sample_budget: p.samples_per_round,
            shots_per_estimate: if exact { Shots::Exact } else { Shots::Finite(p.shots) },
            target_fidelity: p.target_fidelity,
            max_iterations: p.max_iterations,
            seed: sub_seed(seed, trial),
            ..Default::default()
        };
        let cfg = ProtocolConfig {
            threshold: p.threshold,
            queries_per_copy: p.queries_per_copy,
            max_rounds: p.max_rounds,
            layers: p.layers,
            warm_start: p.warm_start,
            abort_on_failure: p.abort_on_failure,
            ..ProtocolConfig::new(p.n, p.tau, p.samples_per_round, learner)
        };
        let run = run_amplify_learn(&cfg)?;
        let aborted = run.aborted_at.is_some();
        let head = |r: usize| vec![s(trial), s(p.n), s(p.tau), s(mode_name(p.mode)), s(r)];
        let mut rows = Vec::new();
        let mut first = head(0);
        first.extend([
            num(run.trajectory.success[0]),
            num(run.trajectory.angles[0]),
            String::new(),
            String::new(),
            String::new(),
            s(0),
            s(0),
            s(0),
            s(0),
            s(0),
            s(0),
            s(aborted),
        ]);
        rows.push(first);
        let mut gates = 0;
        for rec in &run.rounds {
            let r = rec.round as u64;
            gates += run.ledger.gates_per_round[rec.round - 1];
            let q_train = r * p.samples_per_round * p.queries_per_copy;
            let mut row = head(rec.round);
            row.extend([
                num(rec.success),
                num(rec.angle),
                num(rec.learn.achieved_fidelity),
                num(rec.learn.estimated_fidelity),
                s(rec.learn.converged),
                s(rec.learn.copies_consumed),
                s(rec.learn.iterations),
                s(q_train),
                s(r),
                s(q_train + r),
                s(gates),
                s(aborted),
            ]);
            rows.push(row);
        }
        Ok(rows)
    })?;
    let mut t = ResultTable::new(vec![
        "trial",
        "n",
        "tau",
        "mode",
        "round",
        "success",
        "angle",
        "learned_fidelity",
        "estimated_fidelity",
        "converged",
        "copies",
        "iterations",
        "q_train",
        "q_production",
        "q_tot",
        "gates",
        "aborted",
    ]);
    rows.into_iter().for_each(|r| t.push(r));
    Ok(t)
}

fn join(p: &[f64]) -> String {
    p.iter().map(|x| num(*x)).collect::<Vec<_>>().join(";")
}

fn kind_names(p: &SignalParams) -> (&'static str, &'static str) {
    let prog = match p.program {
        ProgramKind::Magic => "magic",
        ProgramKind::Cptp => "cptp",
    };
    let bob = match p.bob {
        BobKind::OracleChoice => "oracle-choice",
        BobKind::Basis => "basis",
        BobKind::Identical => "identical",
    };
    (prog, bob)
}

fn signal(p: &SignalParams, seed: u64) -> Result<ResultTable> {
    let n = p.n;
    // (trial, phi) jobs
    let jobs: Vec<(u64, Option<f64>)> = match p.program {
        ProgramKind::Magic if !p.phi.is_empty() => p.phi.iter().map(|&f| (0, Some(f))).collect(),
        ProgramKind::Magic => vec![(0, None)],
        ProgramKind::Cptp => (0..p.trials).map(|t| (t, None)).collect(),
    };
    let (prog_name, bob_name) = kind_names(p);
    let rows = par_rows(&jobs, |_, &(trial, phi)| {
        let bob = match (p.bob, phi) {
            (BobKind::OracleChoice, _) => BobEncoding::oracle_choice(n, p.tau)?,
            (BobKind::Basis, Some(f)) => BobEncoding::measurement_basis(computational_basis(1), rotated_basis(f)),
            (BobKind::Basis, None) => BobEncoding::measurement_basis(computational_basis(n), hadamard_basis(n)),
            (BobKind::Identical, _) => BobEncoding::identical(BobOp::Measure(hadamard_basis(n))),
        };
        let alice = match p.program {
            ProgramKind::Magic => AliceProgram::MagicReflection {
                probe: hadamard_basis(n)[0].clone(),
                basis: hadamard_basis(n),
            },
            ProgramKind::Cptp => {
                let mut rng = stream_rng(seed, trial);
                AliceProgram::Cptp(LocalCircuit::random(n, p.ancilla, p.depth, &mut rng)?)
            }
        };
        let rep = run_signaling_protocol(n, &alice, &bob)?;
        Ok(vec![vec![
            s(trial),
            s(n),
            s(prog_name),
            s(bob_name),
            opt(phi),
            num(rep.tv),
            num(rep.mi),
            join(&rep.p0),
            join(&rep.p1),
        ]])
    })?;
    let mut t = ResultTable::new(vec!["trial", "n", "program", "bob", "phi", "tv", "mi", "p0", "p1"]);
    rows.into_iter().for_each(|r| t.push(r));
    Ok(t)
}

fn bounds(p: &BoundsParams) -> Result<ResultTable> {
    let jobs: Vec<(usize, f64)> = p.n.iter().flat_map(|&n| p.gates.iter().map(move |&g| (n, g))).collect();
    let rows = par_rows(&jobs, |_, &(n, g)| {
        let spec = StateClassSpec {
            entropy_constant: p.entropy_constant,
            ..StateClassSpec::new(n, g)
        };
        let cover = covering_log_bound(&spec, p.epsilon)?;
        let lo = sample_lower_bound(n, g, p.epsilon, p.delta, p.c2);
        let hi = sample_upper_bound(n, g, p.epsilon, p.delta, p.c1);
        let lock = universal_lock(
            n,
            p.epsilon,
            p.delta,
            LockConstants {
                c2: p.params_per_gate,
                c: p.c2,
            },
        )?;
        let get = |k: &str| opt(lock.get(k));
        Ok(vec![vec![
            s(n),
            num(g),
            num(p.epsilon),
            num(p.delta),
            num(cover.value),
            num(lo.value),
            num(hi.value),
            get("g_univ_floor"),
            get("locked_samples"),
            get("g_unlocked"),
            get("unlocked_samples"),
            get("unlocked_sample_lower_bound"),
            s(lo.in_range && cover.in_range),
        ]])
    })?;
    let mut t = ResultTable::new(vec![
        "n",
        "gates",
        "epsilon",
        "delta",
        "covering_nats",
        "sample_lower",
        "sample_upper",
        "g_univ_floor",
        "locked_samples",
        "g_unlocked",
        "unlocked_samples",
        "unlocked_sample_lower",
        "in_range",
    ]);
    rows.into_iter().for_each(|r| t.push(r));
    Ok(t)
}

fn pack(p: &PackParams, seed: u64) -> Result<ResultTable> {
    let jobs: Vec<(usize, u64)> = p.dim.iter().flat_map(|&d| (0..p.repeats).map(move |r| (d, r))).collect();
    let rows = par_rows(&jobs, |i, &(dim, rep)| {
        let sub = sub_seed(seed, i as u64);
        let set = greedy_packing(dim, p.separation, p.pool, sub)?;
        Ok(vec![vec![
            s(dim),
            num(p.separation),
            s(p.pool),
            s(rep),
            s(sub),
            s(set.len()),
            num(set.min_distance()),
            s(set.verify()),
        ]])
    })?;
    let mut t = ResultTable::new(vec!["dim", "separation", "pool", "repeat", "seed", "k", "min_distance", "verified"]);
    rows.into_iter().for_each(|r| t.push(r));
    Ok(t)
}

fn strategy_name(st: Strategy) -> &'static str {
    match st {
        Strategy::ExactPosterior => "exact-posterior",
        Strategy::PairwiseHelstromVote => "pairwise-helstrom-vote",
    }
}

fn discriminate(p: &DiscriminateParams, seed: u64, exact: bool) -> Result<ResultTable> {
    let packing = match p.overlap {
        Some(a) => {
            let b = PureState::from_real(&[a, (1.0 - a * a).max(0.0).sqrt()])?;
            greedy_packing_from_pool([PureState::basis(1, 0)?, b], f64::MIN_POSITIVE)?
        }
        None => greedy_packing(p.dim, p.separation, p.pool, sub_seed(seed, 0))?,
    };
    if packing.len() < 2 {
        bail!("packing produced {} states; need at least 2", packing.len());
    }
    if let Some(&k) = p.k.iter().find(|&&k| k > packing.len()) {
        return Err(anyhow!("K = {k} exceeds the {} packed states", packing.len()));
    }
    let jobs: Vec<(usize, u32)> = p.k.iter().flat_map(|&k| p.copies.iter().map(move |&m| (k, m))).collect();
    let rows = par_rows(&jobs, |i, &(k, m)| {
        let set = packing.truncate(k);
        let cfg = DiscriminationConfig {
            copies: m,
            strategy: p.strategy,
            trials: p.trials,
            seed: sub_seed(seed, 1 + i as u64),
            exact,
        };
        let rep = discrimination_experiment(&set, &cfg)?;
        let helstrom = (k == 2).then(|| {
            let f = set.states()[0].fidelity(&set.states()[1]).unwrap_or(0.0);
            0.5 * (1.0 - (1.0 - f.powi(m as i32)).max(0.0).sqrt())
        });
        Ok(vec![vec![
            s(k),
            s(m),
            s(strategy_name(p.strategy)),
            s(p.trials),
            s(exact),
            num(rep.error_rate),
            num(rep.error_sigma),
            opt(helstrom),
            num(rep.mutual_information),
            num(rep.mi_sigma),
            num(rep.fano_lower),
            num(rep.chi),
            num(rep.holevo_ceiling),
            s(rep.fano_ok),
            s(rep.holevo_ok),
        ]])
    })?;
    let mut t = ResultTable::new(vec![
        "k",
        "copies",
        "strategy",
        "trials",
        "exact",
        "error_rate",
        "error_sigma",
        "helstrom_error",
        "mutual_information",
        "mi_sigma",
        "fano_lower",
        "chi",
        "holevo_ceiling",
        "fano_ok",
        "holevo_ok",
    ]);
    rows.into_iter().for_each(|r| t.push(r));
    Ok(t)
}

fn triangle(p: &TriangleParams) -> Result<ResultTable> {
    let k = TriangleConstants {
        query: QueryConstants { c1: p.c1, c_q: p.c_q },
        gate: GateConstants { c4: p.c4, c_ns: p.c_ns },
        c_g: p.c_g,
        c_m: p.c_m,
        c2: p.c2,
        epsilon: p.epsilon,
        delta: p.delta,
        threshold: p.threshold,
    };
    let ns: Vec<usize> = (p.n_min..=p.n_max).collect();
    let rows = par_rows(&ns, |_, &n| {
        let rep = amplearn_core::protocol::triangle_report([n], k, p.simulate_up_to)?;
        Ok(rep
            .rows
            .iter()
            .map(|r| {
                let sim = r.simulated.as_ref();
                vec![
                    s(r.n),
                    num(r.n_items),
                    s(r.rounds),
                    num(r.query_floor),
                    num(r.gate_floor),
                    num(r.sample_floor),
                    num(r.reference),
                    opt(r.ms_floor_from_queries),
                    opt(r.g_floor_from_depth),
                    num(r.unlocked_sample_bound),
                    s(r.degenerate),
                    sim.map(|x| s(x.samples_per_round)).unwrap_or_default(),
                    sim.map(|x| s(x.total_queries)).unwrap_or_default(),
                    sim.map(|x| s(x.gate_sum)).unwrap_or_default(),
                    sim.map(|x| s(x.query_ok)).unwrap_or_default(),
                    opt(sim.map(|x| x.query_margin)),
                    sim.map(|x| s(x.gate_ok)).unwrap_or_default(),
                    opt(sim.map(|x| x.final_success)),
                ]
            })
            .collect())
    })?;
    let mut t = ResultTable::new(vec![
        "n",
        "N",
        "rounds",
        "query_floor",
        "gate_floor",
        "sample_floor",
        "reference",
        "ms_floor",
        "g_floor",
        "unlocked_sample_lower",
        "degenerate",
        "sim_samples_per_round",
        "sim_q_tot",
        "sim_gate_sum",
        "query_ok",
        "query_margin",
        "gate_ok",
        "sim_success",
    ]);
    rows.into_iter().for_each(|r| t.push(r));
    Ok(t)
}
