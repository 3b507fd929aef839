//! The amplify–learn loop: each round applies `−R(θ_r) R_τ` with the
//! reflection synthesized from the last learned circuit, then prepares fresh
//! copies of the new state and learns it. Every oracle use is ledgered.

use serde::Serialize;

use crate::complexity::sample_lower_bound;
use crate::error::{Error, Result};
use crate::learner::{
    exact_preparation_params, gate_complexity, learn_state_from, prepare, synthesized_reflection_apply, AnsatzLayout,
    AnsatzParams, CopySource, LearnReport, LearnerConfig, LearnerMode,
};
use crate::qcore::PureState;
use crate::search::{apply_oracle, rounds_to_constant, Oracle, SearchTrajectory, DEFAULT_THRESHOLD};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProtocolConfig {
    pub n: usize,
    pub tau: usize,
    /// `M_s`, fresh copies prepared for learning in every round.
    pub samples_per_round: u64,
    pub learner: LearnerConfig,
    pub threshold: f64,
    /// Oracle calls charged per fresh copy (`c_prep`).
    pub queries_per_copy: u64,
    pub max_rounds: usize,
    /// Hardware-efficient layers for the variational learner; `None` picks
    /// the smallest state-universal depth.
    pub layers: Option<usize>,
    pub warm_start: bool,
    pub abort_on_failure: bool,
}

impl ProtocolConfig {
    pub fn new(n: usize, tau: usize, samples_per_round: u64, learner: LearnerConfig) -> Self {
        Self {
            n,
            tau,
            samples_per_round,
            learner,
            threshold: DEFAULT_THRESHOLD,
            queries_per_copy: 1,
            max_rounds: 64,
            layers: None,
            warm_start: true,
            abort_on_failure: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.queries_per_copy < 1 {
            return Err(Error::OutOfRange("queries_per_copy must be >= 1".into()));
        }
        Oracle::marking(self.n, self.tau)?;
        rounds_to_constant(self.n, self.threshold)?;
        self.learner.validate()
    }
}

/// Running resource totals of one protocol run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ResourceLedger {
    /// `Q_tot = Q_train + production queries`
    pub oracle_queries: u64,
    pub training_queries: u64,
    pub production_queries: u64,
    pub copies_consumed: u64,
    pub two_qubit_gates: u64,
    pub rounds: u64,
    pub samples_per_round: u64,
    pub queries_per_copy: u64,
    /// `G` of the reflection circuit used in each production round.
    pub gates_per_round: Vec<u64>,
}

impl ResourceLedger {
    fn charge_production(&mut self, gates: u64) {
        self.production_queries += 1;
        self.oracle_queries += 1;
        self.two_qubit_gates += gates;
        self.gates_per_round.push(gates);
        self.rounds += 1;
    }

    fn charge_training(&mut self, copies: u64) {
        let q = copies * self.queries_per_copy;
        self.training_queries += q;
        self.oracle_queries += q;
        self.copies_consumed += copies;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundRecord {
    pub round: usize,
    pub success: f64,
    pub angle: f64,
    pub learn: LearnReport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolRun {
    pub trajectory: SearchTrajectory,
    pub ledger: ResourceLedger,
    pub rounds: Vec<RoundRecord>,
    pub aborted_at: Option<usize>,
}

/// Parameters that make [`AnsatzLayout::hardware_efficient`] prepare `|s>`:
/// `Ry(π/2)` on every qubit in the first block, which the CNOT ring fixes.
pub fn uniform_params_hardware_efficient(layout: &AnsatzLayout) -> AnsatzParams {
    let mut p = AnsatzParams::zeros(layout);
    for q in 0..layout.n() {
        p.0[2 * q] = std::f64::consts::FRAC_PI_2;
    }
    p
}

/// Runs the loop for `rounds_to_constant(n, threshold)` rounds (capped at
/// `max_rounds`). The round count is fixed in advance since `θ₀` is known.
pub fn run_amplify_learn(config: &ProtocolConfig) -> Result<ProtocolRun> {
    config.validate()?;
    let n = config.n;
    let oracle = Oracle::marking(n, config.tau)?;
    let planned = rounds_to_constant(n, config.threshold)?.min(config.max_rounds);
    let s = PureState::uniform(n);

    let (mut layout, mut params) = match config.learner.mode {
        LearnerMode::Ideal => (AnsatzLayout::exact_preparation(n), exact_preparation_params(&s)),
        LearnerMode::Variational => {
            let layout = match config.layers {
                Some(l) => AnsatzLayout::hardware_efficient(n, l),
                None => AnsatzLayout::state_universal(n),
            };
            let p = uniform_params_hardware_efficient(&layout);
            (layout, p)
        }
    };

    let mut ledger = ResourceLedger {
        samples_per_round: config.samples_per_round,
        queries_per_copy: config.queries_per_copy,
        ..Default::default()
    };
    let mut trajectory = SearchTrajectory::start(config.tau, s);
    let mut records = Vec::with_capacity(planned);
    let mut aborted_at = None;

    // −R(θ) R_τ |in>
    let amplify = |layout: &AnsatzLayout, params: &AnsatzParams, input: &PureState| -> Result<PureState> {
        let flipped = apply_oracle(&oracle, input)?;
        Ok(synthesized_reflection_apply(layout, params, &flipped)?.negated())
    };

    for r in 0..planned {
        let current = trajectory.states.last().unwrap().clone();
        let next = amplify(&layout, &params, &current)?;
        ledger.charge_production(gate_complexity(&layout));
        trajectory.queries += 1;
        trajectory.push(next);

        // fresh copies: rerun the learned circuit, then one amplification step
        let copy = amplify(&layout, &params, &prepare(&layout, &params)?)?;
        ledger.charge_training(config.samples_per_round);
        let mut source = CopySource::new(copy, config.samples_per_round);
        let learner = LearnerConfig {
            sample_budget: config.samples_per_round,
            seed: config.learner.seed.wrapping_add(r as u64),
            ..config.learner.clone()
        };
        let init = if config.warm_start { params.clone() } else { AnsatzParams::zeros(&layout) };
        let report = learn_state_from(&mut source, &layout, &init, &learner)?;

        layout = report.layout.clone();
        params = report.params.clone();
        let converged = report.converged;
        records.push(RoundRecord {
            round: r + 1,
            success: trajectory.final_success(),
            angle: trajectory.final_angle(),
            learn: report,
        });
        if !converged && config.abort_on_failure {
            aborted_at = Some(r + 1);
            break;
        }
    }

    Ok(ProtocolRun {
        trajectory,
        ledger,
        rounds: records,
        aborted_at,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QueryConstants {
    pub c1: f64,
    pub c_q: f64,
}

impl Default for QueryConstants {
    fn default() -> Self {
        Self { c1: 1.0, c_q: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueryBoundReport {
    pub n_items: f64,
    pub total_queries: u64,
    pub training_queries: u64,
    pub samples_per_round: u64,
    pub rounds: u64,
    /// `c₁ · M_s · r`
    pub training_floor: f64,
    pub training_ok: bool,
    pub total_ok: bool,
    /// `c_Q · √N`
    pub grover_threshold: f64,
    pub grover_ok: bool,
    /// `c_Q √N / (c₁ r)`, undefined without rounds.
    pub ms_floor: Option<f64>,
}

pub fn check_query_bound(ledger: &ResourceLedger, n_items: f64, k: QueryConstants) -> QueryBoundReport {
    let training_floor = k.c1 * ledger.samples_per_round as f64 * ledger.rounds as f64;
    let grover_threshold = k.c_q * n_items.sqrt();
    QueryBoundReport {
        n_items,
        total_queries: ledger.oracle_queries,
        training_queries: ledger.training_queries,
        samples_per_round: ledger.samples_per_round,
        rounds: ledger.rounds,
        training_floor,
        training_ok: ledger.training_queries as f64 >= training_floor,
        total_ok: ledger.oracle_queries as f64 >= training_floor,
        grover_threshold,
        grover_ok: ledger.oracle_queries as f64 >= grover_threshold,
        ms_floor: ms_floor(n_items, ledger.rounds, k),
    }
}

pub fn ms_floor(n_items: f64, rounds: u64, k: QueryConstants) -> Option<f64> {
    (rounds > 0).then(|| k.c_q * n_items.sqrt() / (k.c1 * rounds as f64))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GateConstants {
    pub c4: f64,
    pub c_ns: f64,
}

impl Default for GateConstants {
    fn default() -> Self {
        Self { c4: 1.0, c_ns: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GateBoundReport {
    pub n_items: f64,
    pub rounds: u64,
    /// `Σ_r G_r`
    pub gate_sum: u64,
    /// `D_ref ≤ c₄ · Σ_r G_r`
    pub depth_bound: f64,
    /// `C_NS · √N`
    pub threshold: f64,
    pub ok: bool,
    /// `C_NS √N / (c₄ r)`
    pub g_floor: Option<f64>,
}

/// Depth bound from the per-round gate counts actually used.
pub fn check_gate_bound(gates_per_round: &[u64], n_items: f64, k: GateConstants) -> GateBoundReport {
    let gate_sum: u64 = gates_per_round.iter().sum();
    let rounds = gates_per_round.len() as u64;
    let depth_bound = k.c4 * gate_sum as f64;
    let threshold = k.c_ns * n_items.sqrt();
    GateBoundReport {
        n_items,
        rounds,
        gate_sum,
        depth_bound,
        threshold,
        ok: depth_bound >= threshold,
        g_floor: g_floor(n_items, rounds, k),
    }
}

/// Every round uses the full `layout`.
pub fn check_gate_bound_for_layout(layout: &AnsatzLayout, n_items: f64, rounds: u64, k: GateConstants) -> GateBoundReport {
    let g = gate_complexity(layout);
    check_gate_bound(&vec![g; rounds as usize], n_items, k)
}

pub fn g_floor(n_items: f64, rounds: u64, k: GateConstants) -> Option<f64> {
    (rounds > 0).then(|| k.c_ns * n_items.sqrt() / (k.c4 * rounds as f64))
}

/// Constants and accuracy inputs for [`triangle_report`]. All default to 1
/// (shape-only) with `ε = 1/4`, `δ = 1/10`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangleConstants {
    pub query: QueryConstants,
    pub gate: GateConstants,
    pub c_g: f64,
    pub c_m: f64,
    pub c2: f64,
    pub epsilon: f64,
    pub delta: f64,
    pub threshold: f64,
}

impl Default for TriangleConstants {
    fn default() -> Self {
        Self {
            query: QueryConstants::default(),
            gate: GateConstants::default(),
            c_g: 1.0,
            c_m: 1.0,
            c2: 1.0,
            epsilon: 0.25,
            delta: 0.1,
            threshold: DEFAULT_THRESHOLD,
        }
    }
}

/// Outcome of an ideal-learner run attached to a triangle row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulatedRow {
    pub samples_per_round: u64,
    pub total_queries: u64,
    pub gate_sum: u64,
    pub query_ok: bool,
    /// `Q_tot − c_Q √N`
    pub query_margin: f64,
    pub gate_ok: bool,
    pub final_success: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleRow {
    pub n: usize,
    pub n_items: f64,
    pub rounds: usize,
    /// `c_Q √N`
    pub query_floor: f64,
    /// `c_G √N / ln N`
    pub gate_floor: f64,
    /// `c_M √N / ln N`
    pub sample_floor: f64,
    /// `√N / ln N`
    pub reference: f64,
    pub ms_floor_from_queries: Option<f64>,
    pub g_floor_from_depth: Option<f64>,
    /// `sample_lower_bound` with `G = √N / ln N`
    pub unlocked_sample_bound: f64,
    pub simulated: Option<SimulatedRow>,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleReport {
    pub constants: TriangleConstants,
    pub rows: Vec<TriangleRow>,
}

/// One row per `n`. Rows with `n ≤ simulate_up_to` also run the ideal
/// amplify–learn loop with `M_s = ⌈√N / r⌉`.
pub fn triangle_report(ns: impl IntoIterator<Item = usize>, k: TriangleConstants, simulate_up_to: Option<usize>) -> Result<TriangleReport> {
    let mut rows = Vec::new();
    for n in ns {
        let n_items = (1u64 << n) as f64;
        let rounds = rounds_to_constant(n, k.threshold)?;
        let ln_n = n_items.ln();
        // N = 1 has ln N = 0; N = 2 needs no rounds
        let degenerate = n < 2 || rounds == 0;
        let reference = if ln_n > 0.0 { n_items.sqrt() / ln_n } else { f64::NAN };
        let unlocked_sample_bound = if ln_n > 0.0 {
            sample_lower_bound(n, reference, k.epsilon, k.delta, k.c2).value
        } else {
            f64::NAN
        };
        let simulated = match simulate_up_to {
            Some(cap) if n <= cap && !degenerate => {
                let ms = (n_items.sqrt() / rounds as f64).ceil() as u64;
                let cfg = ProtocolConfig {
                    threshold: k.threshold,
                    ..ProtocolConfig::new(n, 0, ms, LearnerConfig::ideal(ms))
                };
                let run = run_amplify_learn(&cfg)?;
                let q = check_query_bound(&run.ledger, n_items, k.query);
                let g = check_gate_bound(&run.ledger.gates_per_round, n_items, k.gate);
                Some(SimulatedRow {
                    samples_per_round: ms,
                    total_queries: run.ledger.oracle_queries,
                    gate_sum: g.gate_sum,
                    query_ok: q.grover_ok,
                    query_margin: run.ledger.oracle_queries as f64 - q.grover_threshold,
                    gate_ok: g.ok,
                    final_success: run.trajectory.final_success(),
                })
            }
            _ => None,
        };
        rows.push(TriangleRow {
            n,
            n_items,
            rounds,
            query_floor: k.query.c_q * n_items.sqrt(),
            gate_floor: k.c_g * reference,
            sample_floor: k.c_m * reference,
            reference,
            ms_floor_from_queries: ms_floor(n_items, rounds as u64, k.query),
            g_floor_from_depth: g_floor(n_items, rounds as u64, k.gate),
            unlocked_sample_bound,
            simulated,
            degenerate,
        });
    }
    Ok(TriangleReport { constants: k, rows })
}
