//! State learning: estimate how well `A(θ)|0>` matches copies of an unknown
//! state and tune `θ` until it does, charging every copy consumed.

mod ansatz;

pub use ansatz::{
    apply_circuit, exact_preparation_params, gate_complexity, prepare, synthesized_reflection_apply, AnsatzLayout,
    AnsatzParams, Axis, Slot,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::PureState;

/// Single-consumer supply of identical copies of an unknown state with a
/// hard budget.
#[derive(Debug, Clone)]
pub struct CopySource {
    state: PureState,
    remaining: u64,
    consumed: u64,
}

impl CopySource {
    pub fn new(state: PureState, budget: u64) -> Self {
        Self { state, remaining: budget, consumed: 0 }
    }

    /// Charges `k` copies, failing without charging if fewer remain.
    pub fn take(&mut self, k: u64) -> Result<&PureState> {
        if k > self.remaining {
            return Err(Error::BudgetExhausted {
                requested: k,
                remaining: self.remaining,
            });
        }
        self.remaining -= k;
        self.consumed += k;
        Ok(&self.state)
    }

    pub fn remaining(&self) -> u64 {
        self.remaining
    }

    pub fn consumed(&self) -> u64 {
        self.consumed
    }

    pub fn n(&self) -> usize {
        self.state.n()
    }

    /// The classical description; only the ideal learner may look.
    fn descriptor(&self) -> &PureState {
        &self.state
    }

    /// Ground truth for reporting achieved fidelity. Not a measurement.
    fn truth(&self) -> &PureState {
        &self.state
    }
}

/// Shots per overlap estimate; `Exact` returns the true overlap for free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shots {
    Exact,
    Finite(u64),
}

impl Shots {
    fn cost(self) -> u64 {
        match self {
            Shots::Exact => 0,
            Shots::Finite(k) => k,
        }
    }
}

/// `|<0...0| A(θ)† |ψ>|²` without sampling.
pub fn exact_overlap(layout: &AnsatzLayout, params: &AnsatzParams, psi: &PureState) -> Result<f64> {
    Ok(apply_circuit(layout, params, psi, true)?.amp(0).norm_sqr())
}

/// Measures `A(θ)†` applied to fresh copies in the computational basis and
/// returns the fraction of all-zero outcomes.
pub fn estimate_overlap<R: Rng + ?Sized>(
    layout: &AnsatzLayout,
    params: &AnsatzParams,
    source: &mut CopySource,
    shots: Shots,
    rng: &mut R,
) -> Result<f64> {
    match shots {
        Shots::Exact => exact_overlap(layout, params, source.descriptor()),
        Shots::Finite(0) => Err(Error::OutOfRange("shots must be >= 1".into())),
        Shots::Finite(k) => {
            let psi = source.take(k)?.clone();
            let p = exact_overlap(layout, params, &psi)?.clamp(0.0, 1.0);
            let hits = Binomial::new(k, p)
                .map_err(|e| Error::OutOfRange(e.to_string()))?
                .sample(rng);
            Ok(hits as f64 / k as f64)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LearnerMode {
    /// Perfect learner: reads the state's description, still pays the budget.
    Ideal,
    /// SPSA on sampled overlap estimates.
    Variational,
}

/// SPSA gain schedule: `a_k = a / (k + 1 + A)^α`, `c_k = c / (k + 1)^γ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpsaSchedule {
    pub step: f64,
    pub perturbation: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub stability: f64,
}

impl Default for SpsaSchedule {
    fn default() -> Self {
        Self {
            step: 2.0,
            perturbation: 0.2,
            alpha: 0.602,
            gamma: 0.101,
            stability: 5.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LearnerConfig {
    pub mode: LearnerMode,
    pub sample_budget: u64,
    pub shots_per_estimate: Shots,
    pub target_fidelity: f64,
    pub max_iterations: usize,
    pub schedule: SpsaSchedule,
    /// Stop once the monitored estimate clears the target by this many
    /// binomial standard deviations.
    pub stop_margin_sigmas: f64,
    pub seed: u64,
}

impl Default for LearnerConfig {
    fn default() -> Self {
        Self {
            mode: LearnerMode::Variational,
            sample_budget: 100_000,
            shots_per_estimate: Shots::Finite(100),
            target_fidelity: 0.98,
            max_iterations: 2_000,
            schedule: SpsaSchedule::default(),
            stop_margin_sigmas: 2.0,
            seed: 0,
        }
    }
}

impl LearnerConfig {
    pub fn ideal(sample_budget: u64) -> Self {
        Self {
            mode: LearnerMode::Ideal,
            sample_budget,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.target_fidelity > 0.0 && self.target_fidelity <= 1.0) {
            return Err(Error::OutOfRange(format!(
                "target_fidelity {} not in (0, 1]",
                self.target_fidelity
            )));
        }
        if self.shots_per_estimate == Shots::Finite(0) {
            return Err(Error::OutOfRange("shots_per_estimate must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LearnReport {
    pub layout: AnsatzLayout,
    pub params: AnsatzParams,
    /// True `|<ψ|A(θ)0>|²` of the returned parameters.
    pub achieved_fidelity: f64,
    /// Best sampled estimate seen during the run.
    pub estimated_fidelity: f64,
    pub copies_consumed: u64,
    pub iterations: usize,
    pub converged: bool,
}

impl LearnReport {
    /// Trace distance implied by the achieved fidelity, `√(1 − F)`.
    pub fn trace_distance(&self) -> f64 {
        fidelity_to_trace_distance(self.achieved_fidelity)
    }
}

pub fn fidelity_to_trace_distance(f: f64) -> f64 {
    (1.0 - f).max(0.0).sqrt()
}

/// Learns from zero-initialized parameters.
pub fn learn_state(source: &mut CopySource, layout: &AnsatzLayout, config: &LearnerConfig) -> Result<LearnReport> {
    learn_state_from(source, layout, &AnsatzParams::zeros(layout), config)
}

/// Learns starting from `initial` (warm start). The budget is the smaller
/// of `config.sample_budget` and what `source` still holds.
pub fn learn_state_from(
    source: &mut CopySource,
    layout: &AnsatzLayout,
    initial: &AnsatzParams,
    config: &LearnerConfig,
) -> Result<LearnReport> {
    config.validate()?;
    if layout.n() != source.n() {
        return Err(Error::DimensionMismatch {
            expected: 1 << layout.n(),
            found: 1 << source.n(),
        });
    }
    let start = source.consumed();
    let report = match config.mode {
        LearnerMode::Ideal => {
            let charge = config.sample_budget.min(source.remaining());
            source.take(charge)?;
            let layout = AnsatzLayout::exact_preparation(source.n());
            let params = exact_preparation_params(source.descriptor());
            let f = prepare(&layout, &params)?.fidelity(source.truth())?.min(1.0);
            LearnReport {
                layout,
                params,
                achieved_fidelity: f,
                estimated_fidelity: f,
                copies_consumed: 0,
                iterations: 0,
                converged: f >= config.target_fidelity - 1e-12,
            }
        }
        LearnerMode::Variational => spsa(source, layout, initial, config)?,
    };
    Ok(LearnReport {
        copies_consumed: source.consumed() - start,
        ..report
    })
}

fn spsa(source: &mut CopySource, layout: &AnsatzLayout, initial: &AnsatzParams, config: &LearnerConfig) -> Result<LearnReport> {
    if initial.len() != layout.param_count() {
        return Err(Error::ParamCount {
            expected: layout.param_count(),
            found: initial.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let shots = config.shots_per_estimate;
    let budget_end = source.consumed() + config.sample_budget.min(source.remaining());
    let left = |s: &CopySource| budget_end - s.consumed();
    let margin = match shots {
        Shots::Exact => 0.0,
        Shots::Finite(k) => {
            let t = config.target_fidelity;
            config.stop_margin_sigmas * (t * (1.0 - t) / k as f64).sqrt()
        }
    };
    let sched = config.schedule;

    let mut theta = initial.0.clone();
    let mut best = (theta.clone(), f64::NEG_INFINITY);
    let mut iterations = 0;
    for k in 0..=config.max_iterations {
        if left(source) < shots.cost() {
            break;
        }
        let est = estimate_overlap(layout, &AnsatzParams(theta.clone()), source, shots, &mut rng)?;
        if est > best.1 {
            best = (theta.clone(), est);
        }
        iterations = k;
        if est >= (config.target_fidelity + margin).min(1.0) || k == config.max_iterations {
            break;
        }
        if left(source) < 2 * shots.cost() {
            break;
        }
        let ck = sched.perturbation / ((k + 1) as f64).powf(sched.gamma);
        let ak = sched.step / ((k + 1) as f64 + sched.stability).powf(sched.alpha);
        let delta: Vec<f64> = (0..theta.len())
            .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
            .collect();
        let shifted = |sign: f64| {
            AnsatzParams(theta.iter().zip(&delta).map(|(t, d)| t + sign * ck * d).collect())
        };
        let up = estimate_overlap(layout, &shifted(1.0), source, shots, &mut rng)?;
        let down = estimate_overlap(layout, &shifted(-1.0), source, shots, &mut rng)?;
        let g = (up - down) / (2.0 * ck);
        for (t, d) in theta.iter_mut().zip(&delta) {
            // ascent on the overlap; Δ_i = ±1 so 1/Δ_i = Δ_i
            *t += ak * g * d;
        }
    }

    let params = AnsatzParams(best.0);
    let achieved = prepare(layout, &params)?.fidelity(source.truth())?.min(1.0);
    Ok(LearnReport {
        layout: layout.clone(),
        params,
        achieved_fidelity: achieved,
        estimated_fidelity: best.1.max(0.0),
        copies_consumed: 0,
        iterations,
        converged: achieved >= config.target_fidelity,
    })
}
