//! Standard Grover iteration and the previous-output-reflection ("cubic")
//! engine, where the second reflection axis is the current state itself.

use std::f64::consts::FRAC_PI_6;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcore::{householder_apply, PureState, C64, MAX_QUBITS};

/// Default stopping angle for the log-round search, just below `π/6`.
pub const DEFAULT_THRESHOLD: f64 = 0.5;

/// Relative slack when comparing a reached angle against the threshold.
const ANGLE_SLACK: f64 = 1e-12;

/// Phase-flip oracle `R_τ = 1 − 2|τ><τ|`; `marked = None` is the null oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Oracle {
    n: usize,
    marked: Option<usize>,
}

impl Oracle {
    pub fn marking(n: usize, tau: usize) -> Result<Self> {
        if n > MAX_QUBITS || tau >= (1usize << n) {
            return Err(Error::MarkedOutOfRange { tau, n });
        }
        Ok(Self { n, marked: Some(tau) })
    }

    pub fn null(n: usize) -> Self {
        Self { n, marked: None }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn marked(&self) -> Option<usize> {
        self.marked
    }

    /// Boolean function `f(x)`.
    pub fn f(&self, x: usize) -> bool {
        self.marked == Some(x)
    }

    fn tau(&self) -> Result<usize> {
        self.marked.ok_or(Error::NullOracle)
    }
}

/// Round-by-round record of a search run.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchTrajectory {
    pub tau: usize,
    pub states: Vec<PureState>,
    /// `θ_r = arcsin |<τ|ψ_r>|`
    pub angles: Vec<f64>,
    pub success: Vec<f64>,
    pub queries: u64,
}

impl SearchTrajectory {
    pub(crate) fn start(tau: usize, initial: PureState) -> Self {
        let mut t = Self {
            tau,
            states: Vec::new(),
            angles: Vec::new(),
            success: Vec::new(),
            queries: 0,
        };
        t.push(initial);
        t
    }

    pub(crate) fn push(&mut self, state: PureState) {
        let amp = state.amp(self.tau).norm();
        self.angles.push(amp.min(1.0).asin());
        self.success.push(amp * amp);
        self.states.push(state);
    }

    pub fn rounds(&self) -> usize {
        self.states.len() - 1
    }

    pub fn final_success(&self) -> f64 {
        *self.success.last().expect("trajectory never empty")
    }

    pub fn final_angle(&self) -> f64 {
        *self.angles.last().expect("trajectory never empty")
    }
}

fn check_n(oracle: &Oracle, state: &PureState) -> Result<()> {
    if oracle.n != state.n() {
        return Err(Error::DimensionMismatch {
            expected: 1 << oracle.n,
            found: state.dim(),
        });
    }
    Ok(())
}

/// Negates the marked amplitude. Does not count as a query by itself.
pub fn apply_oracle(oracle: &Oracle, state: &PureState) -> Result<PureState> {
    check_n(oracle, state)?;
    let mut amps: Vec<C64> = state.amps().to_vec();
    if let Some(tau) = oracle.marked {
        amps[tau] = -amps[tau];
    }
    Ok(PureState::from_parts_unchecked(state.n(), amps))
}

/// `−R_s R_τ |state>` with `R_s` the reflection about `initial`.
pub fn grover_step(state: &PureState, oracle: &Oracle, initial: &PureState) -> Result<PureState> {
    state.check_same_dim(initial)?;
    let flipped = apply_oracle(oracle, state)?;
    Ok(householder_apply(initial, &flipped)?.negated())
}

/// `θ₀ = arcsin(2^{-n/2})`, the angle of the uniform superposition.
pub fn initial_angle(n: usize) -> f64 {
    (1.0 / ((1u64 << n) as f64).sqrt()).asin()
}

/// Closed-form Grover success `sin²((2r+1)θ₀)`.
pub fn grover_success_closed_form(n: usize, rounds: usize) -> f64 {
    ((2 * rounds + 1) as f64 * initial_angle(n)).sin().powi(2)
}

/// Grover iterations from `|s>`, one oracle query per round.
pub fn run_grover(n: usize, tau: usize, rounds: usize) -> Result<SearchTrajectory> {
    let oracle = Oracle::marking(n, tau)?;
    let s = PureState::uniform(n);
    let mut traj = SearchTrajectory::start(tau, s.clone());
    for _ in 0..rounds {
        let next = grover_step(traj.states.last().unwrap(), &oracle, &s)?;
        traj.queries += 1;
        traj.push(next);
    }
    Ok(traj)
}

/// `−R_ψ R_τ |ψ>`: reflect about the previous output. Maps the target
/// overlap `sin θ` to `sin 3θ`.
pub fn cubic_step(state: &PureState, oracle: &Oracle) -> Result<PureState> {
    oracle.tau()?;
    let flipped = apply_oracle(oracle, state)?;
    Ok(householder_apply(state, &flipped)?.negated())
}

/// Options for [`run_ideal_log_search_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogSearchOptions {
    pub threshold: f64,
    /// Append one standard Grover step about `|s>` after the threshold.
    pub polish: bool,
    pub max_rounds: usize,
}

impl Default for LogSearchOptions {
    fn default() -> Self {
        Self {
            threshold: DEFAULT_THRESHOLD,
            polish: false,
            max_rounds: 64,
        }
    }
}

fn check_threshold(c: f64) -> Result<()> {
    if !(c > 0.0 && c <= FRAC_PI_6 + ANGLE_SLACK) {
        return Err(Error::OutOfRange(format!("threshold {c} not in (0, π/6]")));
    }
    Ok(())
}

pub(crate) fn reached(theta: f64, c: f64) -> bool {
    theta >= c * (1.0 - ANGLE_SLACK)
}

/// Iterates [`cubic_step`] from `|s>` until `θ_r ≥ threshold_c`.
pub fn run_ideal_log_search(n: usize, tau: usize, threshold_c: f64) -> Result<SearchTrajectory> {
    run_ideal_log_search_with(
        n,
        tau,
        LogSearchOptions {
            threshold: threshold_c,
            ..Default::default()
        },
    )
}

pub fn run_ideal_log_search_with(n: usize, tau: usize, opts: LogSearchOptions) -> Result<SearchTrajectory> {
    check_threshold(opts.threshold)?;
    let oracle = Oracle::marking(n, tau)?;
    let s = PureState::uniform(n);
    let mut traj = SearchTrajectory::start(tau, s.clone());
    while !reached(traj.final_angle(), opts.threshold) && traj.rounds() < opts.max_rounds {
        let next = cubic_step(traj.states.last().unwrap(), &oracle)?;
        traj.queries += 1;
        traj.push(next);
    }
    if opts.polish {
        let next = grover_step(traj.states.last().unwrap(), &oracle, &s)?;
        traj.queries += 1;
        traj.push(next);
    }
    Ok(traj)
}

/// `max(0, ⌈log₃(c/θ₀)⌉)`: cubic rounds needed for the angle to reach `c`.
pub fn rounds_to_constant(n: usize, c: f64) -> Result<usize> {
    check_threshold(c)?;
    let x = (c / initial_angle(n)).ln() / 3f64.ln();
    // exact powers of three land on the boundary; snap before ceil
    let r = if (x - x.round()).abs() < 1e-9 { x.round() } else { x.ceil() };
    Ok(r.max(0.0) as usize)
}
