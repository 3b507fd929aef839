//! Experiment configuration: one JSON object per run.
//!
//! ```json
//! { "experiment": "grover", "seed": 7, "n": [2, 3, 4], "rounds": 6 }
//! ```
//!
//! `experiment` and `seed` are required (the experiment may instead come from
//! the subcommand), `out` is optional, and every other key belongs to the
//! experiment's parameter block. Unknown keys are errors.

use std::fmt;
use std::path::PathBuf;

use amplearn_core::complexity::{delta_in_range, epsilon_in_range, Strategy};
use amplearn_core::learner::LearnerMode;
use amplearn_core::qcore::MAX_QUBITS;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const EXPERIMENTS: [&str; 8] = [
    "grover",
    "cubic",
    "amplify-learn",
    "signal",
    "bounds",
    "pack",
    "discriminate",
    "triangle",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub level: Level,
    pub field: Option<String>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.level {
            Level::Error => "error",
            Level::Warning => "warning",
        };
        match &self.field {
            Some(field) => write!(f, "{tag}: {field}: {}", self.message),
            None => write!(f, "{tag}: {}", self.message),
        }
    }
}

#[derive(Debug, Default)]
pub struct Diagnostics(pub Vec<Diagnostic>);

impl Diagnostics {
    fn push(&mut self, level: Level, field: &str, message: impl Into<String>) {
        self.0.push(Diagnostic {
            level,
            field: (!field.is_empty()).then(|| field.to_string()),
            message: message.into(),
        });
    }

    pub fn error(&mut self, field: &str, message: impl Into<String>) {
        self.push(Level::Error, field, message);
    }

    pub fn warn(&mut self, field: &str, message: impl Into<String>) {
        self.push(Level::Warning, field, message);
    }

    pub fn has_errors(&self) -> bool {
        self.0.iter().any(|d| d.level == Level::Error)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GroverParams {
    pub n: Vec<usize>,
    pub tau: Vec<usize>,
    /// every `τ < 2^n` instead of `tau`
    pub all_tau: bool,
    /// default `2⌈(π/4)√N⌉`
    pub rounds: Option<usize>,
}

impl Default for GroverParams {
    fn default() -> Self {
        Self {
            n: vec![2, 3, 4, 5, 6],
            tau: vec![0],
            all_tau: false,
            rounds: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CubicParams {
    pub n: Vec<usize>,
    pub tau: usize,
    pub threshold: f64,
    pub polish: bool,
}

impl Default for CubicParams {
    fn default() -> Self {
        Self {
            n: (2..=10).collect(),
            tau: 0,
            threshold: 0.5,
            polish: false,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AmplifyLearnParams {
    pub n: usize,
    pub tau: usize,
    pub samples_per_round: u64,
    pub mode: LearnerMode,
    pub target_fidelity: f64,
    /// shots per overlap estimate; `--exact` switches to exact overlaps
    pub shots: u64,
    pub max_iterations: usize,
    pub threshold: f64,
    pub queries_per_copy: u64,
    pub max_rounds: usize,
    pub layers: Option<usize>,
    pub warm_start: bool,
    pub abort_on_failure: bool,
    pub trials: u64,
}

impl Default for AmplifyLearnParams {
    fn default() -> Self {
        Self {
            n: 3,
            tau: 0,
            samples_per_round: 20_000,
            mode: LearnerMode::Variational,
            target_fidelity: 0.98,
            shots: 100,
            max_iterations: 2_000,
            threshold: 0.5,
            queries_per_copy: 1,
            max_rounds: 64,
            layers: None,
            warm_start: true,
            abort_on_failure: false,
            trials: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProgramKind {
    Magic,
    Cptp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BobKind {
    OracleChoice,
    Basis,
    Identical,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SignalParams {
    pub n: usize,
    pub program: ProgramKind,
    pub bob: BobKind,
    pub tau: usize,
    /// angles of Bob's `b = 1` basis (`n = 1`, `bob = basis`); empty means `±`
    pub phi: Vec<f64>,
    /// random circuits drawn for `program = cptp`
    pub trials: u64,
    pub ancilla: usize,
    pub depth: usize,
}

impl Default for SignalParams {
    fn default() -> Self {
        Self {
            n: 1,
            program: ProgramKind::Magic,
            bob: BobKind::Basis,
            tau: 0,
            phi: Vec::new(),
            trials: 1,
            ancilla: 0,
            depth: 3,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BoundsParams {
    pub n: Vec<usize>,
    pub gates: Vec<f64>,
    pub epsilon: f64,
    pub delta: f64,
    pub c1: f64,
    pub c2: f64,
    pub entropy_constant: f64,
    pub params_per_gate: f64,
}

impl Default for BoundsParams {
    fn default() -> Self {
        Self {
            n: (2..=10).collect(),
            gates: vec![8.0],
            epsilon: 0.25,
            delta: 0.1,
            c1: 1.0,
            c2: 1.0,
            entropy_constant: 1.0,
            params_per_gate: 1.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PackParams {
    pub dim: Vec<usize>,
    pub separation: f64,
    pub pool: usize,
    pub repeats: u64,
}

impl Default for PackParams {
    fn default() -> Self {
        Self {
            dim: vec![2, 4, 8],
            separation: 0.5,
            pool: 10_000,
            repeats: 1,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DiscriminateParams {
    pub dim: usize,
    pub separation: f64,
    pub pool: usize,
    pub k: Vec<usize>,
    pub copies: Vec<u32>,
    pub strategy: Strategy,
    pub trials: u64,
    /// two hypotheses `|0>` and `α|0> + √(1−α²)|1>` instead of a packing
    pub overlap: Option<f64>,
}

impl Default for DiscriminateParams {
    fn default() -> Self {
        Self {
            dim: 4,
            separation: 0.5,
            pool: 2_000,
            k: vec![2, 4, 8],
            copies: (1..=8).collect(),
            strategy: Strategy::ExactPosterior,
            trials: 10_000,
            overlap: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TriangleParams {
    pub n_min: usize,
    pub n_max: usize,
    pub simulate_up_to: Option<usize>,
    pub c_q: f64,
    pub c_g: f64,
    pub c_m: f64,
    pub c1: f64,
    pub c4: f64,
    pub c_ns: f64,
    pub c2: f64,
    pub epsilon: f64,
    pub delta: f64,
    pub threshold: f64,
}

impl Default for TriangleParams {
    fn default() -> Self {
        Self {
            n_min: 4,
            n_max: 20,
            simulate_up_to: Some(8),
            c_q: 1.0,
            c_g: 1.0,
            c_m: 1.0,
            c1: 1.0,
            c4: 1.0,
            c_ns: 1.0,
            c2: 1.0,
            epsilon: 0.25,
            delta: 0.1,
            threshold: 0.5,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Experiment {
    Grover(GroverParams),
    Cubic(CubicParams),
    AmplifyLearn(AmplifyLearnParams),
    Signal(SignalParams),
    Bounds(BoundsParams),
    Pack(PackParams),
    Discriminate(DiscriminateParams),
    Triangle(TriangleParams),
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Grover(_) => "grover",
            Self::Cubic(_) => "cubic",
            Self::AmplifyLearn(_) => "amplify-learn",
            Self::Signal(_) => "signal",
            Self::Bounds(_) => "bounds",
            Self::Pack(_) => "pack",
            Self::Discriminate(_) => "discriminate",
            Self::Triangle(_) => "triangle",
        }
    }

    fn params_json(&self) -> Value {
        let v = match self {
            Self::Grover(p) => serde_json::to_value(p),
            Self::Cubic(p) => serde_json::to_value(p),
            Self::AmplifyLearn(p) => serde_json::to_value(p),
            Self::Signal(p) => serde_json::to_value(p),
            Self::Bounds(p) => serde_json::to_value(p),
            Self::Pack(p) => serde_json::to_value(p),
            Self::Discriminate(p) => serde_json::to_value(p),
            Self::Triangle(p) => serde_json::to_value(p),
        };
        v.expect("parameter blocks serialize")
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub exact: bool,
}

impl ExperimentConfig {
    /// Full config with defaults filled in; `out` is left out so the echo
    /// does not depend on where results go.
    pub fn echo(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("experiment".into(), Value::from(self.experiment.name()));
        obj.insert("seed".into(), Value::from(self.seed));
        obj.insert("exact".into(), Value::from(self.exact));
        if let Value::Object(params) = self.experiment.params_json() {
            obj.extend(params);
        }
        Value::Object(obj)
    }
}

/// `key=value` with `value` read as JSON when it parses, else as a string.
pub fn parse_assignment(s: &str) -> Result<(String, Value), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    let k = k.trim();
    if k.is_empty() {
        return Err(format!("empty key in `{s}`"));
    }
    let v = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.to_string()));
    Ok((k.to_string(), v))
}

fn parse_params<T: for<'de> Deserialize<'de>>(rest: Map<String, Value>, diags: &mut Diagnostics) -> Option<T> {
    match serde_json::from_value(Value::Object(rest)) {
        Ok(p) => Some(p),
        Err(e) => {
            diags.error("", e.to_string());
            None
        }
    }
}

/// Schema and range check without running anything.
pub fn load(value: Value, subcommand: Option<&str>, exact: bool) -> (Option<ExperimentConfig>, Diagnostics) {
    let mut diags = Diagnostics::default();
    let Value::Object(mut obj) = value else {
        diags.error("", "config must be a JSON object");
        return (None, diags);
    };

    let name = match (obj.remove("experiment"), subcommand) {
        (Some(Value::String(s)), Some(sub)) if s != sub => {
            diags.error("experiment", format!("config is for `{s}` but subcommand is `{sub}`"));
            return (None, diags);
        }
        (Some(Value::String(s)), _) => s,
        (None, Some(sub)) => sub.to_string(),
        (Some(_), _) => {
            diags.error("experiment", "must be a string");
            return (None, diags);
        }
        (None, None) => {
            diags.error("experiment", "missing field `experiment`");
            return (None, diags);
        }
    };

    let seed = match obj.remove("seed") {
        Some(v) => match v.as_u64() {
            Some(s) => Some(s),
            None => {
                diags.error("seed", "must be an unsigned 64-bit integer");
                None
            }
        },
        None => {
            diags.error("seed", "missing field `seed`");
            None
        }
    };

    let out = match obj.remove("out") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(PathBuf::from(s)),
        Some(_) => {
            diags.error("out", "must be a path string");
            None
        }
    };

    let experiment = match name.as_str() {
        "grover" => parse_params(obj, &mut diags).map(Experiment::Grover),
        "cubic" => parse_params(obj, &mut diags).map(Experiment::Cubic),
        "amplify-learn" => parse_params(obj, &mut diags).map(Experiment::AmplifyLearn),
        "signal" => parse_params(obj, &mut diags).map(Experiment::Signal),
        "bounds" => parse_params(obj, &mut diags).map(Experiment::Bounds),
        "pack" => parse_params(obj, &mut diags).map(Experiment::Pack),
        "discriminate" => parse_params(obj, &mut diags).map(Experiment::Discriminate),
        "triangle" => parse_params(obj, &mut diags).map(Experiment::Triangle),
        other => {
            diags.error(
                "experiment",
                format!("unknown experiment `{other}` (expected one of {})", EXPERIMENTS.join(", ")),
            );
            None
        }
    };

    if let Some(e) = &experiment {
        check_ranges(e, &mut diags);
    }
    match (experiment, seed) {
        (Some(experiment), Some(seed)) if !diags.has_errors() => (
            Some(ExperimentConfig {
                experiment,
                seed,
                out,
                exact,
            }),
            diags,
        ),
        _ => (None, diags),
    }
}

fn check_n(field: &str, n: usize, max: usize, diags: &mut Diagnostics) {
    if n == 0 || n > max {
        diags.error(field, format!("{n} outside 1..={max}"));
    }
}

fn check_tau(field: &str, tau: usize, n: usize, diags: &mut Diagnostics) {
    if n < usize::BITS as usize && tau >= 1usize << n {
        diags.error(field, format!("tau = {tau} needs tau < 2^{n}"));
    }
}

fn check_threshold(c: f64, diags: &mut Diagnostics) {
    if !(c > 0.0 && c <= std::f64::consts::FRAC_PI_6) {
        diags.error("threshold", format!("{c} outside (0, π/6]"));
    }
}

fn check_accuracy(epsilon: f64, delta: f64, diags: &mut Diagnostics) {
    if epsilon <= 0.0 {
        diags.error("epsilon", format!("{epsilon} must be positive"));
    } else if !epsilon_in_range(epsilon) {
        diags.warn("epsilon", format!("{epsilon} outside the stated range 0 < epsilon <= 1/4"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        diags.error("delta", format!("{delta} outside (0, 1)"));
    } else if !delta_in_range(delta) {
        diags.warn("delta", format!("{delta} outside the stated range 0 < delta <= 1/10"));
    }
}

fn check_positive(field: &str, v: f64, diags: &mut Diagnostics) {
    if !(v > 0.0) {
        diags.error(field, format!("{v} must be positive"));
    }
}

fn check_ranges(e: &Experiment, d: &mut Diagnostics) {
    match e {
        Experiment::Grover(p) => {
            if p.n.is_empty() {
                d.error("n", "at least one register size");
            }
            for &n in &p.n {
                check_n("n", n, MAX_QUBITS, d);
                if !p.all_tau {
                    for &t in &p.tau {
                        check_tau("tau", t, n, d);
                    }
                }
            }
        }
        Experiment::Cubic(p) => {
            for &n in &p.n {
                check_n("n", n, MAX_QUBITS, d);
                check_tau("tau", p.tau, n, d);
            }
            check_threshold(p.threshold, d);
        }
        Experiment::AmplifyLearn(p) => {
            check_n("n", p.n, MAX_QUBITS, d);
            check_tau("tau", p.tau, p.n, d);
            check_threshold(p.threshold, d);
            if p.queries_per_copy == 0 {
                d.error("queries_per_copy", "must be >= 1");
            }
            if p.shots == 0 {
                d.error("shots", "must be >= 1");
            }
            if !(p.target_fidelity > 0.0 && p.target_fidelity <= 1.0) {
                d.error("target_fidelity", format!("{} outside (0, 1]", p.target_fidelity));
            }
            if p.trials == 0 {
                d.error("trials", "must be >= 1");
            }
        }
        Experiment::Signal(p) => {
            check_n("n", p.n, amplearn_core::nosignal::MAX_SIDE_QUBITS, d);
            check_tau("tau", p.tau, p.n, d);
            if !p.phi.is_empty() && (p.n != 1 || p.bob != BobKind::Basis) {
                d.error("phi", "rotated bases need n = 1 and bob = basis");
            }
            if p.program == ProgramKind::Magic && p.bob == BobKind::OracleChoice {
                d.warn("program", "magic reflection needs an explicit ensemble; oracle choice leaves none");
            }
            if p.n + p.ancilla > 8 {
                d.error("ancilla", "local circuits limited to 8 qubits");
            }
            if p.trials == 0 {
                d.error("trials", "must be >= 1");
            }
        }
        Experiment::Bounds(p) => {
            for &n in &p.n {
                check_n("n", n, 62, d);
            }
            for &g in &p.gates {
                check_positive("gates", g, d);
            }
            check_accuracy(p.epsilon, p.delta, d);
            check_positive("params_per_gate", p.params_per_gate, d);
        }
        Experiment::Pack(p) => {
            for &dim in &p.dim {
                if dim < 2 || !dim.is_power_of_two() || dim > 1 << 10 {
                    d.error("dim", format!("{dim} must be a power of two in 2..=1024"));
                }
            }
            if !(p.separation > 0.0 && p.separation <= 1.0) {
                d.error("separation", format!("{} outside (0, 1]", p.separation));
            }
        }
        Experiment::Discriminate(p) => {
            if p.dim < 2 || !p.dim.is_power_of_two() || p.dim > 1 << 10 {
                d.error("dim", format!("{} must be a power of two in 2..=1024", p.dim));
            }
            if !(p.separation > 0.0 && p.separation <= 1.0) {
                d.error("separation", format!("{} outside (0, 1]", p.separation));
            }
            if p.k.iter().any(|&k| k < 2) {
                d.error("k", "every K must be >= 2");
            }
            if let Some(a) = p.overlap {
                if !(0.0..=1.0).contains(&a) {
                    d.error("overlap", format!("{a} outside [0, 1]"));
                }
                if p.k.iter().any(|&k| k != 2) {
                    d.error("k", "an explicit overlap defines exactly K = 2");
                }
            }
            if p.trials == 0 {
                d.error("trials", "must be >= 1");
            }
        }
        Experiment::Triangle(p) => {
            if p.n_min == 0 || p.n_min > p.n_max || p.n_max > 62 {
                d.error("n_min", format!("need 1 <= n_min <= n_max <= 62, got {}..{}", p.n_min, p.n_max));
            }
            if let Some(s) = p.simulate_up_to {
                check_n("simulate_up_to", s, MAX_QUBITS, d);
            }
            check_accuracy(p.epsilon, p.delta, d);
            check_threshold(p.threshold, d);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn minimal_config_loads() {
        let (cfg, diags) = load(json!({"experiment": "grover", "seed": 3}), None, false);
        assert!(diags.is_empty(), "{diags:?}");
        let cfg = cfg.unwrap();
        assert_eq!(cfg.seed, 3);
        assert_eq!(cfg.echo()["n"], json!([2, 3, 4, 5, 6]));
    }

    #[test]
    fn unknown_field_rejected() {
        let (cfg, diags) = load(json!({"experiment": "grover", "seed": 3, "bogus": 1}), None, false);
        assert!(cfg.is_none());
        assert!(diags.0[0].message.contains("bogus"));
    }

    #[test]
    fn missing_seed_names_field() {
        let (cfg, diags) = load(json!({"experiment": "bounds"}), None, false);
        assert!(cfg.is_none());
        assert_eq!(diags.0[0].field.as_deref(), Some("seed"));
    }

    #[test]
    fn loose_epsilon_is_a_warning() {
        let (cfg, diags) = load(json!({"experiment": "bounds", "seed": 1, "epsilon": 0.5}), None, false);
        assert!(cfg.is_some());
        assert_eq!(diags.0.len(), 1);
        assert_eq!(diags.0[0].level, Level::Warning);
    }

    #[test]
    fn subcommand_mismatch() {
        let (cfg, _) = load(json!({"experiment": "pack", "seed": 1}), Some("grover"), false);
        assert!(cfg.is_none());
    }

    #[test]
    fn assignments() {
        assert_eq!(parse_assignment("n=[2,3]").unwrap(), ("n".into(), json!([2, 3])));
        assert_eq!(parse_assignment("mode=ideal").unwrap(), ("mode".into(), json!("ideal")));
        assert!(parse_assignment("novalue").is_err());
    }

    #[test]
    fn bad_tau_is_an_error() {
        let (cfg, diags) = load(json!({"experiment": "cubic", "seed": 1, "n": [2], "tau": 4}), None, false);
        assert!(cfg.is_none());
        assert!(diags.has_errors());
    }
}
