//! Counting bounds for circuit-generated state classes and a discrimination
//! experiment that checks the Fano/Holevo sandwich empirically.
//!
//! Information quantities are in bits. Bound formulas use natural logs with
//! the base absorbed into the constants, all of which default to 1, so every
//! bound here is shape-only.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{c, qubits_for_len, von_neumann_entropy, DensityMatrix, Ensemble, PureState, C64};

/// Accuracy range in which the learning bounds are stated.
pub fn epsilon_in_range(epsilon: f64) -> bool {
    epsilon > 0.0 && epsilon <= 0.25
}

pub fn delta_in_range(delta: f64) -> bool {
    delta > 0.0 && delta <= 0.1
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateClassSpec {
    pub n: usize,
    /// two-qubit gate count `G`
    pub gates: f64,
    pub params_per_gate: u32,
    pub kappa_arch: f64,
    pub lipschitz: f64,
    /// `C` in `C·G·ln(G/ε)`
    pub entropy_constant: f64,
}

impl StateClassSpec {
    pub fn new(n: usize, gates: f64) -> Self {
        Self {
            n,
            gates,
            params_per_gate: 1,
            kappa_arch: 1.0,
            lipschitz: 1.0,
            entropy_constant: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = self.n > 0
            && self.gates > 0.0
            && self.params_per_gate > 0
            && self.kappa_arch > 0.0
            && self.lipschitz > 0.0
            && self.entropy_constant >= 0.0;
        if positive {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("state-class constants must be positive: {self:?}")))
        }
    }
}

/// A formula value plus whether its inputs lie in the stated range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bound {
    pub value: f64,
    pub in_range: bool,
}

/// Upper-bound certificate on `ln N(S_{n,G}, ε)`, in nats:
/// `C·G·ln(G/ε) + ln(1/ε)`.
pub fn covering_log_bound(spec: &StateClassSpec, epsilon: f64) -> Result<Bound> {
    spec.validate()?;
    if epsilon <= 0.0 {
        return Err(Error::OutOfRange(format!("epsilon = {epsilon}")));
    }
    let g = spec.gates;
    Ok(Bound {
        value: spec.entropy_constant * g * (g / epsilon).ln() + (1.0 / epsilon).ln(),
        in_range: epsilon_in_range(epsilon),
    })
}

/// Pure states with pairwise trace distance at least `separation`.
#[derive(Debug, Clone, PartialEq)]
pub struct PackingSet {
    states: Vec<PureState>,
    separation: f64,
    pub pool_size: usize,
    pub seed: Option<u64>,
}

impl PackingSet {
    pub fn states(&self) -> &[PureState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn separation(&self) -> f64 {
        self.separation
    }

    pub fn dim(&self) -> usize {
        self.states.first().map_or(0, |s| s.dim())
    }

    /// Smallest pairwise trace distance, recomputed from scratch.
    pub fn min_distance(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (i, a) in self.states.iter().enumerate() {
            for b in &self.states[..i] {
                best = best.min(trace_distance_pure(a, b));
            }
        }
        best
    }

    pub fn verify(&self) -> bool {
        self.states.len() < 2 || self.min_distance() >= self.separation - 1e-10
    }

    /// First `k` members.
    pub fn truncate(&self, k: usize) -> Self {
        Self {
            states: self.states[..k.min(self.states.len())].to_vec(),
            ..self.clone()
        }
    }

    pub fn uniform_ensemble(&self) -> Result<Ensemble> {
        Ensemble::uniform(self.states.clone())
    }
}

fn trace_distance_pure(a: &PureState, b: &PureState) -> f64 {
    crate::qcore::pure_distance_unchecked(a.amps(), b.amps())
}

fn check_separation(separation: f64) -> Result<()> {
    if separation > 0.0 && separation <= 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("separation {separation} not in (0, 1]")))
    }
}

/// Keeps each pool member that is at least `separation` away from all kept ones.
pub fn greedy_packing_from_pool(pool: impl IntoIterator<Item = PureState>, separation: f64) -> Result<PackingSet> {
    check_separation(separation)?;
    let mut kept: Vec<PureState> = Vec::new();
    let mut pool_size = 0;
    for cand in pool {
        if let Some(first) = kept.first() {
            first.check_same_dim(&cand)?;
        }
        pool_size += 1;
        if kept.iter().all(|k| trace_distance_pure(k, &cand) >= separation) {
            kept.push(cand);
        }
    }
    Ok(PackingSet {
        states: kept,
        separation,
        pool_size,
        seed: None,
    })
}

/// Greedy packing over `pool_size` Haar-random states of dimension `dim`.
/// The size is a certified lower bound on the packing number.
pub fn greedy_packing(dim: usize, separation: f64, pool_size: usize, seed: u64) -> Result<PackingSet> {
    let n = qubits_for_len(dim)?;
    if n == 0 {
        return Err(Error::OutOfRange("packing needs dim >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = (0..pool_size).map(|_| PureState::haar_random(n, &mut rng));
    let mut set = greedy_packing_from_pool(pool, separation)?;
    set.seed = Some(seed);
    Ok(set)
}

/// `h₂(p)` in bits.
pub fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }
}

fn fano_value(k: usize, delta: f64) -> f64 {
    ((1.0 - delta) * (k as f64).log2() - binary_entropy(delta)).max(0.0)
}

/// `max(0, (1−δ)·log₂K − h₂(δ))` bits.
pub fn fano_lower(k: usize, delta: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::OutOfRange("K must be >= 1".into()));
    }
    if !(0.0..0.5).contains(&delta) {
        return Err(Error::OutOfRange(format!("delta = {delta} outside [0, 1/2)")));
    }
    Ok(fano_value(k, delta))
}

/// `χ = S(Σ p_i |ψ_i><ψ_i|)` in bits.
pub fn holevo_chi(ensemble: &Ensemble) -> Result<f64> {
    von_neumann_entropy(&ensemble.average())
}

/// Same as [`holevo_chi`] for members given as density matrices; rejects
/// mixed members.
pub fn holevo_chi_density(members: &[(f64, DensityMatrix)]) -> Result<f64> {
    if members.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    for (i, (_, rho)) in members.iter().enumerate() {
        if (rho.purity() - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidDensity(format!("member {i} is mixed (purity {:.6})", rho.purity())));
        }
    }
    let parts: Vec<(f64, &DensityMatrix)> = members.iter().map(|(p, r)| (*p, r)).collect();
    von_neumann_entropy(&DensityMatrix::mixture(&parts)?)
}

/// Per-copy information ceilings: `C_χ ε²` alongside the trivial `log₂ d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HolevoCeiling {
    pub coarse: f64,
    pub entropy_cap: f64,
    pub value: f64,
}

pub fn holevo_ceiling(epsilon: f64, dim: usize, c_chi: f64) -> HolevoCeiling {
    let coarse = c_chi * epsilon * epsilon;
    let entropy_cap = (dim as f64).log2();
    HolevoCeiling {
        coarse,
        entropy_cap,
        value: coarse.min(entropy_cap),
    }
}

fn check_accuracy(epsilon: f64, delta: f64) -> bool {
    epsilon_in_range(epsilon) && delta_in_range(delta)
}

/// `(c₂/ε²)·(min{2^n, G} + ln(1/δ))`
pub fn sample_lower_bound(n: usize, gates: f64, epsilon: f64, delta: f64, c2: f64) -> Bound {
    let dim = (n as f64).exp2();
    Bound {
        value: c2 / (epsilon * epsilon) * (dim.min(gates) + (1.0 / delta).ln()),
        in_range: check_accuracy(epsilon, delta),
    }
}

/// `(c₁/ε²)·min{2^n·ln(1/δ), G·ln(G/ε) + ln(1/δ)}`
pub fn sample_upper_bound(n: usize, gates: f64, epsilon: f64, delta: f64, c1: f64) -> Bound {
    let dim = (n as f64).exp2();
    let ld = (1.0 / delta).ln();
    let circuit = if gates > 0.0 { gates * (gates / epsilon).ln() } else { 0.0 };
    Bound {
        value: c1 / (epsilon * epsilon) * (dim * ld).min(circuit + ld),
        in_range: check_accuracy(epsilon, delta),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LockConstants {
    /// parameters per gate; parameter counting needs `c₂·G ≥ 2(2^n − 1)`
    pub c2: f64,
    /// prefactor of the `Ω(·/ε²)` sample bounds
    pub c: f64,
}

impl Default for LockConstants {
    fn default() -> Self {
        Self { c2: 1.0, c: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedBound {
    pub name: &'static str,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub epsilon: f64,
    pub delta: f64,
    pub constants: LockConstants,
    pub in_range: bool,
    pub bounds: Vec<NamedBound>,
}

impl BoundReport {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.bounds.iter().find(|b| b.name == name).map(|b| b.value)
    }
}

/// Universal-ansatz lock: parameter counting forces `G_univ ≥ 2(2^n−1)/c₂`
/// and hence `Ω(2^n/ε²)` samples. The unlocked variant substitutes
/// `G = √N / ln N`.
pub fn universal_lock(n: usize, epsilon: f64, delta: f64, k: LockConstants) -> Result<BoundReport> {
    if n == 0 || k.c2 <= 0.0 || epsilon <= 0.0 || delta <= 0.0 {
        return Err(Error::OutOfRange(format!("universal_lock(n={n}, eps={epsilon}, delta={delta})")));
    }
    let dim = (n as f64).exp2();
    let g_univ = (2.0 * (dim - 1.0) / k.c2).ceil();
    let g_unlocked = dim.sqrt() / dim.ln();
    let e2 = epsilon * epsilon;
    let bounds = vec![
        NamedBound { name: "g_univ_floor", value: g_univ },
        NamedBound { name: "locked_samples", value: k.c * dim / e2 },
        NamedBound { name: "locked_sample_lower_bound", value: sample_lower_bound(n, g_univ, epsilon, delta, k.c).value },
        NamedBound { name: "g_unlocked", value: g_unlocked },
        NamedBound { name: "unlocked_samples", value: k.c * dim.min(g_unlocked) / e2 },
        NamedBound {
            name: "unlocked_sample_lower_bound",
            value: sample_lower_bound(n, g_unlocked, epsilon, delta, k.c).value,
        },
    ];
    Ok(BoundReport {
        n,
        epsilon,
        delta,
        constants: k,
        in_range: check_accuracy(epsilon, delta),
        bounds,
    })
}

/// Largest hypothesis set handled by the square-root measurement.
pub const EXACT_POSTERIOR_MAX_K: usize = 64;
pub const EXACT_POSTERIOR_MAX_DIM: usize = 16;
pub const TOURNAMENT_MAX_K: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Square-root measurement on all copies jointly.
    ExactPosterior,
    /// Sequential pairwise Helstrom matches, copies split between matches.
    PairwiseHelstromVote,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscriminationConfig {
    pub copies: u32,
    pub strategy: Strategy,
    pub trials: u64,
    pub seed: u64,
    /// Use the exact outcome distribution instead of sampling.
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscriminationReport {
    pub k: usize,
    pub copies: u32,
    pub strategy: Strategy,
    pub trials: u64,
    pub error_rate: f64,
    pub error_sigma: f64,
    /// plug-in `I(X;Y)` from the contingency table, bits
    pub mutual_information: f64,
    pub mi_sigma: f64,
    /// `(1−δ̂)·log₂K − h₂(δ̂)` at the empirical error, clamped at 0
    pub fano_lower: f64,
    pub chi: f64,
    /// `M_s · χ`
    pub holevo_ceiling: f64,
    pub fano_ok: bool,
    pub holevo_ok: bool,
}

impl DiscriminationReport {
    pub fn sandwich_ok(&self) -> bool {
        self.fano_ok && self.holevo_ok
    }
}

fn gram(states: &[PureState], copies: u32) -> DMatrix<C64> {
    let k = states.len();
    DMatrix::from_fn(k, k, |i, j| {
        crate::qcore::inner_unchecked(states[i].amps(), states[j].amps()).powu(copies)
    })
}

fn psd_sqrt(m: &DMatrix<C64>) -> DMatrix<C64> {
    let eig = SymmetricEigen::new(m.clone());
    let v = &eig.eigenvectors;
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| c(l.max(0.0).sqrt(), 0.0)));
    v * d * v.adjoint()
}

/// `P(y | j)` of the square-root measurement on `ψ_j^{⊗M}`: `|(√G)_{yj}|²`.
pub fn square_root_measurement(states: &[PureState], copies: u32) -> DMatrix<f64> {
    let s = psd_sqrt(&gram(states, copies));
    DMatrix::from_fn(s.nrows(), s.ncols(), |j, y| s[(y, j)].norm_sqr())
}

/// Probability that the Helstrom measurement for `a` vs `b` on `t` copies
/// answers `a` when the copies are of `truth`.
fn helstrom_vote(states: &[PureState], a: usize, b: usize, truth: usize, t: u32) -> f64 {
    if t == 0 {
        return 0.5;
    }
    let ov = |i: usize, j: usize| crate::qcore::inner_unchecked(states[i].amps(), states[j].amps()).powu(t);
    let g = ov(a, b);
    let s = (1.0 - g.norm_sqr()).max(0.0).sqrt();
    if s < 1e-12 {
        return 0.5;
    }
    // orthonormal frame e1 = u, e2 = (v − g u)/s of span{u, v}
    let op = DMatrix::from_row_slice(2, 2, &[c(1.0 - g.norm_sqr(), 0.0), -g * s, -g.conj() * s, c(-s * s, 0.0)]);
    let eig = SymmetricEigen::new(op);
    let top = if eig.eigenvalues[0] >= eig.eigenvalues[1] { 0 } else { 1 };
    let e = eig.eigenvectors.column(top);
    let w1 = ov(a, truth);
    let w2 = (ov(b, truth) - g.conj() * w1) / s;
    (e[0].conj() * w1 + e[1].conj() * w2).norm_sqr().clamp(0.0, 1.0)
}

/// Exact `P(winner | j)` of the sequential knockout: the champion meets each
/// remaining hypothesis in turn, match `m` using its share of the copies.
pub fn tournament_distribution(states: &[PureState], copies: u32) -> DMatrix<f64> {
    let k = states.len();
    let matches = k.saturating_sub(1).max(1);
    let share = |m: usize| (copies as usize / matches + usize::from(m < copies as usize % matches)) as u32;
    let mut out = DMatrix::zeros(k, k);
    for truth in 0..k {
        let mut champ = vec![0.0; k];
        champ[0] = 1.0;
        for challenger in 1..k {
            let t = share(challenger - 1);
            let mut next = vec![0.0; k];
            for (holder, &p) in champ.iter().enumerate().take(challenger) {
                if p == 0.0 {
                    continue;
                }
                let keep = helstrom_vote(states, holder, challenger, truth, t);
                next[holder] += p * keep;
                next[challenger] += p * (1.0 - keep);
            }
            champ = next;
        }
        for (y, p) in champ.into_iter().enumerate() {
            out[(truth, y)] = p;
        }
    }
    out
}

/// `I(X;Y)` in bits and its delta-method standard error for a joint table
/// estimated from `trials` samples.
fn plug_in_mi(joint: &DMatrix<f64>, trials: f64) -> (f64, f64) {
    let px: Vec<f64> = joint.row_iter().map(|r| r.sum()).collect();
    let py: Vec<f64> = joint.column_iter().map(|c| c.sum()).collect();
    let (mut mi, mut second) = (0.0, 0.0);
    for i in 0..joint.nrows() {
        for j in 0..joint.ncols() {
            let p = joint[(i, j)];
            if p > 0.0 {
                let l = (p / (px[i] * py[j])).log2();
                mi += p * l;
                second += p * l * l;
            }
        }
    }
    let var = if trials.is_finite() { ((second - mi * mi).max(0.0)) / trials } else { 0.0 };
    (mi.max(0.0), var.sqrt())
}

/// Uniform prior over the packing, `M_s` copies of the true state, decoded by
/// `strategy`. Checks `fano_lower(K, δ̂) ≤ Î + 3σ` and `Î ≤ M_s χ + 3σ`.
pub fn discrimination_experiment(packing: &PackingSet, config: &DiscriminationConfig) -> Result<DiscriminationReport> {
    let k = packing.len();
    if k < 2 {
        return Err(Error::OutOfRange(format!("discrimination needs K >= 2, got {k}")));
    }
    if !config.exact && config.trials == 0 {
        return Err(Error::OutOfRange("trials must be >= 1".into()));
    }
    let states = packing.states();
    let cond = match config.strategy {
        Strategy::ExactPosterior => {
            if k > EXACT_POSTERIOR_MAX_K || packing.dim() > EXACT_POSTERIOR_MAX_DIM {
                return Err(Error::TooLarge(format!(
                    "exact posterior limited to K <= {EXACT_POSTERIOR_MAX_K}, dim <= {EXACT_POSTERIOR_MAX_DIM}"
                )));
            }
            square_root_measurement(states, config.copies)
        }
        Strategy::PairwiseHelstromVote => {
            if k > TOURNAMENT_MAX_K {
                return Err(Error::TooLarge(format!("tournament limited to K <= {TOURNAMENT_MAX_K}")));
            }
            tournament_distribution(states, config.copies)
        }
    };

    let kf = k as f64;
    let (joint, trials) = if config.exact {
        (cond.map(|p| p / kf), f64::INFINITY)
    } else {
        let mut counts = DMatrix::<f64>::zeros(k, k);
        for t in 0..config.trials {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(t);
            let j = rng.random_range(0..k);
            let u: f64 = rng.random();
            let mut acc = 0.0;
            let mut y = k - 1;
            for (cand, p) in cond.row(j).iter().enumerate() {
                acc += p;
                if u < acc {
                    y = cand;
                    break;
                }
            }
            counts[(j, y)] += 1.0;
        }
        let tf = config.trials as f64;
        (counts / tf, tf)
    };

    let error_rate = (1.0 - joint.diagonal().sum()).clamp(0.0, 1.0);
    let error_sigma = if trials.is_finite() { (error_rate * (1.0 - error_rate) / trials).sqrt() } else { 0.0 };
    let (mutual_information, mi_sigma) = plug_in_mi(&joint, trials);
    let chi = holevo_chi(&packing.uniform_ensemble()?)?;
    let holevo_ceiling = config.copies as f64 * chi;
    let fano = fano_value(k, error_rate);
    let slack = 3.0 * mi_sigma + 1e-9;
    Ok(DiscriminationReport {
        k,
        copies: config.copies,
        strategy: config.strategy,
        trials: config.trials,
        error_rate,
        error_sigma,
        mutual_information,
        mi_sigma,
        fano_lower: fano,
        chi,
        holevo_ceiling,
        fano_ok: fano <= mutual_information + slack,
        holevo_ok: mutual_information <= holevo_ceiling + slack,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn plus() -> PureState {
        PureState::from_real(&[1.0 / 2f64.sqrt(), 1.0 / 2f64.sqrt()]).unwrap()
    }

    #[test]
    fn covering_examples() {
        let spec = StateClassSpec::new(3, 8.0);
        let b = covering_log_bound(&spec, 0.25).unwrap();
        assert_abs_diff_eq!(b.value, 8.0 * 32f64.ln() + 4f64.ln(), epsilon = 1e-12);
        assert_abs_diff_eq!(b.value, 29.11, epsilon = 5e-3);
        assert!(b.in_range);
        let one = covering_log_bound(&StateClassSpec::new(1, 1.0), 0.25).unwrap();
        assert_abs_diff_eq!(one.value, 2.772588722, epsilon = 1e-8);
        let zero = StateClassSpec { entropy_constant: 0.0, ..spec };
        assert_abs_diff_eq!(covering_log_bound(&zero, 0.1).unwrap().value, 10f64.ln(), epsilon = 1e-12);
        assert!(!covering_log_bound(&spec, 0.5).unwrap().in_range);
    }

    #[test]
    fn packing_examples() {
        assert_eq!(greedy_packing(4, 0.5, 1, 0).unwrap().len(), 1);
        let pool = vec![PureState::basis(1, 0).unwrap(), plus(), PureState::basis(1, 1).unwrap()];
        let set = greedy_packing_from_pool(pool, 1.0).unwrap();
        assert_eq!(set.len(), 2);
        assert!(set.verify());
        let big = greedy_packing(4, 0.5, 500, 7).unwrap();
        assert!(big.verify() && big.len() > 2);
        assert_eq!(big.truncate(2).len(), 2);
        assert!(greedy_packing(3, 0.5, 10, 0).is_err());
        assert!(greedy_packing(4, 0.0, 10, 0).is_err());
    }

    #[test]
    fn fano_examples() {
        assert_abs_diff_eq!(fano_lower(4, 0.0).unwrap(), 2.0, epsilon = 1e-12);
        assert_eq!(fano_lower(2, 0.4).unwrap(), 0.0);
        assert_abs_diff_eq!(fano_lower(1024, 0.1).unwrap(), 9.0 - binary_entropy(0.1), epsilon = 1e-12);
        assert_abs_diff_eq!(fano_lower(1024, 0.1).unwrap(), 8.531, epsilon = 1e-3);
        assert!(fano_lower(4, 0.5).is_err());
    }

    #[test]
    fn holevo_examples() {
        let z = PureState::basis(1, 0).unwrap();
        let same = Ensemble::uniform(vec![z.clone(), z.clone()]).unwrap();
        assert_abs_diff_eq!(holevo_chi(&same).unwrap(), 0.0, epsilon = 1e-12);
        let orth = Ensemble::uniform(vec![z.clone(), PureState::basis(1, 1).unwrap()]).unwrap();
        assert_abs_diff_eq!(holevo_chi(&orth).unwrap(), 1.0, epsilon = 1e-12);
        let mixed = Ensemble::uniform(vec![z.clone(), plus()]).unwrap();
        // eigenvalues ½(1 ± 1/√2)
        let l = 0.5 * (1.0 + 0.5f64.sqrt());
        assert_abs_diff_eq!(holevo_chi(&mixed).unwrap(), binary_entropy(l), epsilon = 1e-12);
        assert_abs_diff_eq!(holevo_chi(&mixed).unwrap(), 0.6009, epsilon = 1e-4);

        let bad = [(0.5, z.to_density()), (0.5, DensityMatrix::maximally_mixed(2))];
        assert!(holevo_chi_density(&bad).is_err());
        let good = [(0.5, z.to_density()), (0.5, plus().to_density())];
        assert_abs_diff_eq!(holevo_chi_density(&good).unwrap(), holevo_chi(&mixed).unwrap(), epsilon = 1e-12);
    }

    #[test]
    fn sample_bound_examples() {
        let lo = sample_lower_bound(4, 8.0, 0.25, 0.1, 1.0);
        assert_abs_diff_eq!(lo.value, 16.0 * (8.0 + 10f64.ln()), epsilon = 1e-9);
        assert_abs_diff_eq!(lo.value, 164.84, epsilon = 1e-2);
        assert_eq!(
            sample_lower_bound(3, 100.0, 0.25, 0.1, 1.0).value,
            sample_lower_bound(3, 8.0, 0.25, 0.1, 1.0).value
        );
        assert_abs_diff_eq!(
            sample_lower_bound(4, 8.0, 0.125, 0.1, 1.0).value,
            4.0 * lo.value,
            epsilon = 1e-9
        );
        let up = sample_upper_bound(3, 1e6, 0.25, 0.1, 1.0);
        assert_abs_diff_eq!(up.value, 16.0 * 8.0 * 10f64.ln(), epsilon = 1e-9);
        let up = sample_upper_bound(10, 8.0, 0.25, 0.1, 1.0);
        assert_abs_diff_eq!(up.value, 480.5, epsilon = 0.05);
        assert!(!sample_lower_bound(4, 8.0, 0.5, 0.1, 1.0).in_range);
    }

    #[test]
    fn lock_examples() {
        let rep = universal_lock(5, 0.25, 0.1, LockConstants { c2: 3.0, c: 1.0 }).unwrap();
        assert_eq!(rep.get("g_univ_floor"), Some((62.0f64 / 3.0).ceil()));
        let unit = universal_lock(6, 1.0, 0.1, LockConstants::default()).unwrap();
        assert_eq!(unit.get("locked_samples"), Some(64.0));
        assert!(!unit.in_range);
        let ten = universal_lock(10, 1.0, 0.1, LockConstants { c2: 1.0, c: 2.0 }).unwrap();
        assert_abs_diff_eq!(ten.get("unlocked_samples").unwrap(), 2.0 * 32.0 / 1024f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn orthogonal_pair_is_perfectly_discriminated() {
        let pool = vec![PureState::basis(1, 0).unwrap(), PureState::basis(1, 1).unwrap()];
        let set = greedy_packing_from_pool(pool, 1.0).unwrap();
        for strategy in [Strategy::ExactPosterior, Strategy::PairwiseHelstromVote] {
            let cfg = DiscriminationConfig { copies: 1, strategy, trials: 500, seed: 1, exact: false };
            let rep = discrimination_experiment(&set, &cfg).unwrap();
            assert_eq!(rep.error_rate, 0.0);
            assert_abs_diff_eq!(rep.mutual_information, 1.0, epsilon = 0.01);
            assert!(rep.sandwich_ok());
        }
    }

    #[test]
    fn two_state_error_matches_helstrom() {
        // |<a|b>| = 0.8
        let a = PureState::basis(1, 0).unwrap();
        let b = PureState::from_real(&[0.8, 0.6]).unwrap();
        let set = greedy_packing_from_pool(vec![a, b], 0.1).unwrap();
        let want = 0.5 * (1.0 - (1.0 - 0.8f64.powi(6)).sqrt());
        for strategy in [Strategy::ExactPosterior, Strategy::PairwiseHelstromVote] {
            let cfg = DiscriminationConfig { copies: 3, strategy, trials: 0, seed: 0, exact: true };
            let rep = discrimination_experiment(&set, &cfg).unwrap();
            assert_abs_diff_eq!(rep.error_rate, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn exact_posterior_cap() {
        let set = greedy_packing(32, 0.3, 20, 1).unwrap();
        let cfg = DiscriminationConfig {
            copies: 1,
            strategy: Strategy::ExactPosterior,
            trials: 10,
            seed: 0,
            exact: false,
        };
        assert!(matches!(discrimination_experiment(&set, &cfg), Err(Error::TooLarge(_))));
    }
}
