//! Entanglement-assisted signaling harness.
//!
//! Alice holds register `Q`, Bob holds `B`, and they share `|Φ>`. Bob encodes
//! a bit `b` by a local operation on `B`; Alice runs a local program on `Q`
//! and reads out `Y`. Any CPTP program sees only her marginal, so `I(b:Y)=0`.
//! A branch-wise reflection about her collapsed state does not, and signals.

use nalgebra::DMatrix;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcore::{
    c, haar_unitary, partial_trace_pure, trace_distance, DensityMatrix, Ensemble, Keep, PureState, C64, TOL,
};
use crate::search::Oracle;

/// Largest per-side register for the bipartite harness.
pub const MAX_SIDE_QUBITS: usize = 5;

/// Joint pure state over `Q ⊗ B`, `n` qubits per side, index `q * 2^n + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    n: usize,
    amps: Vec<C64>,
}

impl BipartiteState {
    pub fn new(n: usize, amps: Vec<C64>) -> Result<Self> {
        let dim = 1usize << (2 * n);
        if amps.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: amps.len(),
            });
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side_dim(&self) -> usize {
        1 << self.n
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn to_pure(&self) -> PureState {
        PureState::from_parts_unchecked(2 * self.n, self.amps.clone())
    }

    pub fn reduced(&self, keep: Keep) -> DensityMatrix {
        let d = self.side_dim();
        partial_trace_pure(&self.to_pure(), (d, d), keep).expect("square split of a 4^n vector")
    }
}

/// `(1/√N) Σ_i |i>_Q |i>_B`
pub fn max_entangled(n: usize) -> Result<BipartiteState> {
    if n == 0 || n > MAX_SIDE_QUBITS {
        return Err(Error::TooLarge(format!("per-side register of {n} qubits (1..={MAX_SIDE_QUBITS})")));
    }
    let d = 1usize << n;
    let mut amps = vec![C64::default(); d * d];
    let a = 1.0 / (d as f64).sqrt();
    for i in 0..d {
        amps[i * d + i] = c(a, 0.0);
    }
    Ok(BipartiteState { n, amps })
}

fn check_oracle(f: &Oracle, n: usize) -> Result<()> {
    if f.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: f.n(),
        });
    }
    Ok(())
}

/// `(1 ⊗ V_f)`: sign `(−1)^{f(j)}` on every `|i>_Q |j>_B`.
pub fn bob_phase(f: &Oracle, state: &BipartiteState) -> Result<BipartiteState> {
    check_oracle(f, state.n)?;
    let d = state.side_dim();
    let amps = state
        .amps
        .iter()
        .enumerate()
        .map(|(i, a)| if f.f(i % d) { -a } else { *a })
        .collect();
    Ok(BipartiteState { n: state.n, amps })
}

/// `(R_f ⊗ 1)`: the same sign keyed on Alice's index.
pub fn alice_phase(f: &Oracle, state: &BipartiteState) -> Result<BipartiteState> {
    check_oracle(f, state.n)?;
    let d = state.side_dim();
    let amps = state
        .amps
        .iter()
        .enumerate()
        .map(|(i, a)| if f.f(i / d) { -a } else { *a })
        .collect();
    Ok(BipartiteState { n: state.n, amps })
}

/// `‖(1 ⊗ V_f)|Φ> − (R_f ⊗ 1)|Φ>‖₂`
pub fn kickback_check(n: usize, f: &Oracle) -> Result<f64> {
    let phi = max_entangled(n)?;
    let bob = bob_phase(f, &phi)?;
    let alice = alice_phase(f, &phi)?;
    Ok(bob
        .amps
        .iter()
        .zip(&alice.amps)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt())
}

fn check_basis(basis: &[PureState], dim: usize) -> Result<()> {
    if basis.len() != dim {
        return Err(Error::InvalidLayout(format!("basis has {} vectors, need {dim}", basis.len())));
    }
    for (i, u) in basis.iter().enumerate() {
        if u.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: u.dim(),
            });
        }
        for v in &basis[..i] {
            if u.inner(v)?.norm() > 1e-9 {
                return Err(Error::InvalidLayout("basis is not orthonormal".into()));
            }
        }
    }
    Ok(())
}

pub fn computational_basis(n: usize) -> Vec<PureState> {
    (0..1usize << n).map(|i| PureState::basis(n, i).unwrap()).collect()
}

/// `H^{⊗n}` applied to the computational basis; for `n = 1` this is `[|+>, |−>]`.
pub fn hadamard_basis(n: usize) -> Vec<PureState> {
    let d = 1usize << n;
    let a = 1.0 / (d as f64).sqrt();
    (0..d)
        .map(|k| {
            let amps = (0..d)
                .map(|x| if (k & x).count_ones() % 2 == 0 { c(a, 0.0) } else { c(-a, 0.0) })
                .collect();
            PureState::from_parts_unchecked(n, amps)
        })
        .collect()
}

/// Single-qubit basis `Ry(φ)|0>, Ry(φ)|1>`; `φ = π/2` is the `±` basis.
pub fn rotated_basis(phi: f64) -> Vec<PureState> {
    let (s, co) = (phi / 2.0).sin_cos();
    vec![
        PureState::from_parts_unchecked(1, vec![c(co, 0.0), c(s, 0.0)]),
        PureState::from_parts_unchecked(1, vec![c(-s, 0.0), c(co, 0.0)]),
    ]
}

/// Bob measures `B` in `basis`; Alice is left with the returned ensemble.
/// Zero-probability outcomes are dropped.
pub fn bob_measure(state: &BipartiteState, basis: &[PureState]) -> Result<Ensemble> {
    let d = state.side_dim();
    check_basis(basis, d)?;
    let mut members = Vec::with_capacity(d);
    for beta in basis {
        let v: Vec<C64> = (0..d)
            .map(|q| (0..d).map(|b| state.amps[q * d + b] * beta.amp(b).conj()).sum())
            .collect();
        let p = v.iter().map(|z| z.norm_sqr()).sum::<f64>();
        if p > 1e-14 {
            members.push((p, PureState::normalized(v)?));
        }
    }
    let total: f64 = members.iter().map(|m| m.0).sum();
    for m in &mut members {
        m.0 /= total;
    }
    Ensemble::new(members)
}

/// One step of a local Alice circuit.
#[derive(Debug, Clone, PartialEq)]
pub enum LocalOp {
    Unitary(DMatrix<C64>),
    /// Projective computational-basis measurement whose outcome is recorded.
    Measure { qubit: usize },
}

/// Unitaries and projective measurements on Alice's `n` qubits plus
/// `ancilla` fresh qubits in `|0>`. Ancillas occupy the low bits of the
/// working index. Every qubit is measured in the computational basis at the
/// end, after `final_unitary`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalCircuit {
    n: usize,
    ancilla: usize,
    ops: Vec<LocalOp>,
    final_unitary: Option<DMatrix<C64>>,
}

fn check_unitary(u: &DMatrix<C64>, dim: usize) -> Result<()> {
    if u.nrows() != dim || u.ncols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: u.nrows(),
        });
    }
    let dev = (u.adjoint() * u - DMatrix::identity(dim, dim)).norm();
    if dev > 1e-9 {
        return Err(Error::InvalidLayout(format!("matrix is not unitary (deviation {dev:.3e})")));
    }
    Ok(())
}

impl LocalCircuit {
    pub fn new(n: usize, ancilla: usize, ops: Vec<LocalOp>, final_unitary: Option<DMatrix<C64>>) -> Result<Self> {
        let width = n + ancilla;
        if width > 8 {
            return Err(Error::TooLarge(format!("local circuit on {width} qubits")));
        }
        let dim = 1usize << width;
        for op in &ops {
            match op {
                LocalOp::Unitary(u) => check_unitary(u, dim)?,
                LocalOp::Measure { qubit } if *qubit >= width => {
                    return Err(Error::OutOfRange(format!("measured qubit {qubit} of {width}")))
                }
                LocalOp::Measure { .. } => {}
            }
        }
        if let Some(u) = &final_unitary {
            check_unitary(u, dim)?;
        }
        Ok(Self {
            n,
            ancilla,
            ops,
            final_unitary,
        })
    }

    /// `depth` Haar unitaries on the working register, each followed with
    /// probability ½ by a measurement of a random qubit, then a Haar basis.
    pub fn random<R: Rng + ?Sized>(n: usize, ancilla: usize, depth: usize, rng: &mut R) -> Result<Self> {
        let width = n + ancilla;
        let dim = 1usize << width;
        let mut ops = Vec::new();
        for _ in 0..depth {
            ops.push(LocalOp::Unitary(haar_unitary(dim, rng)));
            if rng.random::<bool>() {
                ops.push(LocalOp::Measure {
                    qubit: rng.random_range(0..width),
                });
            }
        }
        Self::new(n, ancilla, ops, Some(haar_unitary(dim, rng)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of mid-circuit measurements.
    pub fn measurements(&self) -> usize {
        self.ops.iter().filter(|o| matches!(o, LocalOp::Measure { .. })).count()
    }

    /// `P(record, x)` at index `record * 2^width + x`, where `record` lists the
    /// mid-circuit outcomes in order, first outcome most significant.
    pub fn output_distribution(&self, rho: &DensityMatrix) -> Result<Vec<f64>> {
        let side = 1usize << self.n;
        if rho.dim() != side {
            return Err(Error::DimensionMismatch {
                expected: side,
                found: rho.dim(),
            });
        }
        let ancilla = PureState::zero(self.ancilla).to_density();
        let mut branches = vec![rho.tensor(&ancilla).entries().clone()];
        for op in &self.ops {
            match op {
                LocalOp::Unitary(u) => {
                    for b in &mut branches {
                        *b = u * &*b * u.adjoint();
                    }
                }
                LocalOp::Measure { qubit } => {
                    let bit = 1usize << qubit;
                    let mut next = Vec::with_capacity(branches.len() * 2);
                    for b in &branches {
                        for outcome in [0, bit] {
                            let mut p = b.clone();
                            for i in 0..p.nrows() {
                                for j in 0..p.ncols() {
                                    if i & bit != outcome || j & bit != outcome {
                                        p[(i, j)] = C64::default();
                                    }
                                }
                            }
                            next.push(p);
                        }
                    }
                    branches = next;
                }
            }
        }
        let mut out = Vec::new();
        for b in &branches {
            let b = match &self.final_unitary {
                Some(u) => u * b * u.adjoint(),
                None => b.clone(),
            };
            out.extend((0..b.nrows()).map(|x| b[(x, x)].re.max(0.0)));
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AliceProgram {
    Cptp(LocalCircuit),
    /// Reflect `probe` about Alice's own (unknown) state, branch by branch,
    /// then measure it in `basis`.
    MagicReflection { probe: PureState, basis: Vec<PureState> },
}

impl AliceProgram {
    /// Probe `|+>` read out in `[|+>, |−>]`.
    pub fn magic_plus_probe() -> Self {
        Self::MagicReflection {
            probe: hadamard_basis(1)[0].clone(),
            basis: hadamard_basis(1),
        }
    }
}

/// Bob's local action for one value of `b`.
#[derive(Debug, Clone, PartialEq)]
pub enum BobOp {
    Nothing,
    Oracle(Oracle),
    Measure(Vec<PureState>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BobEncoding {
    pub zero: BobOp,
    pub one: BobOp,
}

impl BobEncoding {
    /// `f_∅` for `b = 0`, `f_τ` for `b = 1`.
    pub fn oracle_choice(n: usize, tau: usize) -> Result<Self> {
        Ok(Self {
            zero: BobOp::Oracle(Oracle::null(n)),
            one: BobOp::Oracle(Oracle::marking(n, tau)?),
        })
    }

    pub fn measurement_basis(basis0: Vec<PureState>, basis1: Vec<PureState>) -> Self {
        Self {
            zero: BobOp::Measure(basis0),
            one: BobOp::Measure(basis1),
        }
    }

    pub fn identical(op: BobOp) -> Self {
        Self { zero: op.clone(), one: op }
    }
}

/// What Alice holds after Bob acts.
#[derive(Debug, Clone, PartialEq)]
pub enum AliceInput {
    Density(DensityMatrix),
    Ensemble(Ensemble),
}

impl AliceInput {
    pub fn average(&self) -> DensityMatrix {
        match self {
            Self::Density(d) => d.clone(),
            Self::Ensemble(e) => e.average(),
        }
    }
}

pub fn alice_input(n: usize, op: &BobOp) -> Result<AliceInput> {
    let phi = max_entangled(n)?;
    Ok(match op {
        BobOp::Nothing => AliceInput::Density(phi.reduced(Keep::A)),
        BobOp::Oracle(f) => AliceInput::Density(bob_phase(f, &phi)?.reduced(Keep::A)),
        BobOp::Measure(basis) => AliceInput::Ensemble(bob_measure(&phi, basis)?),
    })
}

/// `{(p_i, R_{ψ_i} probe)}` with `R_ψ = 1 − 2|ψ><ψ|`.
pub fn magic_reflection(ensemble: &Ensemble, probe: &PureState) -> Result<Ensemble> {
    if ensemble.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    let members = ensemble
        .members()
        .iter()
        .map(|(p, psi)| Ok((*p, crate::qcore::householder_apply(psi, probe)?)))
        .collect::<Result<Vec<_>>>()?;
    Ensemble::new(members)
}

fn run_alice(n: usize, program: &AliceProgram, input: &AliceInput) -> Result<Vec<f64>> {
    match program {
        AliceProgram::Cptp(circuit) => {
            if circuit.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: circuit.n(),
                });
            }
            circuit.output_distribution(&input.average())
        }
        AliceProgram::MagicReflection { probe, basis } => {
            let AliceInput::Ensemble(ens) = input else {
                return Err(Error::EnsembleRequired(
                    "Bob's operation leaves only a density matrix on Alice's side".into(),
                ));
            };
            check_basis(basis, probe.dim())?;
            let out = magic_reflection(ens, probe)?;
            basis
                .iter()
                .map(|y| {
                    out.members()
                        .iter()
                        .map(|(p, s)| Ok(p * y.fidelity(s)?))
                        .sum::<Result<f64>>()
                })
                .collect()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignalReport {
    pub p0: Vec<f64>,
    pub p1: Vec<f64>,
    pub tv: f64,
    /// `I(b:Y)` in bits with a uniform prior on `b`
    pub mi: f64,
}

impl SignalReport {
    pub fn from_distributions(p0: Vec<f64>, p1: Vec<f64>) -> Self {
        let tv = (0.5 * p0.iter().zip(&p1).map(|(a, b)| (a - b).abs()).sum::<f64>()).clamp(0.0, 1.0);
        let mi = mutual_information(&p0, &p1);
        Self { p0, p1, tv, mi }
    }
}

fn entropy_bits(p: impl Iterator<Item = f64>) -> f64 {
    p.filter(|&x| x > 0.0).map(|x| -x * x.log2()).sum()
}

/// `H(Y) − ½H(Y|b=0) − ½H(Y|b=1)`, clamped to `[0, 1]`.
pub fn mutual_information(p0: &[f64], p1: &[f64]) -> f64 {
    let mix = entropy_bits(p0.iter().zip(p1).map(|(a, b)| 0.5 * (a + b)));
    let cond = 0.5 * entropy_bits(p0.iter().copied()) + 0.5 * entropy_bits(p1.iter().copied());
    (mix - cond).clamp(0.0, 1.0)
}

/// Bob encodes `b` per `bob` on his half of `|Φ>`; Alice runs `alice` on
/// hers. Distributions are exact.
pub fn run_signaling_protocol(n: usize, alice: &AliceProgram, bob: &BobEncoding) -> Result<SignalReport> {
    let p0 = run_alice(n, alice, &alice_input(n, &bob.zero)?)?;
    let p1 = run_alice(n, alice, &alice_input(n, &bob.one)?)?;
    Ok(SignalReport::from_distributions(p0, p1))
}

/// Optimal success probability for telling `rho0` from `rho1` with equal
/// priors given `copies` copies. Pure pairs use `½ + ½√(1 − α^{2t})`;
/// mixed pairs with `t > 1` go through the explicit tensor power.
pub fn helstrom_bias(rho0: &DensityMatrix, rho1: &DensityMatrix, copies: u32) -> Result<f64> {
    if copies == 0 {
        return Err(Error::OutOfRange("copies must be >= 1".into()));
    }
    if rho0.dim() != rho1.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho0.dim(),
            found: rho1.dim(),
        });
    }
    let pure = |r: &DensityMatrix| (r.purity() - 1.0).abs() < 1e-10;
    if pure(rho0) && pure(rho1) {
        let alpha2 = rho0.overlap(rho1)?.clamp(0.0, 1.0);
        return Ok(0.5 + 0.5 * (1.0 - alpha2.powi(copies as i32)).max(0.0).sqrt());
    }
    if copies == 1 {
        return Ok(0.5 + 0.5 * trace_distance(rho0, rho1)?);
    }
    let big = (rho0.dim() as f64).powi(copies as i32);
    if big > 256.0 {
        return Err(Error::TooLarge(format!("{copies}-fold tensor power of dimension {}", rho0.dim())));
    }
    let (mut a, mut b) = (rho0.clone(), rho1.clone());
    for _ in 1..copies {
        a = a.tensor(rho0);
        b = b.tensor(rho1);
    }
    Ok(0.5 + 0.5 * trace_distance(&a, &b)?)
}

pub fn helstrom_bias_pure(psi0: &PureState, psi1: &PureState, copies: u32) -> Result<f64> {
    if copies == 0 {
        return Err(Error::OutOfRange("copies must be >= 1".into()));
    }
    let alpha2 = psi0.fidelity(psi1)?.clamp(0.0, 1.0);
    Ok(0.5 + 0.5 * (1.0 - alpha2.powi(copies as i32)).max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bell_pair() {
        let phi = max_entangled(1).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let want = [h, 0.0, 0.0, h];
        for (a, w) in phi.amps().iter().zip(want) {
            assert_abs_diff_eq!(a.re, w, epsilon = 1e-15);
        }
        let rho = max_entangled(3).unwrap().reduced(Keep::A);
        let diff = rho.entries() - DMatrix::identity(8, 8).map(|z: C64| z / 8.0);
        assert!(diff.norm() < 1e-12);
        assert!(max_entangled(6).is_err());
    }

    #[test]
    fn bob_phase_examples() {
        let phi = max_entangled(1).unwrap();
        assert_eq!(bob_phase(&Oracle::null(1), &phi).unwrap(), phi);
        let f = Oracle::marking(1, 1).unwrap();
        let out = bob_phase(&f, &phi).unwrap();
        assert!(out.amps()[3].re < 0.0 && out.amps()[0].re > 0.0);
        assert_eq!(bob_phase(&f, &out).unwrap(), phi);
        assert!(bob_phase(&Oracle::null(2), &phi).is_err());
    }

    #[test]
    fn kickback_examples() {
        assert!(kickback_check(1, &Oracle::marking(1, 0).unwrap()).unwrap() < 1e-12);
        assert_eq!(kickback_check(4, &Oracle::null(4)).unwrap(), 0.0);
        assert!(kickback_check(3, &Oracle::marking(3, 5).unwrap()).unwrap() < 1e-12);
    }

    #[test]
    fn magic_demo_signals_one_bit() {
        let bob = BobEncoding::measurement_basis(computational_basis(1), hadamard_basis(1));
        let rep = run_signaling_protocol(1, &AliceProgram::magic_plus_probe(), &bob).unwrap();
        assert_abs_diff_eq!(rep.p0[1], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rep.p1[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rep.tv, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rep.mi, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn magic_needs_an_ensemble() {
        let bob = BobEncoding::oracle_choice(1, 1).unwrap();
        let err = run_signaling_protocol(1, &AliceProgram::magic_plus_probe(), &bob).unwrap_err();
        assert!(matches!(err, Error::EnsembleRequired(_)));
    }

    #[test]
    fn identical_bob_ops_do_not_signal() {
        let bob = BobEncoding::identical(BobOp::Measure(hadamard_basis(1)));
        let rep = run_signaling_protocol(1, &AliceProgram::magic_plus_probe(), &bob).unwrap();
        assert_eq!(rep.tv, 0.0);
    }

    #[test]
    fn cptp_does_not_signal() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let circuit = LocalCircuit::random(2, 1, 3, &mut rng).unwrap();
        let prog = AliceProgram::Cptp(circuit);
        for bob in [
            BobEncoding::oracle_choice(2, 3).unwrap(),
            BobEncoding::measurement_basis(computational_basis(2), hadamard_basis(2)),
        ] {
            let rep = run_signaling_protocol(2, &prog, &bob).unwrap();
            assert_abs_diff_eq!(rep.p0.iter().sum::<f64>(), 1.0, epsilon = 1e-10);
            assert!(rep.tv < 1e-10 && rep.mi < 1e-9, "{rep:?}");
        }
    }

    #[test]
    fn magic_reflection_examples() {
        let plus = &hadamard_basis(1)[0];
        let minus = &hadamard_basis(1)[1];
        let single = Ensemble::new(vec![(1.0, minus.clone())]).unwrap();
        let out = magic_reflection(&single, plus).unwrap();
        assert!(out.members()[0].1.fidelity(plus).unwrap() > 1.0 - 1e-12);

        let z = Ensemble::uniform(computational_basis(1)).unwrap();
        let avg = magic_reflection(&z, plus).unwrap().average();
        assert!((avg.entries() - minus.to_density().entries()).norm() < 1e-12);

        let x = Ensemble::uniform(hadamard_basis(1)).unwrap();
        let avg = magic_reflection(&x, plus).unwrap().average();
        assert!((avg.entries() - plus.to_density().entries()).norm() < 1e-12);
        // same input average
        assert!((z.average().entries() - x.average().entries()).norm() < 1e-12);
    }

    #[test]
    fn helstrom_examples() {
        let z0 = PureState::basis(1, 0).unwrap().to_density();
        let z1 = PureState::basis(1, 1).unwrap().to_density();
        assert_abs_diff_eq!(helstrom_bias(&z0, &z1, 1).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(helstrom_bias(&z0, &z0, 3).unwrap(), 0.5, epsilon = 1e-12);
        // α = ½
        let s = rotated_basis(2.0 * (0.5f64).acos())[0].to_density();
        let want = 0.5 + 0.5 * (1.0 - 1.0 / 16.0f64).sqrt();
        assert_abs_diff_eq!(helstrom_bias(&z0, &s, 2).unwrap(), want, epsilon = 1e-12);
        assert_abs_diff_eq!(want, 0.9841, epsilon = 1e-4);
    }

    #[test]
    fn helstrom_mixed_matches_pure_formula_in_the_limit() {
        let m = DensityMatrix::maximally_mixed(2);
        let z0 = PureState::basis(1, 0).unwrap().to_density();
        assert_abs_diff_eq!(helstrom_bias(&m, &z0, 1).unwrap(), 0.75, epsilon = 1e-12);
        // two copies: ½‖(I/2)^{⊗2} − |00><00|‖₁ = 3/4
        assert_abs_diff_eq!(helstrom_bias(&m, &z0, 2).unwrap(), 0.5 + 0.5 * 0.75, epsilon = 1e-12);
        assert!(helstrom_bias(&m, &z0, 0).is_err());
    }
}
