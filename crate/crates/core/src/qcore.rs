//! Dense pure and mixed states over qubit registers.
//!
//! Everything here is a plain value type: states are immutable after
//! construction and every operation returns a fresh value. Basis index `i`
//! of an `n`-qubit register carries qubit `q` in bit `q` of `i`.
//!
//! Bipartite objects are laid out A-major: joint index `a * dim_b + b`.

use nalgebra::{Complex, DMatrix, SymmetricEigen};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// Default absolute tolerance for state validation.
pub const TOL: f64 = 1e-10;

/// Eigenvalues below this are treated as exact zeros in entropies.
pub const EIGEN_CLIP: f64 = 1e-15;

/// Largest register simulated as a dense vector.
pub const MAX_QUBITS: usize = 16;

#[inline]
pub(crate) fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

fn norm_of(amps: &[C64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Unit-norm amplitude vector over `2^n` basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n: usize,
    amps: Vec<C64>,
}

impl PureState {
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        Self::with_tolerance(amps, TOL)
    }

    pub fn with_tolerance(amps: Vec<C64>, tol: f64) -> Result<Self> {
        let n = qubits_for_len(amps.len())?;
        let norm = norm_of(&amps);
        if (norm - 1.0).abs() > tol {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { n, amps })
    }

    /// Rescales `amps` to unit norm. Fails on the zero vector.
    pub fn normalized(mut amps: Vec<C64>) -> Result<Self> {
        let n = qubits_for_len(amps.len())?;
        let norm = norm_of(&amps);
        if norm < 1e-300 {
            return Err(Error::NotNormalized { norm });
        }
        for a in amps.iter_mut() {
            *a /= norm;
        }
        Ok(Self { n, amps })
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::new(amps.iter().map(|&x| c(x, 0.0)).collect())
    }

    /// Caller guarantees unit norm and power-of-two length.
    pub(crate) fn from_parts_unchecked(n: usize, amps: Vec<C64>) -> Self {
        debug_assert_eq!(amps.len(), 1usize << n);
        Self { n, amps }
    }

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        let dim = 1usize << n;
        if index >= dim {
            return Err(Error::OutOfRange(format!(
                "basis index {index} for {n} qubits"
            )));
        }
        let mut amps = vec![C64::default(); dim];
        amps[index] = c(1.0, 0.0);
        Ok(Self { n, amps })
    }

    /// `|0...0>`
    pub fn zero(n: usize) -> Self {
        Self::basis(n, 0).expect("index 0 always valid")
    }

    /// Uniform superposition `|s>`.
    pub fn uniform(n: usize) -> Self {
        let dim = 1usize << n;
        let a = 1.0 / (dim as f64).sqrt();
        Self {
            n,
            amps: vec![c(a, 0.0); dim],
        }
    }

    /// Haar-random state from normalized complex Gaussians.
    pub fn haar_random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let dim = 1usize << n;
        let amps: Vec<C64> = (0..dim)
            .map(|_| c(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        Self::normalized(amps).expect("gaussian vector is nonzero almost surely")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn amp(&self, i: usize) -> C64 {
        self.amps[i]
    }

    pub fn into_amps(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        norm_of(&self.amps)
    }

    pub(crate) fn check_same_dim(&self, other: &PureState) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    /// `<self|other>`
    pub fn inner(&self, other: &PureState) -> Result<C64> {
        self.check_same_dim(other)?;
        Ok(inner_unchecked(&self.amps, &other.amps))
    }

    /// `|<self|other>|^2`
    pub fn fidelity(&self, other: &PureState) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// `self ⊗ other`, with `self` as the major factor.
    pub fn tensor(&self, other: &PureState) -> PureState {
        PureState {
            n: self.n + other.n,
            amps: kron(&self.amps, &other.amps),
        }
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix {
            entries: outer(&self.amps, &self.amps),
        }
    }

    /// `-self`, the literal `e^{-i pi}` global phase.
    pub fn negated(&self) -> PureState {
        PureState {
            n: self.n,
            amps: self.amps.iter().map(|a| -a).collect(),
        }
    }
}

pub(crate) fn qubits_for_len(len: usize) -> Result<usize> {
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo { len });
    }
    Ok(len.trailing_zeros() as usize)
}

pub(crate) fn inner_unchecked(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub(crate) fn kron(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

/// `|a><b|`
pub(crate) fn outer(a: &[C64], b: &[C64]) -> DMatrix<C64> {
    DMatrix::from_fn(a.len(), b.len(), |i, j| a[i] * b[j].conj())
}

/// Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: DMatrix<C64>,
}

impl DensityMatrix {
    pub fn new(entries: DMatrix<C64>) -> Result<Self> {
        Self::with_tolerance(entries, TOL)
    }

    pub fn with_tolerance(entries: DMatrix<C64>, tol: f64) -> Result<Self> {
        if !entries.is_square() || entries.nrows() == 0 {
            return Err(Error::InvalidDensity(format!(
                "shape {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let dim = entries.nrows();
        for i in 0..dim {
            for j in i..dim {
                if (entries[(i, j)] - entries[(j, i)].conj()).norm() > tol {
                    return Err(Error::InvalidDensity(format!(
                        "not Hermitian at ({i},{j})"
                    )));
                }
            }
        }
        let tr = entries.trace();
        if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidDensity(format!("trace {tr}")));
        }
        let rho = Self { entries };
        if let Some(min) = rho
            .eigenvalues()
            .into_iter()
            .reduce(f64::min)
            .filter(|&m| m < -tol)
        {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min}")));
        }
        Ok(rho)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            entries: DMatrix::from_diagonal_element(dim, dim, c(1.0 / dim as f64, 0.0)),
        }
    }

    /// Convex combination `sum_k w_k rho_k`.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let (_, first) = parts.first().ok_or(Error::EmptyEnsemble)?;
        let dim = first.dim();
        let mut acc = DMatrix::zeros(dim, dim);
        for (w, rho) in parts {
            if rho.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: rho.dim(),
                });
            }
            acc += rho.entries.map(|z| z * *w);
        }
        Self::new(acc)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.entries)
    }

    /// `tr(rho^2)`
    pub fn purity(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
    }

    /// `tr(self * other)`, the Hilbert-Schmidt overlap.
    pub fn overlap(&self, other: &DensityMatrix) -> Result<f64> {
        check_dims(self, other)?;
        Ok((&self.entries * &other.entries).trace().re)
    }

    /// `<v|rho|v>` for an arbitrary (not necessarily normalized) vector.
    pub fn expectation(&self, v: &[C64]) -> f64 {
        let mut acc = C64::default();
        for i in 0..v.len() {
            for j in 0..v.len() {
                acc += v[i].conj() * self.entries[(i, j)] * v[j];
            }
        }
        acc.re
    }

    /// `U rho U^dagger`
    pub fn conjugate_by(&self, u: &DMatrix<C64>) -> Result<Self> {
        if u.nrows() != self.dim() || u.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.nrows(),
            });
        }
        Ok(Self {
            entries: u * &self.entries * u.adjoint(),
        })
    }

    /// `self ⊗ other`
    pub fn tensor(&self, other: &DensityMatrix) -> Self {
        Self {
            entries: self.entries.kronecker(&other.entries),
        }
    }
}

fn check_dims(a: &DensityMatrix, b: &DensityMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(())
}

/// Haar-random `dim × dim` unitary: QR of a complex Ginibre matrix with the
/// phases of `R`'s diagonal moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DMatrix<C64> {
    let g = DMatrix::from_fn(dim, dim, |_, _| c(rng.sample(StandardNormal), rng.sample(StandardNormal)));
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..dim {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        for z in q.column_mut(j).iter_mut() {
            *z *= ph;
        }
    }
    q
}

pub(crate) fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Vec<f64> {
    SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect()
}

/// Probability-weighted list of pure states sharing one register size.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    members: Vec<(f64, PureState)>,
}

impl Ensemble {
    pub fn new(members: Vec<(f64, PureState)>) -> Result<Self> {
        let first = members.first().ok_or(Error::EmptyEnsemble)?;
        let dim = first.1.dim();
        let mut sum = 0.0;
        for (p, s) in &members {
            if !(-TOL..=1.0 + TOL).contains(p) {
                return Err(Error::BadProbabilities { sum: *p });
            }
            if s.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: s.dim(),
                });
            }
            sum += p;
        }
        if (sum - 1.0).abs() > TOL {
            return Err(Error::BadProbabilities { sum });
        }
        Ok(Self { members })
    }

    /// Equal weights over `states`.
    pub fn uniform(states: Vec<PureState>) -> Result<Self> {
        let w = 1.0 / states.len().max(1) as f64;
        Self::new(states.into_iter().map(|s| (w, s)).collect())
    }

    pub fn members(&self) -> &[(f64, PureState)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.members[0].1.dim()
    }

    /// `sum_i p_i |psi_i><psi_i|`
    pub fn average(&self) -> DensityMatrix {
        let dim = self.dim();
        let mut acc = DMatrix::zeros(dim, dim);
        for (p, s) in &self.members {
            acc += outer(s.amps(), s.amps()).map(|z| z * *p);
        }
        DensityMatrix { entries: acc }
    }
}

/// `½‖a − b‖₁` from the spectrum of the difference.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    check_dims(a, b)?;
    let diff = &a.entries - &b.entries;
    let d = 0.5 * hermitian_eigenvalues(&diff).iter().map(|l| l.abs()).sum::<f64>();
    Ok(d.clamp(0.0, 1.0))
}

/// `√(1 − |<a|b>|²)`, which equals the trace distance for pure inputs.
pub fn pure_trace_distance(a: &PureState, b: &PureState) -> Result<f64> {
    a.check_same_dim(b)?;
    Ok(pure_distance_unchecked(a.amps(), b.amps()))
}

// 1 − |<a|b>| = ‖a − e^{iφ}b‖²/2 once b is phase-aligned to a; this keeps
// full precision for nearly equal states where 1 − F cancels.
pub(crate) fn pure_distance_unchecked(a: &[C64], b: &[C64]) -> f64 {
    let ov = inner_unchecked(b, a);
    let ph = if ov.norm() > 0.0 { ov / ov.norm() } else { c(1.0, 0.0) };
    let h = 0.5 * a.iter().zip(b).map(|(x, y)| (x - y * ph).norm_sqr()).sum::<f64>();
    let h = h.clamp(0.0, 1.0);
    (h * (2.0 - h)).sqrt()
}

/// `(1 − 2|axis><axis|) target`
pub fn householder_apply(axis: &PureState, target: &PureState) -> Result<PureState> {
    let ov = axis.inner(target)?;
    let amps = target
        .amps
        .iter()
        .zip(&axis.amps)
        .map(|(t, a)| t - a * ov * 2.0)
        .collect();
    Ok(PureState::from_parts_unchecked(target.n, amps))
}

/// Which factor of a bipartite system survives a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    A,
    B,
}

fn check_factor(dim: usize, dims: (usize, usize)) -> Result<()> {
    let (dim_a, dim_b) = dims;
    if dim_a == 0 || dim_b == 0 || dim_a * dim_b != dim {
        return Err(Error::NotFactorable { dim, dim_a, dim_b });
    }
    Ok(())
}

/// Reduced state of a joint density matrix on `dim_a × dim_b`.
pub fn partial_trace(joint: &DensityMatrix, dims: (usize, usize), keep: Keep) -> Result<DensityMatrix> {
    check_factor(joint.dim(), dims)?;
    let (da, db) = dims;
    let m = &joint.entries;
    let entries = match keep {
        Keep::A => DMatrix::from_fn(da, da, |a, a2| {
            (0..db).map(|b| m[(a * db + b, a2 * db + b)]).sum()
        }),
        Keep::B => DMatrix::from_fn(db, db, |b, b2| {
            (0..da).map(|a| m[(a * db + b, a * db + b2)]).sum()
        }),
    };
    Ok(DensityMatrix { entries })
}

/// Reduced state of a bipartite pure state on `dim_a × dim_b`.
pub fn partial_trace_pure(joint: &PureState, dims: (usize, usize), keep: Keep) -> Result<DensityMatrix> {
    reduced_from_amps(joint.amps(), dims, keep)
}

pub(crate) fn reduced_from_amps(amps: &[C64], dims: (usize, usize), keep: Keep) -> Result<DensityMatrix> {
    check_factor(amps.len(), dims)?;
    let (da, db) = dims;
    // amplitude matrix M[a, b] = psi[a * db + b]
    let m = DMatrix::from_fn(da, db, |a, b| amps[a * db + b]);
    let entries = match keep {
        Keep::A => &m * m.adjoint(),
        Keep::B => m.transpose() * m.map(|z| z.conj()),
    };
    Ok(DensityMatrix { entries })
}

/// Shannon entropy in bits of an eigenvalue list, clipping tiny values.
pub fn spectrum_entropy(eigenvalues: &[f64], tol: f64) -> Result<f64> {
    let mut s = 0.0;
    for &l in eigenvalues {
        if l < -tol {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {l}")));
        }
        if l > EIGEN_CLIP {
            s -= l * l.log2();
        }
    }
    Ok(s.max(0.0))
}

/// `−Σ λ log₂ λ` in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    spectrum_entropy(&rho.eigenvalues(), TOL)
}

/// Residual between the two ways of evaluating a hypothetical universal
/// reflection `U|χ>|φ> = |χ>(1 − 2|χ><χ|)|φ>` on `|χ>|χ>` with
/// `χ = (ψ+φ)/‖ψ+φ‖`: once by linear extension from the four product
/// inputs `ψψ, ψφ, φψ, φφ`, once directly (`−χχ`). Any such unitary would
/// make this zero, so a positive value witnesses that it cannot exist.
pub fn no_reflection_witness(psi: &PureState, phi: &PureState) -> Result<f64> {
    psi.check_same_dim(phi)?;
    let sum: Vec<C64> = psi.amps.iter().zip(&phi.amps).map(|(a, b)| a + b).collect();
    let s2 = sum.iter().map(|z| z.norm_sqr()).sum::<f64>();
    if s2.sqrt() < 1e-12 {
        return Err(Error::Antipodal);
    }
    let chi = PureState::from_parts_unchecked(psi.n, sum.iter().map(|z| z / s2.sqrt()).collect());

    // target map on a product input: |a>|b> -> |a> R_a |b>
    let apply_target = |ctrl: &PureState, tgt: &PureState| -> Result<Vec<C64>> {
        Ok(kron(ctrl.amps(), householder_apply(ctrl, tgt)?.amps()))
    };

    let mut linear = vec![C64::default(); psi.dim() * psi.dim()];
    for (ctrl, tgt) in [(psi, psi), (psi, phi), (phi, psi), (phi, phi)] {
        for (acc, v) in linear.iter_mut().zip(apply_target(ctrl, tgt)?) {
            *acc += v / s2;
        }
    }
    let direct = apply_target(&chi, &chi)?;
    Ok(linear
        .iter()
        .zip(&direct)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn plus() -> PureState {
        PureState::from_real(&[0.5f64.sqrt(), 0.5f64.sqrt()]).unwrap()
    }

    #[test]
    fn rejects_unnormalized_and_bad_lengths() {
        assert!(matches!(
            PureState::from_real(&[1.0, 1.0]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            PureState::from_real(&[1.0, 0.0, 0.0]),
            Err(Error::NotPowerOfTwo { len: 3 })
        ));
        assert!(PureState::normalized(vec![C64::default(); 2]).is_err());
    }

    #[test]
    fn trace_distance_examples() {
        let z0 = PureState::zero(1).to_density();
        let z1 = PureState::basis(1, 1).unwrap().to_density();
        assert_abs_diff_eq!(trace_distance(&z0, &z0).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(trace_distance(&z0, &z1).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            trace_distance(&z0, &plus().to_density()).unwrap(),
            0.7071067811865476,
            epsilon = 1e-10
        );
    }

    #[test]
    fn trace_distance_dimension_mismatch() {
        let a = PureState::zero(1).to_density();
        let b = PureState::zero(2).to_density();
        assert!(matches!(
            trace_distance(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn householder_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let psi = PureState::haar_random(3, &mut rng);
        let out = householder_apply(&psi, &psi).unwrap();
        for (a, b) in out.amps().iter().zip(psi.amps()) {
            assert_abs_diff_eq!((a + b).norm(), 0.0, epsilon = 1e-12);
        }

        let zero = PureState::zero(2);
        let one = PureState::basis(2, 1).unwrap();
        assert_eq!(householder_apply(&zero, &one).unwrap(), one);

        let out = householder_apply(&PureState::zero(1), &plus()).unwrap();
        let h = 0.5f64.sqrt();
        assert_abs_diff_eq!(out.amp(0).re, -h, epsilon = 1e-12);
        assert_abs_diff_eq!(out.amp(1).re, h, epsilon = 1e-12);
    }

    #[test]
    fn householder_dimension_mismatch() {
        assert!(householder_apply(&PureState::zero(1), &PureState::zero(2)).is_err());
    }

    #[test]
    fn partial_trace_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = PureState::haar_random(1, &mut rng);
        let b = PureState::haar_random(2, &mut rng);
        let joint = a.tensor(&b);
        let ra = partial_trace_pure(&joint, (2, 4), Keep::A).unwrap();
        assert!(trace_distance(&ra, &a.to_density()).unwrap() < 1e-12);
        let rb = partial_trace(&joint.to_density(), (2, 4), Keep::B).unwrap();
        assert!(trace_distance(&rb, &b.to_density()).unwrap() < 1e-12);

        let h = 0.5f64.sqrt();
        let bell = PureState::from_real(&[h, 0.0, 0.0, h]).unwrap();
        let ra = partial_trace_pure(&bell, (2, 2), Keep::A).unwrap();
        assert!(trace_distance(&ra, &DensityMatrix::maximally_mixed(2)).unwrap() < 1e-12);
    }

    #[test]
    fn partial_trace_rejects_bad_factorization() {
        let s = PureState::zero(2);
        assert!(matches!(
            partial_trace_pure(&s, (3, 2), Keep::A),
            Err(Error::NotFactorable { .. })
        ));
    }

    #[test]
    fn entropy_examples() {
        assert_abs_diff_eq!(
            von_neumann_entropy(&plus().to_density()).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            von_neumann_entropy(&DensityMatrix::maximally_mixed(2)).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        let z = PureState::zero(1).to_density();
        let p = plus().to_density();
        let mix = DensityMatrix::mixture(&[(0.5, &z), (0.5, &p)]).unwrap();
        assert_abs_diff_eq!(von_neumann_entropy(&mix).unwrap(), 0.6009, epsilon = 1e-4);
    }

    #[test]
    fn entropy_rejects_negative_spectrum() {
        assert!(spectrum_entropy(&[1.2, -0.2], TOL).is_err());
        let bad = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.2, 0.0), c(-0.2, 0.0)]));
        assert!(DensityMatrix::new(bad).is_err());
    }

    #[test]
    fn witness_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let psi = PureState::haar_random(2, &mut rng);
        assert_abs_diff_eq!(no_reflection_witness(&psi, &psi).unwrap(), 0.0, epsilon = 1e-12);
        let w = no_reflection_witness(&PureState::zero(1), &PureState::basis(1, 1).unwrap()).unwrap();
        assert_abs_diff_eq!(w, std::f64::consts::SQRT_2, epsilon = 1e-12);
        assert!(matches!(
            no_reflection_witness(&psi, &psi.negated()),
            Err(Error::Antipodal)
        ));
    }

    #[test]
    fn ensemble_validation() {
        let z = PureState::zero(1);
        assert!(Ensemble::new(vec![]).is_err());
        assert!(Ensemble::new(vec![(0.4, z.clone()), (0.4, z.clone())]).is_err());
        assert!(Ensemble::new(vec![(0.5, z.clone()), (0.5, PureState::zero(2))]).is_err());
        let e = Ensemble::new(vec![(0.5, z), (0.5, PureState::basis(1, 1).unwrap())]).unwrap();
        assert!(trace_distance(&e.average(), &DensityMatrix::maximally_mixed(2)).unwrap() < 1e-12);
    }
}
