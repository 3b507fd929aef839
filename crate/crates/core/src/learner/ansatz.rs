//! Parameterized circuits `A(θ)` acting on `|0...0>`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{c, PureState, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// One gate position in a layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Slot {
    /// `exp(−iθσ/2)` on one qubit; one parameter.
    Rotation { qubit: usize, axis: Axis },
    /// CNOT; no parameters.
    Entangler { control: usize, target: usize },
    /// Rotation on `target` whose angle is selected by the computational
    /// value of `controls` (`controls[m]` is bit `m` of the selector);
    /// `2^k` parameters for `k` controls.
    UniformlyControlled {
        target: usize,
        controls: Vec<usize>,
        axis: Axis,
    },
}

impl Slot {
    pub fn param_count(&self) -> usize {
        match self {
            Slot::Rotation { .. } => 1,
            Slot::Entangler { .. } => 0,
            Slot::UniformlyControlled { controls, .. } => 1 << controls.len(),
        }
    }

    /// Two-qubit gates in the standard decomposition. A uniformly controlled
    /// rotation with `k ≥ 1` controls compiles to `2^k` CNOTs.
    pub fn two_qubit_gates(&self) -> u64 {
        match self {
            Slot::Rotation { .. } => 0,
            Slot::Entangler { .. } => 1,
            Slot::UniformlyControlled { controls, .. } if controls.is_empty() => 0,
            Slot::UniformlyControlled { controls, .. } => 1 << controls.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnsatzLayout {
    n: usize,
    layers: usize,
    placements: Vec<Slot>,
}

impl AnsatzLayout {
    pub fn new(n: usize, layers: usize, placements: Vec<Slot>) -> Result<Self> {
        for slot in &placements {
            let qubits: Vec<usize> = match slot {
                Slot::Rotation { qubit, .. } => vec![*qubit],
                Slot::Entangler { control, target } => {
                    if control == target {
                        return Err(Error::InvalidLayout(format!(
                            "entangler control == target == {control}"
                        )));
                    }
                    vec![*control, *target]
                }
                Slot::UniformlyControlled { target, controls, .. } => {
                    if controls.contains(target) {
                        return Err(Error::InvalidLayout(format!(
                            "target {target} listed among its controls"
                        )));
                    }
                    let mut qs = controls.clone();
                    qs.push(*target);
                    qs
                }
            };
            if let Some(q) = qubits.iter().find(|&&q| q >= n) {
                return Err(Error::InvalidLayout(format!("qubit {q} >= n = {n}")));
            }
        }
        Ok(Self { n, layers, placements })
    }

    pub fn empty(n: usize) -> Self {
        Self { n, layers: 0, placements: Vec::new() }
    }

    /// One rotation per (qubit, axis); no entanglers.
    pub fn rotations_only(n: usize, axes: &[Axis]) -> Self {
        let placements = (0..n)
            .flat_map(|q| axes.iter().map(move |&axis| Slot::Rotation { qubit: q, axis }))
            .collect();
        Self { n, layers: 1, placements }
    }

    /// `layers × (Ry, Rz on every qubit, then a CNOT ring)`, closed by a final
    /// rotation block. Ring: none for one qubit, a single CNOT for two.
    pub fn hardware_efficient(n: usize, layers: usize) -> Self {
        let mut placements = Vec::new();
        let rot_block = |p: &mut Vec<Slot>| {
            for q in 0..n {
                p.push(Slot::Rotation { qubit: q, axis: Axis::Y });
                p.push(Slot::Rotation { qubit: q, axis: Axis::Z });
            }
        };
        for _ in 0..layers {
            rot_block(&mut placements);
            placements.extend(ring(n));
        }
        rot_block(&mut placements);
        Self { n, layers, placements }
    }

    /// Hardware-efficient layout with enough parameters to cover the
    /// `2(2^n − 1)`-dimensional pure-state manifold.
    pub fn state_universal(n: usize) -> Self {
        let needed = 2 * ((1usize << n) - 1);
        let mut layers = 1;
        while Self::hardware_efficient(n, layers).param_count() < needed {
            layers += 1;
        }
        Self::hardware_efficient(n, layers)
    }

    /// Cascade of uniformly controlled `Ry` then `Rz` rotations, which
    /// prepares any `n`-qubit state exactly (see [`exact_preparation_params`]).
    pub fn exact_preparation(n: usize) -> Self {
        let mut placements = Vec::new();
        for axis in [Axis::Y, Axis::Z] {
            for j in 0..n {
                placements.push(Slot::UniformlyControlled {
                    target: n - 1 - j,
                    controls: (n - j..n).collect(),
                    axis,
                });
            }
        }
        Self { n, layers: 1, placements }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn layers(&self) -> usize {
        self.layers
    }

    pub fn placements(&self) -> &[Slot] {
        &self.placements
    }

    pub fn param_count(&self) -> usize {
        self.placements.iter().map(Slot::param_count).sum()
    }
}

fn ring(n: usize) -> Vec<Slot> {
    match n {
        0 | 1 => Vec::new(),
        2 => vec![Slot::Entangler { control: 0, target: 1 }],
        _ => (0..n)
            .map(|q| Slot::Entangler { control: q, target: (q + 1) % n })
            .collect(),
    }
}

/// Angles in radians, one per parameter of the paired layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnsatzParams(pub Vec<f64>);

impl AnsatzParams {
    pub fn zeros(layout: &AnsatzLayout) -> Self {
        Self(vec![0.0; layout.param_count()])
    }

    pub fn theta(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Number of two-qubit gates `G` (single-qubit gates are free).
pub fn gate_complexity(layout: &AnsatzLayout) -> u64 {
    layout.placements.iter().map(Slot::two_qubit_gates).sum()
}

fn rotation(axis: Axis, theta: f64) -> [[C64; 2]; 2] {
    let (s, co) = (theta / 2.0).sin_cos();
    match axis {
        Axis::X => [[c(co, 0.0), c(0.0, -s)], [c(0.0, -s), c(co, 0.0)]],
        Axis::Y => [[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]],
        Axis::Z => [[c(co, -s), C64::default()], [C64::default(), c(co, s)]],
    }
}

fn apply_1q(amps: &mut [C64], qubit: usize, m: &[[C64; 2]; 2]) {
    let bit = 1usize << qubit;
    for i in 0..amps.len() {
        if i & bit == 0 {
            let (a, b) = (amps[i], amps[i | bit]);
            amps[i] = m[0][0] * a + m[0][1] * b;
            amps[i | bit] = m[1][0] * a + m[1][1] * b;
        }
    }
}

fn apply_cnot(amps: &mut [C64], control: usize, target: usize) {
    let (cb, tb) = (1usize << control, 1usize << target);
    for i in 0..amps.len() {
        if i & cb != 0 && i & tb == 0 {
            amps.swap(i, i | tb);
        }
    }
}

fn apply_uniformly_controlled(amps: &mut [C64], target: usize, controls: &[usize], axis: Axis, angles: &[f64]) {
    let tb = 1usize << target;
    let gates: Vec<_> = angles.iter().map(|&t| rotation(axis, t)).collect();
    for i in 0..amps.len() {
        if i & tb == 0 {
            let k = controls
                .iter()
                .enumerate()
                .fold(0usize, |acc, (m, &q)| acc | (((i >> q) & 1) << m));
            let g = &gates[k];
            let (a, b) = (amps[i], amps[i | tb]);
            amps[i] = g[0][0] * a + g[0][1] * b;
            amps[i | tb] = g[1][0] * a + g[1][1] * b;
        }
    }
}

fn check_params(layout: &AnsatzLayout, params: &AnsatzParams) -> Result<()> {
    if params.len() != layout.param_count() {
        return Err(Error::ParamCount {
            expected: layout.param_count(),
            found: params.len(),
        });
    }
    Ok(())
}

/// Applies `A(θ)` (or `A(θ)†` when `adjoint`) to `state`.
pub fn apply_circuit(layout: &AnsatzLayout, params: &AnsatzParams, state: &PureState, adjoint: bool) -> Result<PureState> {
    check_params(layout, params)?;
    if state.n() != layout.n {
        return Err(Error::DimensionMismatch {
            expected: 1 << layout.n,
            found: state.dim(),
        });
    }
    // parameter offset of every slot, so the adjoint can walk backwards
    let mut offsets = Vec::with_capacity(layout.placements.len());
    let mut off = 0;
    for slot in &layout.placements {
        offsets.push(off);
        off += slot.param_count();
    }
    let sign = if adjoint { -1.0 } else { 1.0 };
    let mut amps = state.amps().to_vec();
    let mut run = |idx: usize| {
        let slot = &layout.placements[idx];
        let p = &params.0[offsets[idx]..offsets[idx] + slot.param_count()];
        match slot {
            Slot::Rotation { qubit, axis } => apply_1q(&mut amps, *qubit, &rotation(*axis, sign * p[0])),
            Slot::Entangler { control, target } => apply_cnot(&mut amps, *control, *target),
            Slot::UniformlyControlled { target, controls, axis } => {
                let angles: Vec<f64> = p.iter().map(|t| sign * t).collect();
                apply_uniformly_controlled(&mut amps, *target, controls, *axis, &angles);
            }
        }
    };
    if adjoint {
        (0..layout.placements.len()).rev().for_each(&mut run);
    } else {
        (0..layout.placements.len()).for_each(&mut run);
    }
    Ok(PureState::from_parts_unchecked(layout.n, amps))
}

/// `A(θ)|0...0>`
pub fn prepare(layout: &AnsatzLayout, params: &AnsatzParams) -> Result<PureState> {
    apply_circuit(layout, params, &PureState::zero(layout.n), false)
}

/// `A(θ) R₀ A(θ)† |target>` with `R₀ = 1 − 2|0...0><0...0|`.
pub fn synthesized_reflection_apply(layout: &AnsatzLayout, params: &AnsatzParams, target: &PureState) -> Result<PureState> {
    let pulled = apply_circuit(layout, params, target, true)?;
    let mut amps = pulled.into_amps();
    amps[0] = -amps[0];
    apply_circuit(layout, params, &PureState::from_parts_unchecked(layout.n, amps), false)
}

/// Angles for [`AnsatzLayout::exact_preparation`] reproducing `psi` up to a
/// global phase.
pub fn exact_preparation_params(psi: &PureState) -> AnsatzParams {
    let n = psi.n();
    let amps = psi.amps();
    let mut theta = Vec::with_capacity(2 * ((1usize << n) - 1));

    // magnitudes: step j splits each block of the j already-fixed high bits
    for j in 0..n {
        let half = 1usize << (n - j - 1);
        for k in 0..(1usize << j) {
            let base = k << (n - j);
            let w0: f64 = (base..base + half).map(|x| amps[x].norm_sqr()).sum::<f64>().sqrt();
            let w1: f64 = (base + half..base + 2 * half).map(|x| amps[x].norm_sqr()).sum::<f64>().sqrt();
            theta.push(2.0 * w1.atan2(w0));
        }
    }

    // phases: peel off the differences bit by bit, lowest qubit first
    let mut levels: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut phase: Vec<f64> = amps.iter().map(|a| a.arg()).collect();
    for _ in 0..n {
        let diffs: Vec<f64> = phase.chunks(2).map(|p| p[1] - p[0]).collect();
        phase = phase.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect();
        levels.push(diffs);
    }
    // levels[i] drives the rotation on qubit i, which is cascade step n-1-i
    for j in 0..n {
        theta.extend_from_slice(&levels[n - 1 - j]);
    }
    AnsatzParams(theta)
}
