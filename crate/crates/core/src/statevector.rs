//! Dense statevector simulation.
//!
//! Qubit `k` contributes bit `k` of the basis index (little-endian). Bitstrings
//! are written most-significant qubit first, so `|10>` is index 2.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid_arg, Error, Result};
use crate::pauli::PauliString;

pub const MAX_QUBITS: usize = 24;

const NORM_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl Statevector {
    /// The all-zeros state `|0...0>`.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        check_width(n_qubits)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amplitudes })
    }

    /// Wraps raw amplitudes; length must be a power of two and the norm one.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(invalid_arg(format!("amplitude count {len} is not a power of two")));
        }
        let n_qubits = len.trailing_zeros() as usize;
        check_width(n_qubits)?;
        let state = Self { n_qubits, amplitudes };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(invalid_arg(format!("state norm {norm} is not 1")));
        }
        Ok(state)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn inner(&self, other: &Statevector) -> Complex64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    /// `|<self|other>|^2`
    pub fn fidelity(&self, other: &Statevector) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Equality up to a global phase.
    pub fn approx_eq_up_to_phase(&self, other: &Statevector, tol: f64) -> bool {
        if self.n_qubits != other.n_qubits {
            return false;
        }
        let overlap = self.inner(other);
        if overlap.norm() < 1e-300 {
            return false;
        }
        let phase = overlap / overlap.norm();
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .all(|(a, b)| (a * phase - b).norm() <= tol)
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.check_qubits(self.n_qubits)?;
        match gate {
            Gate::Cnot { control, target } => {
                let (cbit, tbit) = (1usize << control, 1usize << target);
                for i in 0..self.amplitudes.len() {
                    if i & cbit != 0 && i & tbit == 0 {
                        self.amplitudes.swap(i, i | tbit);
                    }
                }
            }
            Gate::PauliRotation { axis, angle } => {
                let theta = angle.value()?;
                let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
                let p_psi = axis.apply(&self.amplitudes);
                let minus_i_s = Complex64::new(0.0, -s);
                for (a, pa) in self.amplitudes.iter_mut().zip(p_psi) {
                    *a = *a * c + minus_i_s * pa;
                }
            }
            _ => {
                let target = gate.qubits()[0];
                let m = gate.single_qubit_matrix()?;
                self.apply_single(target, &m);
            }
        }
        Ok(())
    }

    fn apply_single(&mut self, target: usize, m: &[[Complex64; 2]; 2]) {
        let stride = 1usize << target;
        let dim = self.amplitudes.len();
        let mut base = 0;
        while base < dim {
            for i in base..base + stride {
                let a0 = self.amplitudes[i];
                let a1 = self.amplitudes[i + stride];
                self.amplitudes[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amplitudes[i + stride] = m[1][0] * a0 + m[1][1] * a1;
            }
            base += 2 * stride;
        }
    }

    /// Polar and azimuthal Bloch-sphere angles of a single-qubit state.
    pub fn bloch_angles(&self) -> Result<(f64, f64)> {
        if self.n_qubits != 1 {
            return Err(invalid_arg("Bloch angles are defined for one qubit only"));
        }
        let (alpha, beta) = (self.amplitudes[0], self.amplitudes[1]);
        let theta = 2.0 * beta.norm().atan2(alpha.norm());
        if alpha.norm() < 1e-12 || beta.norm() < 1e-12 {
            return Ok((theta, 0.0));
        }
        let phi = (beta.arg() - alpha.arg()).rem_euclid(2.0 * PI);
        // rem_euclid can round up to exactly 2π
        let phi = if phi >= 2.0 * PI { 0.0 } else { phi };
        Ok((theta, phi))
    }

    /// Draws `shots` computational-basis outcomes; keys are bitstrings,
    /// most-significant qubit first.
    pub fn sample_measurements(&self, shots: usize, seed: u64) -> Result<BTreeMap<String, usize>> {
        if shots == 0 {
            return Err(invalid_arg("shots must be at least 1"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sampler = OutcomeSampler::new(&self.probabilities());
        let mut counts = BTreeMap::new();
        for _ in 0..shots {
            let idx = sampler.draw(&mut rng);
            *counts.entry(format_bits(idx, self.n_qubits)).or_insert(0) += 1;
        }
        Ok(counts)
    }
}

fn check_width(n_qubits: usize) -> Result<()> {
    if n_qubits > MAX_QUBITS {
        return Err(Error::ResourceLimit(format!(
            "{n_qubits} qubits exceeds the {MAX_QUBITS}-qubit limit"
        )));
    }
    Ok(())
}

/// Basis state from a bitstring written most-significant qubit first.
pub fn init_basis_state(n_qubits: usize, bits: &[u8]) -> Result<Statevector> {
    if bits.len() != n_qubits {
        return Err(invalid_arg(format!(
            "bitstring has {} bits for {n_qubits} qubits",
            bits.len()
        )));
    }
    let mut index = 0usize;
    for &b in bits {
        if b > 1 {
            return Err(invalid_arg(format!("bit value {b} is not 0 or 1")));
        }
        index = (index << 1) | b as usize;
    }
    let mut state = Statevector::zero(n_qubits)?;
    state.amplitudes[0] = Complex64::new(0.0, 0.0);
    state.amplitudes[index] = Complex64::new(1.0, 0.0);
    Ok(state)
}

pub fn format_bits(index: usize, n_qubits: usize) -> String {
    (0..n_qubits).rev().map(|k| if index >> k & 1 == 1 { '1' } else { '0' }).collect()
}

/// Inverse-CDF sampler over a discrete distribution.
pub(crate) struct OutcomeSampler {
    cumulative: Vec<f64>,
}

impl OutcomeSampler {
    pub(crate) fn new(probabilities: &[f64]) -> Self {
        let mut acc = 0.0;
        let cumulative = probabilities
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        Self { cumulative }
    }

    pub(crate) fn draw(&self, rng: &mut impl Rng) -> usize {
        let total = *self.cumulative.last().unwrap_or(&1.0);
        let u = rng.gen::<f64>() * total;
        let idx = self.cumulative.partition_point(|&c| c <= u);
        idx.min(self.cumulative.len() - 1)
    }
}

/// Rotation angle of a gate; parameterized gates start unbound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Angle {
    Value(f64),
    Unbound,
}

impl Angle {
    pub fn value(self) -> Result<f64> {
        match self {
            Angle::Value(v) => Ok(v),
            Angle::Unbound => Err(Error::InvalidState("gate angle is not bound".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    I(usize),
    X(usize),
    Y(usize),
    Z(usize),
    H(usize),
    S(usize),
    T(usize),
    Rx { target: usize, angle: Angle },
    Ry { target: usize, angle: Angle },
    Rz { target: usize, angle: Angle },
    Cnot { control: usize, target: usize },
    /// `exp(-i angle/2 * axis)`
    PauliRotation { axis: PauliString, angle: Angle },
}

impl Gate {
    pub fn rx(target: usize, theta: f64) -> Self {
        Gate::Rx { target, angle: Angle::Value(theta) }
    }

    pub fn ry(target: usize, theta: f64) -> Self {
        Gate::Ry { target, angle: Angle::Value(theta) }
    }

    pub fn rz(target: usize, theta: f64) -> Self {
        Gate::Rz { target, angle: Angle::Value(theta) }
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Cnot { control, target }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::I(_) => "i",
            Gate::X(_) => "x",
            Gate::Y(_) => "y",
            Gate::Z(_) => "z",
            Gate::H(_) => "h",
            Gate::S(_) => "s",
            Gate::T(_) => "t",
            Gate::Rx { .. } => "rx",
            Gate::Ry { .. } => "ry",
            Gate::Rz { .. } => "rz",
            Gate::Cnot { .. } => "cnot",
            Gate::PauliRotation { .. } => "pauli_rotation",
        }
    }

    /// Qubits touched by the gate; for CNOT the control comes first.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::I(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) | Gate::H(q) | Gate::S(q) | Gate::T(q) => {
                vec![*q]
            }
            Gate::Rx { target, .. } | Gate::Ry { target, .. } | Gate::Rz { target, .. } => vec![*target],
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::PauliRotation { axis, .. } => axis.support(),
        }
    }

    pub fn angle(&self) -> Option<Angle> {
        match self {
            Gate::Rx { angle, .. }
            | Gate::Ry { angle, .. }
            | Gate::Rz { angle, .. }
            | Gate::PauliRotation { angle, .. } => Some(*angle),
            _ => None,
        }
    }

    pub fn angle_mut(&mut self) -> Option<&mut Angle> {
        match self {
            Gate::Rx { angle, .. }
            | Gate::Ry { angle, .. }
            | Gate::Rz { angle, .. }
            | Gate::PauliRotation { angle, .. } => Some(angle),
            _ => None,
        }
    }

    pub fn is_parameterizable(&self) -> bool {
        self.angle().is_some()
    }

    pub(crate) fn check_qubits(&self, n_qubits: usize) -> Result<()> {
        if let Gate::PauliRotation { axis, .. } = self {
            if axis.n_qubits() != n_qubits {
                return Err(invalid_arg(format!(
                    "rotation axis acts on {} qubits, register has {n_qubits}",
                    axis.n_qubits()
                )));
            }
            return Ok(());
        }
        let qubits = self.qubits();
        if let Some(&q) = qubits.iter().find(|&&q| q >= n_qubits) {
            return Err(invalid_arg(format!("qubit {q} out of range for {n_qubits} qubits")));
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(invalid_arg("control and target must differ"));
        }
        Ok(())
    }

    /// 2x2 unitary of a single-qubit gate.
    pub fn single_qubit_matrix(&self) -> Result<[[Complex64; 2]; 2]> {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let (o, l) = (c(0.0, 0.0), c(1.0, 0.0));
        let m = match self {
            Gate::I(_) => [[l, o], [o, l]],
            Gate::X(_) => [[o, l], [l, o]],
            Gate::Y(_) => [[o, c(0.0, -1.0)], [c(0.0, 1.0), o]],
            Gate::Z(_) => [[l, o], [o, c(-1.0, 0.0)]],
            Gate::H(_) => {
                let h = c(FRAC_1_SQRT_2, 0.0);
                [[h, h], [h, -h]]
            }
            Gate::S(_) => [[l, o], [o, c(0.0, 1.0)]],
            Gate::T(_) => [[l, o], [o, Complex64::from_polar(1.0, PI / 4.0)]],
            Gate::Rx { angle, .. } => {
                let t = angle.value()? / 2.0;
                [[c(t.cos(), 0.0), c(0.0, -t.sin())], [c(0.0, -t.sin()), c(t.cos(), 0.0)]]
            }
            Gate::Ry { angle, .. } => {
                let t = angle.value()? / 2.0;
                [[c(t.cos(), 0.0), c(-t.sin(), 0.0)], [c(t.sin(), 0.0), c(t.cos(), 0.0)]]
            }
            Gate::Rz { angle, .. } => {
                let t = angle.value()? / 2.0;
                [[Complex64::from_polar(1.0, -t), o], [o, Complex64::from_polar(1.0, t)]]
            }
            Gate::Cnot { .. } | Gate::PauliRotation { .. } => {
                return Err(invalid_arg(format!("{} is not a single-qubit gate", self.name())))
            }
        };
        Ok(m)
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Cnot { control, target } => write!(f, "cnot {control} {target}"),
            Gate::PauliRotation { axis, angle } => match angle {
                Angle::Value(v) => write!(f, "pauli_rotation {axis} {v}"),
                Angle::Unbound => write!(f, "pauli_rotation {axis} ?"),
            },
            g => {
                let q = g.qubits()[0];
                match g.angle() {
                    Some(Angle::Value(v)) => write!(f, "{} {q} {v}", g.name()),
                    Some(Angle::Unbound) => write!(f, "{} {q} ?", g.name()),
                    None => write!(f, "{} {q}", g.name()),
                }
            }
        }
    }
}

/// Binds gate `gate`'s angle to `scale * params[param]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamSlot {
    pub gate: usize,
    pub param: usize,
    pub scale: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
    slots: Vec<ParamSlot>,
    n_params: usize,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Self { n_qubits, gates: Vec::new(), slots: Vec::new(), n_params: 0 }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn parameter_slots(&self) -> &[ParamSlot] {
        &self.slots
    }

    /// Number of free parameters the circuit expects.
    pub fn n_params(&self) -> usize {
        self.n_params
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        gate.check_qubits(self.n_qubits)?;
        self.gates.push(gate);
        Ok(self)
    }

    /// Adds a rotation whose angle is `scale * params[param]` at run time.
    pub fn push_parameterized(&mut self, mut gate: Gate, param: usize, scale: f64) -> Result<&mut Self> {
        gate.check_qubits(self.n_qubits)?;
        match gate.angle_mut() {
            Some(angle) => *angle = Angle::Unbound,
            None => return Err(invalid_arg(format!("{} takes no angle", gate.name()))),
        }
        self.slots.push(ParamSlot { gate: self.gates.len(), param, scale });
        self.gates.push(gate);
        self.n_params = self.n_params.max(param + 1);
        Ok(self)
    }

    /// Reserves parameter ids up to `n` even if some are not attached to gates.
    pub fn set_n_params(&mut self, n: usize) {
        self.n_params = self.n_params.max(n);
    }

    /// Concatenates `other` after `self`; its parameter ids are shifted past ours.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit> {
        if self.n_qubits != other.n_qubits {
            return Err(invalid_arg("cannot compose circuits of different widths"));
        }
        let mut out = self.clone();
        let offset_gate = self.gates.len();
        out.gates.extend(other.gates.iter().cloned());
        out.slots.extend(other.slots.iter().map(|s| ParamSlot {
            gate: s.gate + offset_gate,
            param: s.param + self.n_params,
            scale: s.scale,
        }));
        out.n_params = self.n_params + other.n_params;
        Ok(out)
    }

    pub fn bind(&self, params: &[f64]) -> Result<Circuit> {
        if params.len() != self.n_params {
            return Err(invalid_arg(format!(
                "circuit takes {} parameters, got {}",
                self.n_params,
                params.len()
            )));
        }
        let mut gates = self.gates.clone();
        for slot in &self.slots {
            let angle = gates[slot.gate].angle_mut().expect("slot on a rotation gate");
            *angle = Angle::Value(slot.scale * params[slot.param]);
        }
        Ok(Circuit { n_qubits: self.n_qubits, gates, slots: Vec::new(), n_params: 0 })
    }

    pub fn is_bound(&self) -> bool {
        self.slots.is_empty() && self.gates.iter().all(|g| g.angle() != Some(Angle::Unbound))
    }

    /// Applies the gates in order to `state` without binding.
    pub fn apply_to(&self, state: &mut Statevector) -> Result<()> {
        if state.n_qubits() != self.n_qubits {
            return Err(invalid_arg(format!(
                "circuit has {} qubits, state has {}",
                self.n_qubits,
                state.n_qubits()
            )));
        }
        self.gates.iter().try_for_each(|g| state.apply(g))
    }

    pub fn run(&self, initial: &Statevector, params: &[f64]) -> Result<Statevector> {
        let bound = self.bind(params)?;
        let mut state = initial.clone();
        bound.apply_to(&mut state)?;
        Ok(state)
    }

    pub(crate) fn gates_mut(&mut self) -> &mut [Gate] {
        &mut self.gates
    }

    pub(crate) fn from_parts(n_qubits: usize, gates: Vec<Gate>, slots: Vec<ParamSlot>, n_params: usize) -> Self {
        Self { n_qubits, gates, slots, n_params }
    }
}

pub fn apply_gate(state: &Statevector, gate: &Gate) -> Result<Statevector> {
    let mut out = state.clone();
    out.apply(gate)?;
    Ok(out)
}

pub fn run_circuit(circuit: &Circuit, initial: &Statevector, params: &[f64]) -> Result<Statevector> {
    circuit.run(initial, params)
}
