//! Hartree-Fock reference circuits and the UCCSD ansatz.
//!
//! Spin orbitals use the blocked ordering of [`crate::chemistry`]: alpha modes
//! first, then beta. Mode `n` is qubit `n`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{invalid_arg, Result};
use crate::fermion::{jordan_wigner, FermionOperator, FermionTerm, LadderOp};
use crate::pauli::{PauliLetter, PauliString};
use crate::statevector::{Circuit, Gate, ParamSlot};

fn check_counts(n_modes: usize, n_electrons: usize) -> Result<()> {
    if n_modes % 2 != 0 {
        return Err(invalid_arg(format!("{n_modes} spin orbitals is not an even count")));
    }
    if n_electrons > n_modes || n_electrons % 2 != 0 {
        return Err(invalid_arg(format!(
            "{n_electrons} electrons cannot close-shell fill {n_modes} spin orbitals"
        )));
    }
    Ok(())
}

/// Modes occupied in the closed-shell reference, ascending.
pub fn occupied_modes(n_modes: usize, n_electrons: usize) -> Vec<usize> {
    let n_spatial = n_modes / 2;
    let n_occ = n_electrons / 2;
    (0..n_occ).chain(n_spatial..n_spatial + n_occ).collect()
}

fn virtual_modes(n_modes: usize, n_electrons: usize) -> Vec<usize> {
    let occ = occupied_modes(n_modes, n_electrons);
    (0..n_modes).filter(|m| !occ.contains(m)).collect()
}

/// X on every occupied spin orbital.
pub fn hartree_fock_circuit(n_modes: usize, n_electrons: usize) -> Result<Circuit> {
    check_counts(n_modes, n_electrons)?;
    let mut circuit = Circuit::new(n_modes);
    for q in occupied_modes(n_modes, n_electrons) {
        circuit.push(Gate::X(q))?;
    }
    Ok(circuit)
}

pub type SingleExcitation = (usize, usize);
pub type DoubleExcitation = ((usize, usize), (usize, usize));

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExcitationList {
    /// `(occupied, virtual)`
    pub singles: Vec<SingleExcitation>,
    /// `((occupied pair), (virtual pair))`, pairs ascending
    pub doubles: Vec<DoubleExcitation>,
}

impl ExcitationList {
    pub fn len(&self) -> usize {
        self.singles.len() + self.doubles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// All spin-conserving singles and doubles out of the reference.
pub fn uccsd_excitations(n_modes: usize, n_electrons: usize) -> Result<ExcitationList> {
    check_counts(n_modes, n_electrons)?;
    let n_spatial = n_modes / 2;
    let is_alpha = |m: usize| m < n_spatial;
    let occ = occupied_modes(n_modes, n_electrons);
    let virt = virtual_modes(n_modes, n_electrons);

    let mut singles = Vec::new();
    for alpha in [true, false] {
        for &i in occ.iter().filter(|&&m| is_alpha(m) == alpha) {
            for &a in virt.iter().filter(|&&m| is_alpha(m) == alpha) {
                singles.push((i, a));
            }
        }
    }

    let pairs = |modes: &[usize]| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (k, &p) in modes.iter().enumerate() {
            for &q in &modes[k + 1..] {
                out.push((p, q));
            }
        }
        out
    };
    let alpha_count = |(p, q): (usize, usize)| is_alpha(p) as u8 + is_alpha(q) as u8;
    let mut doubles = Vec::new();
    for occ_pair in pairs(&occ) {
        for virt_pair in pairs(&virt) {
            if alpha_count(occ_pair) == alpha_count(virt_pair) {
                doubles.push((occ_pair, virt_pair));
            }
        }
    }
    Ok(ExcitationList { singles, doubles })
}

/// Anti-Hermitian `T - T+` for a single `i -> a`.
pub fn single_generator(n_modes: usize, (i, a): SingleExcitation) -> Result<FermionOperator> {
    let t = FermionOperator::from_terms(
        n_modes,
        vec![FermionTerm::new(1.0, vec![LadderOp::create(a), LadderOp::annihilate(i)])],
    )?;
    t.add(&t.hermitian_conjugate().scale(-1.0))
}

/// Anti-Hermitian `T - T+` for a double `(i, j) -> (a, b)`.
pub fn double_generator(n_modes: usize, ((i, j), (a, b)): DoubleExcitation) -> Result<FermionOperator> {
    let t = FermionOperator::from_terms(
        n_modes,
        vec![FermionTerm::new(
            1.0,
            vec![LadderOp::create(a), LadderOp::create(b), LadderOp::annihilate(j), LadderOp::annihilate(i)],
        )],
    )?;
    t.add(&t.hermitian_conjugate().scale(-1.0))
}

/// One Trotter step of `prod_k exp(t_k (T_k - T_k+))`, one parameter per
/// excitation. The mapped generator `sum_j i c_j P_j` becomes rotations
/// `exp(-i (-2 c_j t)/2 P_j)` in canonical Pauli order.
pub fn build_uccsd_circuit(ex: &ExcitationList, n_modes: usize) -> Result<Circuit> {
    let mut circuit = Circuit::new(n_modes);
    let generators = ex
        .singles
        .iter()
        .map(|&s| single_generator(n_modes, s))
        .chain(ex.doubles.iter().map(|&d| double_generator(n_modes, d)));
    for (param, generator) in generators.enumerate() {
        let mapped = jordan_wigner(&generator?)?;
        for (coeff, pauli) in mapped.terms() {
            if coeff.re.abs() > 1e-12 {
                return Err(invalid_arg("excitation generator is not anti-Hermitian"));
            }
            if pauli.is_identity() {
                continue;
            }
            let gate = Gate::PauliRotation { axis: *pauli, angle: crate::statevector::Angle::Unbound };
            circuit.push_parameterized(gate, param, -2.0 * coeff.im)?;
        }
    }
    circuit.set_n_params(ex.len());
    Ok(circuit)
}

/// Warnings raised while lowering, e.g. dropped global-phase rotations.
#[derive(Clone, Debug, PartialEq)]
pub struct LoweringWarning {
    pub gate_index: usize,
    pub message: String,
}

/// Rewrites every `PauliRotation` into `{H, Rx, Rz, CNOT}`: basis change onto Z,
/// a CNOT parity ladder into the highest support qubit, `Rz`, then the mirror.
pub fn lower_pauli_rotations(circuit: &Circuit) -> Result<(Circuit, Vec<LoweringWarning>)> {
    let n = circuit.n_qubits();
    let mut gates = Vec::new();
    let mut slots = Vec::new();
    let mut warnings = Vec::new();

    for (index, gate) in circuit.gates().iter().enumerate() {
        let slot = circuit.parameter_slots().iter().find(|s| s.gate == index).copied();
        let Gate::PauliRotation { axis, angle } = gate else {
            if let Some(s) = slot {
                slots.push(ParamSlot { gate: gates.len(), ..s });
            }
            gates.push(gate.clone());
            continue;
        };
        if axis.is_identity() {
            warnings.push(LoweringWarning {
                gate_index: index,
                message: "identity rotation is a global phase and was dropped".into(),
            });
            continue;
        }
        let support = axis.support();
        let (before, after) = basis_change_pair(axis);
        gates.extend(before.iter().cloned());
        for pair in support.windows(2) {
            gates.push(Gate::cnot(pair[0], pair[1]));
        }
        let top = *support.last().expect("non-identity string has support");
        if let Some(s) = slot {
            slots.push(ParamSlot { gate: gates.len(), ..s });
        }
        gates.push(Gate::Rz { target: top, angle: *angle });
        for pair in support.windows(2).rev() {
            gates.push(Gate::cnot(pair[0], pair[1]));
        }
        gates.extend(after.iter().cloned());
    }
    Ok((Circuit::from_parts(n, gates, slots, circuit.n_params()), warnings))
}

fn basis_change_pair(axis: &PauliString) -> (Vec<Gate>, Vec<Gate>) {
    let mut before = Vec::new();
    let mut after = Vec::new();
    for q in axis.support() {
        match axis.letter(q) {
            PauliLetter::X => {
                before.push(Gate::H(q));
                after.push(Gate::H(q));
            }
            PauliLetter::Y => {
                before.push(Gate::rx(q, FRAC_PI_2));
                after.push(Gate::rx(q, -FRAC_PI_2));
            }
            _ => {}
        }
    }
    (before, after)
}
