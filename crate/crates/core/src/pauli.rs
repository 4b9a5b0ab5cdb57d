//! Pauli strings as `(x, z)` bitmasks and weighted sums of them.
//!
//! Qubit `k` carries `I`, `X`, `Z`, `Y` for `(x_k, z_k)` = `(0,0)`, `(1,0)`,
//! `(0,1)`, `(1,1)`. With `ny = popcount(x & z)` the operator is
//! `i^ny * X^x * Z^z`, which gives `P|b> = i^ny (-1)^popcount(z & b) |b ^ x>`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid_arg, Error, Result};
use crate::linalg;
use crate::statevector::{Circuit, Gate, OutcomeSampler, Statevector};

/// Coefficients below this magnitude are dropped after every arithmetic step.
pub const PRUNE_TOL: f64 = 1e-12;

/// Largest register for which dense matrices are built.
pub const MAX_DENSE_QUBITS: usize = 12;

const MAX_PAULI_QUBITS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    fn bits(self) -> (bool, bool) {
        match self {
            PauliLetter::I => (false, false),
            PauliLetter::X => (true, false),
            PauliLetter::Z => (false, true),
            PauliLetter::Y => (true, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliLetter::I,
            (true, false) => PauliLetter::X,
            (false, true) => PauliLetter::Z,
            (true, true) => PauliLetter::Y,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(PauliLetter::I),
            'X' => Some(PauliLetter::X),
            'Y' => Some(PauliLetter::Y),
            'Z' => Some(PauliLetter::Z),
            _ => None,
        }
    }
}

/// Phase factor `i^k` produced by multiplying Pauli strings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    PlusOne,
    PlusI,
    MinusOne,
    MinusI,
}

impl Phase {
    fn from_power(k: u32) -> Self {
        match k % 4 {
            0 => Phase::PlusOne,
            1 => Phase::PlusI,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    pub fn power(self) -> u32 {
        match self {
            Phase::PlusOne => 0,
            Phase::PlusI => 1,
            Phase::MinusOne => 2,
            Phase::MinusI => 3,
        }
    }

    pub fn to_complex(self) -> Complex64 {
        i_pow(self.power())
    }
}

fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    n_qubits: usize,
    x: u64,
    z: u64,
}

impl PauliString {
    pub fn new(n_qubits: usize, x_mask: u64, z_mask: u64) -> Result<Self> {
        if n_qubits > MAX_PAULI_QUBITS {
            return Err(Error::ResourceLimit(format!("{n_qubits} qubits exceeds {MAX_PAULI_QUBITS}")));
        }
        let valid = if n_qubits == 64 { u64::MAX } else { (1u64 << n_qubits) - 1 };
        if (x_mask | z_mask) & !valid != 0 {
            return Err(invalid_arg(format!("masks do not fit in {n_qubits} qubits")));
        }
        Ok(Self { n_qubits, x: x_mask, z: z_mask })
    }

    pub fn identity(n_qubits: usize) -> Self {
        Self { n_qubits, x: 0, z: 0 }
    }

    /// A single non-identity letter on `qubit`.
    pub fn single(n_qubits: usize, qubit: usize, letter: PauliLetter) -> Result<Self> {
        if qubit >= n_qubits {
            return Err(invalid_arg(format!("qubit {qubit} out of range for {n_qubits} qubits")));
        }
        let (x, z) = letter.bits();
        Self::new(n_qubits, (x as u64) << qubit, (z as u64) << qubit)
    }

    /// Parses letters written highest qubit first, e.g. `"ZIZI"`.
    pub fn from_letters(letters: &str) -> Result<Self> {
        let n = letters.chars().count();
        let mut x = 0u64;
        let mut z = 0u64;
        for (pos, ch) in letters.chars().enumerate() {
            let letter = PauliLetter::from_char(ch)
                .ok_or_else(|| invalid_arg(format!("'{ch}' is not a Pauli letter")))?;
            let q = n - 1 - pos;
            let (bx, bz) = letter.bits();
            x |= (bx as u64) << q;
            z |= (bz as u64) << q;
        }
        Self::new(n, x, z)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn letter(&self, qubit: usize) -> PauliLetter {
        PauliLetter::from_bits(self.x >> qubit & 1 == 1, self.z >> qubit & 1 == 1)
    }

    /// Qubits carrying a non-identity letter, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mask = self.x | self.z;
        (0..self.n_qubits).filter(|q| mask >> q & 1 == 1).collect()
    }

    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()) % 2 == 0
    }

    /// `P |psi>` for amplitudes in little-endian order.
    pub fn apply(&self, amplitudes: &[Complex64]) -> Vec<Complex64> {
        let base = i_pow(self.y_count());
        let mut out = vec![Complex64::new(0.0, 0.0); amplitudes.len()];
        for (b, &a) in amplitudes.iter().enumerate() {
            let sign = if (self.z & b as u64).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            out[b ^ self.x as usize] = base * a * sign;
        }
        out
    }

    /// `<psi| P |psi>` without materializing `P |psi>`.
    pub fn expectation(&self, amplitudes: &[Complex64]) -> Complex64 {
        let base = i_pow(self.y_count());
        let x = self.x as usize;
        let sum: Complex64 = amplitudes
            .iter()
            .enumerate()
            .map(|(b, &a)| {
                let term = amplitudes[b ^ x].conj() * a;
                if (self.z & b as u64).count_ones() % 2 == 1 {
                    -term
                } else {
                    term
                }
            })
            .sum();
        base * sum
    }
}

impl Ord for PauliString {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.z, self.x, self.n_qubits).cmp(&(other.z, other.x, other.n_qubits))
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.n_qubits).rev().map(|q| self.letter(q).as_char()).collect();
        f.write_str(&s)
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_letters(s)
    }
}

/// Qubit-wise product `a * b = phase * c`.
pub fn pauli_multiply(a: &PauliString, b: &PauliString) -> Result<(Phase, PauliString)> {
    if a.n_qubits != b.n_qubits {
        return Err(invalid_arg(format!(
            "cannot multiply {}-qubit and {}-qubit strings",
            a.n_qubits, b.n_qubits
        )));
    }
    let product = PauliString { n_qubits: a.n_qubits, x: a.x ^ b.x, z: a.z ^ b.z };
    // X^xa Z^za X^xb Z^zb = (-1)^|za & xb| X^(xa^xb) Z^(za^zb)
    let swap_sign = 2 * ((a.z & b.x).count_ones() % 2);
    let power = a.y_count() + b.y_count() + 4 - product.y_count() % 4 + swap_sign;
    Ok((Phase::from_power(power), product))
}

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    pub dim: usize,
    pub data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.data[r * self.dim + c] * v[c]).sum())
            .collect()
    }

    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// Weighted sum of Pauli strings, kept merged, pruned and sorted by `(z, x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: Vec<(Complex64, PauliString)>,
}

impl PauliSum {
    pub fn zero(n_qubits: usize) -> Self {
        Self { n_qubits, terms: Vec::new() }
    }

    pub fn identity(n_qubits: usize, coefficient: impl Into<Complex64>) -> Self {
        Self::from_terms(n_qubits, [(coefficient.into(), PauliString::identity(n_qubits))])
            .expect("identity matches register width")
    }

    pub fn from_terms(
        n_qubits: usize,
        terms: impl IntoIterator<Item = (Complex64, PauliString)>,
    ) -> Result<Self> {
        let mut merged: BTreeMap<PauliString, Complex64> = BTreeMap::new();
        for (c, p) in terms {
            if p.n_qubits != n_qubits {
                return Err(invalid_arg(format!(
                    "term acts on {} qubits, sum on {n_qubits}",
                    p.n_qubits
                )));
            }
            *merged.entry(p).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        Ok(Self::from_merged(n_qubits, merged))
    }

    /// Convenience constructor from real coefficients and letter strings.
    pub fn from_labels(labels: &[(f64, &str)]) -> Result<Self> {
        let first = labels.first().ok_or_else(|| invalid_arg("no terms given"))?;
        let n = first.1.chars().count();
        let terms = labels
            .iter()
            .map(|&(c, s)| Ok((Complex64::new(c, 0.0), PauliString::from_letters(s)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(n, terms)
    }

    fn from_merged(n_qubits: usize, merged: BTreeMap<PauliString, Complex64>) -> Self {
        let terms = merged.into_iter().filter(|(_, c)| c.norm() >= PRUNE_TOL).map(|(p, c)| (c, p)).collect();
        Self { n_qubits, terms }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[(Complex64, PauliString)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &PauliString) -> Complex64 {
        self.terms
            .binary_search_by(|(_, q)| q.cmp(p))
            .map(|i| self.terms[i].0)
            .unwrap_or_default()
    }

    pub fn is_hermitian(&self) -> bool {
        self.terms.iter().all(|(c, _)| c.im.abs() <= PRUNE_TOL)
    }

    pub fn add(&self, other: &PauliSum) -> Result<PauliSum> {
        if self.n_qubits != other.n_qubits {
            return Err(invalid_arg("cannot add sums of different widths"));
        }
        Self::from_terms(self.n_qubits, self.terms.iter().chain(&other.terms).copied())
    }

    pub fn scale(&self, factor: impl Into<Complex64>) -> PauliSum {
        let f = factor.into();
        let merged = self.terms.iter().map(|(c, p)| (*p, c * f)).collect();
        Self::from_merged(self.n_qubits, merged)
    }

    pub fn mul(&self, other: &PauliSum) -> Result<PauliSum> {
        if self.n_qubits != other.n_qubits {
            return Err(invalid_arg("cannot multiply sums of different widths"));
        }
        let mut merged: BTreeMap<PauliString, Complex64> = BTreeMap::new();
        for (ca, pa) in &self.terms {
            for (cb, pb) in &other.terms {
                let (phase, p) = pauli_multiply(pa, pb)?;
                *merged.entry(p).or_insert(Complex64::new(0.0, 0.0)) += ca * cb * phase.to_complex();
            }
        }
        Ok(Self::from_merged(self.n_qubits, merged))
    }

    pub fn adjoint(&self) -> PauliSum {
        let merged = self.terms.iter().map(|(c, p)| (*p, c.conj())).collect();
        Self::from_merged(self.n_qubits, merged)
    }

    /// Coefficient of the identity string.
    pub fn constant(&self) -> Complex64 {
        self.coefficient(&PauliString::identity(self.n_qubits))
    }

    fn require_hermitian(&self) -> Result<()> {
        if !self.is_hermitian() {
            return Err(invalid_arg("operator is not hermitian"));
        }
        Ok(())
    }

    /// `<psi| H |psi>` for a hermitian sum.
    pub fn expectation(&self, state: &Statevector) -> Result<f64> {
        self.require_hermitian()?;
        if state.n_qubits() != self.n_qubits {
            return Err(invalid_arg(format!(
                "operator has {} qubits, state has {}",
                self.n_qubits,
                state.n_qubits()
            )));
        }
        let amps = state.amplitudes();
        let value: Complex64 = self.terms.iter().map(|(c, p)| c * p.expectation(amps)).sum();
        if value.im.abs() > 1e-10 {
            return Err(Error::InvalidState(format!(
                "expectation has imaginary part {}",
                value.im
            )));
        }
        Ok(value.re)
    }

    pub fn to_dense_matrix(&self) -> Result<DenseMatrix> {
        if self.n_qubits > MAX_DENSE_QUBITS {
            return Err(Error::ResourceLimit(format!(
                "dense matrix for {} qubits exceeds the {MAX_DENSE_QUBITS}-qubit limit",
                self.n_qubits
            )));
        }
        let dim = 1usize << self.n_qubits;
        let mut m = DenseMatrix::zeros(dim);
        for (c, p) in &self.terms {
            let base = c * i_pow(p.y_count());
            for col in 0..dim {
                let sign = if (p.z & col as u64).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
                let row = col ^ p.x as usize;
                m.data[row * dim + col] += base * sign;
            }
        }
        Ok(m)
    }

    /// Lowest eigenvalue and a normalized eigenvector, by dense diagonalization.
    pub fn exact_ground_energy(&self) -> Result<(f64, Statevector)> {
        self.require_hermitian()?;
        let m = self.to_dense_matrix()?;
        let (energy, vector) = linalg::hermitian_ground(m.dim, &m.data)?;
        Ok((energy, Statevector::from_amplitudes(vector)?))
    }

    /// Shot-based estimate of `<psi(params)| H |psi(params)>` prepared from
    /// `|0...0>` by `circuit`.
    ///
    /// Each non-identity term is measured independently with `shots` samples
    /// after rotating its letters onto Z. Returns the estimate and its standard
    /// error.
    pub fn sampled_expectation(
        &self,
        circuit: &Circuit,
        params: &[f64],
        shots: usize,
        seed: u64,
    ) -> Result<(f64, f64)> {
        self.require_hermitian()?;
        if shots == 0 {
            return Err(invalid_arg("shots must be at least 1"));
        }
        if circuit.n_qubits() != self.n_qubits {
            return Err(invalid_arg("circuit and operator widths differ"));
        }
        let prepared = circuit.run(&Statevector::zero(self.n_qubits)?, params)?;

        let mut energy = 0.0;
        let mut variance = 0.0;
        for (k, (c, p)) in self.terms.iter().enumerate() {
            if p.is_identity() {
                energy += c.re;
                continue;
            }
            let mut state = prepared.clone();
            for g in measurement_basis_change(p) {
                state.apply(&g)?;
            }
            let sampler = OutcomeSampler::new(&state.probabilities());
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let mask = (p.x | p.z) as usize;
            let mut sum = 0i64;
            for _ in 0..shots {
                let outcome = sampler.draw(&mut rng);
                sum += if (outcome & mask).count_ones() % 2 == 1 { -1 } else { 1 };
            }
            let mean = sum as f64 / shots as f64;
            energy += c.re * mean;
            variance += c.re * c.re * (1.0 - mean * mean) / shots as f64;
        }
        Ok((energy, variance.max(0.0).sqrt()))
    }

    /// One term per line: `<re> <im> <letters>`, highest qubit leftmost.
    pub fn to_text(&self) -> String {
        self.terms.iter().map(|(c, p)| format!("{:?} {:?} {p}\n", c.re, c.im)).collect()
    }

    /// Parses [`to_text`](Self::to_text) output; blank lines and `#` comments are skipped.
    pub fn from_text(text: &str) -> Result<PauliSum> {
        let mut n_qubits = None;
        let mut terms = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = |what: &str| invalid_arg(format!("line {}: {what}", lineno + 1));
            if fields.len() != 3 {
                return Err(bad("expected `<re> <im> <letters>`"));
            }
            let re: f64 = fields[0].parse().map_err(|_| bad("bad real part"))?;
            let im: f64 = fields[1].parse().map_err(|_| bad("bad imaginary part"))?;
            let p = PauliString::from_letters(fields[2]).map_err(|e| bad(&e.to_string()))?;
            match n_qubits {
                None => n_qubits = Some(p.n_qubits),
                Some(n) if n != p.n_qubits => return Err(bad("inconsistent qubit count")),
                _ => {}
            }
            terms.push((Complex64::new(re, im), p));
        }
        let n = n_qubits.ok_or_else(|| invalid_arg("no terms found"))?;
        Self::from_terms(n, terms)
    }
}

/// Gates rotating each letter's eigenbasis onto Z: `H` for X, `Rx(pi/2)` for Y.
pub fn measurement_basis_change(p: &PauliString) -> Vec<Gate> {
    p.support()
        .into_iter()
        .filter_map(|q| match p.letter(q) {
            PauliLetter::X => Some(Gate::H(q)),
            PauliLetter::Y => Some(Gate::rx(q, std::f64::consts::FRAC_PI_2)),
            _ => None,
        })
        .collect()
}

/// `-1/2 (II + XX + YY + ZZ) + d (ZI + IZ)`
pub fn build_two_qubit_model(d: f64) -> PauliSum {
    PauliSum::from_labels(&[
        (-0.5, "II"),
        (-0.5, "XX"),
        (-0.5, "YY"),
        (-0.5, "ZZ"),
        (d, "ZI"),
        (d, "IZ"),
    ])
    .expect("fixed labels are valid")
}

pub fn expectation(op: &PauliSum, state: &Statevector) -> Result<f64> {
    op.expectation(state)
}

pub fn exact_ground_energy(op: &PauliSum) -> Result<(f64, Statevector)> {
    op.exact_ground_energy()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::init_basis_state;

    fn ps(s: &str) -> PauliString {
        PauliString::from_letters(s).unwrap()
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(pauli_multiply(&ps("X"), &ps("X")).unwrap(), (Phase::PlusOne, ps("I")));
        assert_eq!(pauli_multiply(&ps("X"), &ps("Y")).unwrap(), (Phase::PlusI, ps("Z")));
        assert_eq!(pauli_multiply(&ps("ZI"), &ps("IZ")).unwrap(), (Phase::PlusOne, ps("ZZ")));
        assert!(pauli_multiply(&ps("X"), &ps("XX")).is_err());
    }

    #[test]
    fn single_qubit_products_match_matrices() {
        let letters = ["I", "X", "Y", "Z"];
        for a in letters {
            for b in letters {
                let (pa, pb) = (ps(a), ps(b));
                let ma = PauliSum::from_labels(&[(1.0, a)]).unwrap().to_dense_matrix().unwrap();
                let mb = PauliSum::from_labels(&[(1.0, b)]).unwrap().to_dense_matrix().unwrap();
                let (phase, pc) = pauli_multiply(&pa, &pb).unwrap();
                let mc = PauliSum::from_terms(1, [(phase.to_complex(), pc)]).unwrap().to_dense_matrix().unwrap();
                for r in 0..2 {
                    for c in 0..2 {
                        let prod: Complex64 = (0..2).map(|k| ma.get(r, k) * mb.get(k, c)).sum();
                        assert!((prod - mc.get(r, c)).norm() < 1e-15, "{a}{b}");
                    }
                }
                let (back, _) = pauli_multiply(&pb, &pa).unwrap();
                if pa.commutes_with(&pb) {
                    assert_eq!(back, phase);
                } else {
                    assert_eq!(back.to_complex(), -phase.to_complex());
                }
            }
        }
    }

    #[test]
    fn letter_round_trip() {
        let p = ps("XIYZ");
        assert_eq!(p.letter(3), PauliLetter::X);
        assert_eq!(p.letter(1), PauliLetter::Y);
        assert_eq!(p.letter(0), PauliLetter::Z);
        assert_eq!(p.to_string(), "XIYZ");
        assert_eq!(p.support(), vec![0, 1, 3]);
        assert!(PauliString::from_letters("XQ").is_err());
    }

    #[test]
    fn expectation_examples() {
        let z = PauliSum::from_labels(&[(1.0, "Z")]).unwrap();
        assert_eq!(z.expectation(&Statevector::zero(1).unwrap()).unwrap(), 1.0);
        let x = PauliSum::from_labels(&[(1.0, "X")]).unwrap();
        let mut plus = Statevector::zero(1).unwrap();
        plus.apply(&Gate::H(0)).unwrap();
        assert!((x.expectation(&plus).unwrap() - 1.0).abs() < 1e-15);

        let non_herm = PauliSum::from_terms(1, [(Complex64::new(0.0, 1.0), ps("Z"))]).unwrap();
        assert!(non_herm.expectation(&plus).is_err());
    }

    #[test]
    fn dense_examples() {
        let z = PauliSum::from_labels(&[(1.0, "Z")]).unwrap().to_dense_matrix().unwrap();
        assert_eq!(z.data, vec![1.0.into(), 0.0.into(), 0.0.into(), (-1.0).into()]);

        // CNOT with control = qubit 1 (left letter), target = qubit 0.
        let cnot = PauliSum::from_labels(&[(0.5, "II"), (0.5, "ZI"), (0.5, "IX"), (-0.5, "ZX")])
            .unwrap()
            .to_dense_matrix()
            .unwrap();
        let expected = [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
        ];
        // Dense rows are little-endian basis indices; |q1 q0> = index q1*2 + q0.
        for (r, row) in expected.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                assert!((cnot.get(r, c) - Complex64::new(v, 0.0)).norm() < 1e-15);
            }
        }

        let empty = PauliSum::zero(2).to_dense_matrix().unwrap();
        assert!(empty.data.iter().all(|z| z.norm() == 0.0));
        assert!(matches!(PauliSum::zero(13).to_dense_matrix(), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn ground_energy_examples() {
        let z = PauliSum::from_labels(&[(1.0, "Z")]).unwrap();
        let (e, v) = z.exact_ground_energy().unwrap();
        assert!((e + 1.0).abs() < 1e-14);
        assert!(v.approx_eq_up_to_phase(&init_basis_state(1, &[1]).unwrap(), 1e-12));

        // XX+YY+ZZ is -3 on the singlet and +1 on the triplet, so at d = 0 the
        // spectrum is {+1, -1, -1, -1}.
        let (e, _) = build_two_qubit_model(0.0).exact_ground_energy().unwrap();
        assert!((e + 1.0).abs() < 1e-12, "{e}");
    }

    #[test]
    fn two_qubit_model_terms() {
        let m = build_two_qubit_model(0.0);
        assert_eq!(m.len(), 4);
        assert!(m.terms().iter().all(|(c, _)| *c == Complex64::new(-0.5, 0.0)));
        let m = build_two_qubit_model(1.0);
        assert_eq!(m.coefficient(&ps("ZI")), Complex64::new(1.0, 0.0));
        assert_eq!(m.coefficient(&ps("IZ")), Complex64::new(1.0, 0.0));
        assert!(build_two_qubit_model(-0.37).is_hermitian());
    }

    #[test]
    fn canonical_order_and_pruning() {
        let sum = PauliSum::from_labels(&[(1.0, "XZ"), (0.5, "ZI"), (2.0, "II"), (1e-14, "YY"), (-1.0, "XZ"), (0.25, "IX")])
            .unwrap();
        let labels: Vec<String> = sum.terms().iter().map(|(_, p)| p.to_string()).collect();
        assert_eq!(labels, vec!["II", "IX", "ZI"]);
    }

    #[test]
    fn text_round_trip_and_errors() {
        let sum = PauliSum::from_labels(&[(-0.807184, "IIII"), (0.045094, "XXYY"), (0.175106, "ZIZI")]).unwrap();
        let text = sum.to_text();
        assert!(text.contains("-0.807184 0.0 IIII"));
        assert_eq!(PauliSum::from_text(&text).unwrap(), sum);
        let with_comment = format!("# header\n\n{text}");
        assert_eq!(PauliSum::from_text(&with_comment).unwrap(), sum);
        assert!(PauliSum::from_text("1.0 0.0 XX\n1.0 0.0 X\n").is_err());
        assert!(PauliSum::from_text("1.0 XX\n").is_err());
    }

    #[test]
    fn y_basis_change_maps_y_to_z() {
        // Rx(pi/2)^dagger Z Rx(pi/2) = Y, checked by dense conjugation.
        let g = Gate::rx(0, std::f64::consts::FRAC_PI_2).single_qubit_matrix().unwrap();
        let z = [[1.0, 0.0], [0.0, -1.0]];
        let y = PauliSum::from_labels(&[(1.0, "Y")]).unwrap().to_dense_matrix().unwrap();
        for r in 0..2 {
            for c in 0..2 {
                let v: Complex64 = (0..2).map(|k| g[k][r].conj() * z[k][k] * g[k][c]).sum();
                assert!((v - y.get(r, c)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn sampled_identity_and_deterministic() {
        let id = PauliSum::identity(1, 0.7);
        let circ = Circuit::new(1);
        assert_eq!(id.sampled_expectation(&circ, &[], 10, 1).unwrap(), (0.7, 0.0));

        let z = PauliSum::from_labels(&[(1.0, "Z")]).unwrap();
        let mut flip = Circuit::new(1);
        flip.push(Gate::X(0)).unwrap();
        assert_eq!(z.sampled_expectation(&flip, &[], 1000, 4).unwrap(), (-1.0, 0.0));
        assert!(z.sampled_expectation(&flip, &[], 0, 4).is_err());
    }
}
