//! Fermionic ladder-operator polynomials and the Jordan-Wigner mapping.
//!
//! Terms keep their ladder order exactly as written; no normal ordering is
//! done here. Simplification happens after mapping, in Pauli space.

use num_complex::Complex64;

use crate::chemistry::SpinOrbitalIntegrals;
use crate::error::{invalid_arg, Result};
use crate::pauli::{PauliLetter, PauliString, PauliSum};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LadderOp {
    pub mode: usize,
    pub dagger: bool,
}

impl LadderOp {
    pub fn create(mode: usize) -> Self {
        Self { mode, dagger: true }
    }

    pub fn annihilate(mode: usize) -> Self {
        Self { mode, dagger: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FermionTerm {
    pub coefficient: Complex64,
    pub ladder: Vec<LadderOp>,
}

impl FermionTerm {
    pub fn new(coefficient: impl Into<Complex64>, ladder: Vec<LadderOp>) -> Self {
        Self { coefficient: coefficient.into(), ladder }
    }

    pub fn scalar(coefficient: impl Into<Complex64>) -> Self {
        Self::new(coefficient, Vec::new())
    }

    pub fn adjoint(&self) -> FermionTerm {
        let ladder = self
            .ladder
            .iter()
            .rev()
            .map(|op| LadderOp { mode: op.mode, dagger: !op.dagger })
            .collect();
        FermionTerm { coefficient: self.coefficient.conj(), ladder }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FermionOperator {
    n_modes: usize,
    terms: Vec<FermionTerm>,
}

impl FermionOperator {
    pub fn new(n_modes: usize) -> Self {
        Self { n_modes, terms: Vec::new() }
    }

    pub fn from_terms(n_modes: usize, terms: Vec<FermionTerm>) -> Result<Self> {
        let mut op = Self::new(n_modes);
        for t in terms {
            op.push(t)?;
        }
        Ok(op)
    }

    pub fn push(&mut self, term: FermionTerm) -> Result<()> {
        if let Some(op) = term.ladder.iter().find(|op| op.mode >= self.n_modes) {
            return Err(invalid_arg(format!(
                "mode {} out of range for {} modes",
                op.mode, self.n_modes
            )));
        }
        self.terms.push(term);
        Ok(())
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn terms(&self) -> &[FermionTerm] {
        &self.terms
    }

    pub fn hermitian_conjugate(&self) -> FermionOperator {
        FermionOperator { n_modes: self.n_modes, terms: self.terms.iter().map(FermionTerm::adjoint).collect() }
    }

    pub fn scale(&self, factor: impl Into<Complex64>) -> FermionOperator {
        let f = factor.into();
        let terms = self
            .terms
            .iter()
            .map(|t| FermionTerm { coefficient: t.coefficient * f, ladder: t.ladder.clone() })
            .collect();
        FermionOperator { n_modes: self.n_modes, terms }
    }

    /// Term-list concatenation.
    pub fn add(&self, other: &FermionOperator) -> Result<FermionOperator> {
        if self.n_modes != other.n_modes {
            return Err(invalid_arg("cannot add operators over different mode counts"));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(FermionOperator { n_modes: self.n_modes, terms })
    }

    pub fn jordan_wigner(&self) -> Result<PauliSum> {
        jordan_wigner(self)
    }
}

/// Image of a single ladder operator:
/// `1/2 [prod_{j<n} (-Z_j)] (X_n -/+ i Y_n)`, minus sign for creation.
pub fn jw_ladder(n_modes: usize, op: LadderOp) -> Result<PauliSum> {
    if op.mode >= n_modes {
        return Err(invalid_arg(format!("mode {} out of range for {n_modes} modes", op.mode)));
    }
    let n = op.mode;
    let z_string = (1u64 << n) - 1;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let x = PauliString::single(n_modes, n, PauliLetter::X)?;
    let y = PauliString::single(n_modes, n, PauliLetter::Y)?;
    let with_z = |p: PauliString| PauliString::new(n_modes, p.x_mask(), p.z_mask() | z_string);
    let y_coeff = if op.dagger { Complex64::new(0.0, -0.5) } else { Complex64::new(0.0, 0.5) };
    PauliSum::from_terms(
        n_modes,
        [(Complex64::new(0.5 * sign, 0.0), with_z(x)?), (y_coeff * sign, with_z(y)?)],
    )
}

pub fn jordan_wigner(op: &FermionOperator) -> Result<PauliSum> {
    let n = op.n_modes;
    if n == 0 {
        return Err(invalid_arg("operator has no modes"));
    }
    let mut total = PauliSum::zero(n);
    for term in &op.terms {
        let mut product = PauliSum::identity(n, term.coefficient);
        for &ladder in &term.ladder {
            product = product.mul(&jw_ladder(n, ladder)?)?;
        }
        total = total.add(&product)?;
    }
    Ok(total)
}

/// `sum h1[p][q] a+_p a_q + 1/2 sum h2[p][q][r][s] a+_p a+_q a_r a_s + h0`
pub fn assemble_hamiltonian(ints: &SpinOrbitalIntegrals) -> Result<FermionOperator> {
    let n = ints.n_modes;
    const SYM_TOL: f64 = 1e-10;
    for p in 0..n {
        for q in 0..n {
            if (ints.h1(p, q) - ints.h1(q, p)).abs() > SYM_TOL {
                return Err(invalid_arg(format!("one-body integrals not symmetric at ({p}, {q})")));
            }
            for r in 0..n {
                for s in 0..n {
                    let v = ints.h2(p, q, r, s);
                    // swapping both electrons, and conjugating real orbitals
                    if (v - ints.h2(q, p, s, r)).abs() > SYM_TOL || (v - ints.h2(s, r, q, p)).abs() > SYM_TOL {
                        return Err(invalid_arg(format!(
                            "two-body integrals lack index symmetry at ({p}, {q}, {r}, {s})"
                        )));
                    }
                }
            }
        }
    }

    let mut op = FermionOperator::new(n);
    if ints.h0 != 0.0 {
        op.push(FermionTerm::scalar(ints.h0))?;
    }
    for p in 0..n {
        for q in 0..n {
            let v = ints.h1(p, q);
            if v != 0.0 {
                op.push(FermionTerm::new(v, vec![LadderOp::create(p), LadderOp::annihilate(q)]))?;
            }
        }
    }
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let v = ints.h2(p, q, r, s);
                    if v != 0.0 {
                        op.push(FermionTerm::new(
                            0.5 * v,
                            vec![
                                LadderOp::create(p),
                                LadderOp::create(q),
                                LadderOp::annihilate(r),
                                LadderOp::annihilate(s),
                            ],
                        ))?;
                    }
                }
            }
        }
    }
    Ok(op)
}
