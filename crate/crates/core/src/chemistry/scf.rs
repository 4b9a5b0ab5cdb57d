use super::integrals::IntegralSet;
use crate::error::{invalid_arg, Error, Result};
use crate::linalg::{inverse_sqrt_spd, symmetric_eigen, Matrix};

pub const SCF_ENERGY_TOL: f64 = 1e-10;
pub const SCF_MAX_ITERATIONS: usize = 200;

/// Bias toward in-phase AO combinations in the starting guess. Only breaks
/// exact degeneracies (non-overlapping atoms); the SCF removes it.
const GUESS_BONDING_BIAS: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct HartreeFockResult {
    /// Columns are molecular orbitals in the AO basis.
    pub mo_coefficients: Matrix,
    pub orbital_energies: Vec<f64>,
    /// Electronic plus nuclear repulsion energy.
    pub hf_total_energy: f64,
    pub n_electrons: usize,
    pub iterations: usize,
    pub converged: bool,
    /// Total energy after each iteration.
    pub energy_history: Vec<f64>,
}

impl HartreeFockResult {
    pub fn n_occupied(&self) -> usize {
        self.n_electrons / 2
    }
}

fn density(c: &Matrix, n_occ: usize) -> Matrix {
    let n = c.rows();
    Matrix::from_fn(n, n, |i, j| 2.0 * (0..n_occ).map(|k| c[(i, k)] * c[(j, k)]).sum::<f64>())
}

fn fock(ints: &IntegralSet, h: &Matrix, p: &Matrix) -> Matrix {
    let n = ints.n_basis;
    Matrix::from_fn(n, n, |i, j| {
        let mut g = 0.0;
        for k in 0..n {
            for l in 0..n {
                g += p[(k, l)] * (ints.chem(i, j, k, l) - 0.5 * ints.chem(i, k, j, l));
            }
        }
        h[(i, j)] + g
    })
}

fn electronic_energy(h: &Matrix, f: &Matrix, p: &Matrix) -> f64 {
    let n = h.rows();
    0.5 * (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| p[(i, j)] * (h[(i, j)] + f[(i, j)])).sum::<f64>()
}

/// Diagonalizes `f` in the orthogonal basis `x`, returning AO-basis orbitals.
fn solve_roothaan(x: &Matrix, f: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    let f_ortho = x.transpose().matmul(f).matmul(x);
    // symmetrize away rounding so the Jacobi check passes
    let n = f_ortho.rows();
    let f_ortho = Matrix::from_fn(n, n, |i, j| 0.5 * (f_ortho[(i, j)] + f_ortho[(j, i)]));
    let (energies, c_ortho) = symmetric_eigen(&f_ortho)?;
    Ok((energies, x.matmul(&c_ortho)))
}

/// Restricted closed-shell SCF by plain fixed-point iteration from a
/// core-Hamiltonian guess.
pub fn hartree_fock(ints: &IntegralSet, n_electrons: usize) -> Result<HartreeFockResult> {
    let n = ints.n_basis;
    if n_electrons % 2 != 0 {
        return Err(invalid_arg(format!("{n_electrons} electrons is not a closed shell")));
    }
    if n_electrons > 2 * n {
        return Err(invalid_arg(format!("{n_electrons} electrons do not fit in {n} orbitals")));
    }
    let n_occ = n_electrons / 2;
    let x = inverse_sqrt_spd(&ints.overlap)?;
    let h = ints.core_hamiltonian();

    let guess = Matrix::from_fn(n, n, |i, j| h[(i, j)] - GUESS_BONDING_BIAS);
    let (mut energies, mut c) = solve_roothaan(&x, &guess)?;
    let mut p = density(&c, n_occ);

    let mut history = Vec::new();
    let mut previous: Option<f64> = None;
    for iteration in 1..=SCF_MAX_ITERATIONS {
        let f = fock(ints, &h, &p);
        let energy = electronic_energy(&h, &f, &p) + ints.e_nuc;
        history.push(energy);
        (energies, c) = solve_roothaan(&x, &f)?;
        p = density(&c, n_occ);

        if previous.is_some_and(|e| (energy - e).abs() < SCF_ENERGY_TOL) {
            return Ok(HartreeFockResult {
                mo_coefficients: c,
                orbital_energies: energies,
                hf_total_energy: energy,
                n_electrons,
                iterations: iteration,
                converged: true,
                energy_history: history,
            });
        }
        previous = Some(energy);
    }
    let last = *history.last().expect("at least one iteration");
    Err(Error::ScfNotConverged(Box::new(HartreeFockResult {
        mo_coefficients: c,
        orbital_energies: energies,
        hf_total_energy: last,
        n_electrons,
        iterations: SCF_MAX_ITERATIONS,
        converged: false,
        energy_history: history,
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chemistry::integrals::integrals_for_nuclei;
    use crate::chemistry::{compute_integrals, sto3g_basis, Atom, ContractedGaussian, MoleculeGeometry};

    fn h2(d: f64) -> IntegralSet {
        let g = MoleculeGeometry::hydrogen_molecule(d).unwrap();
        compute_integrals(&sto3g_basis(&g).unwrap(), &g).unwrap()
    }

    #[test]
    fn h2_near_equilibrium() {
        let hf = hartree_fock(&h2(0.735), 2).unwrap();
        assert!(hf.converged);
        assert!((hf.hf_total_energy - -1.117).abs() < 1e-3, "{}", hf.hf_total_energy);
        assert!((hf.hf_total_energy - -1.117506).abs() < 1e-3);
    }

    #[test]
    fn orthonormal_orbitals() {
        for d in [0.3, 0.74, 1.6, 2.5] {
            let ints = h2(d);
            let hf = hartree_fock(&ints, 2).unwrap();
            let c = &hf.mo_coefficients;
            let ctsc = c.transpose().matmul(&ints.overlap).matmul(c);
            assert!(ctsc.max_abs_diff(&Matrix::identity(2)) < 1e-8);
        }
    }

    #[test]
    fn converged_energy_change_below_tolerance() {
        let hf = hartree_fock(&h2(1.2), 2).unwrap();
        let h = &hf.energy_history;
        assert!(h.len() >= 2);
        assert!((h[h.len() - 1] - h[h.len() - 2]).abs() < SCF_ENERGY_TOL);
    }

    #[test]
    fn far_separated_atoms() {
        // Oracle: two one-atom calculations. For non-overlapping atoms the RHF
        // energy is 2 h_atom + J_atom/2 - 1/(2R), with h_atom and J_atom the
        // one-atom core and Coulomb integrals.
        let r = 50.0;
        let atoms = vec![Atom::new("H", [0.0; 3]).unwrap(), Atom::new("H", [0.0, 0.0, r]).unwrap()];
        let basis: Vec<_> = atoms.iter().map(|a| ContractedGaussian::sto3g_hydrogen(a.position)).collect();
        let ints = integrals_for_nuclei(&basis, &atoms).unwrap();
        let hf = hartree_fock(&ints, 2).unwrap();

        let lone = integrals_for_nuclei(&basis[..1], &atoms[..1]).unwrap();
        let h_atom = lone.core_hamiltonian()[(0, 0)];
        let j_atom = lone.chem(0, 0, 0, 0);
        assert!((h_atom - -0.466582).abs() < 1e-5, "{h_atom}");
        let expected = 2.0 * h_atom + 0.5 * j_atom - 0.5 / r;
        assert!((hf.hf_total_energy - expected).abs() < 1e-6, "{} vs {expected}", hf.hf_total_energy);
    }

    #[test]
    fn bad_electron_counts() {
        let ints = h2(0.74);
        assert!(hartree_fock(&ints, 3).is_err());
        assert!(hartree_fock(&ints, 6).is_err());
    }
}
