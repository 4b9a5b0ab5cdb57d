use super::integrals::IntegralSet;
use super::scf::HartreeFockResult;
use crate::error::{invalid_arg, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spin {
    Alpha,
    Beta,
}

/// One- and two-body integrals over spin orbitals.
///
/// Modes are blocked by spin: spatial orbital `i` is mode `i` for alpha and
/// `i + n_spatial` for beta. `h2[p][q][r][s]` multiplies `a+_p a+_q a_r a_s`
/// (with the usual 1/2) and equals chemist `(ps|qr)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinOrbitalIntegrals {
    pub n_modes: usize,
    pub h1: Vec<f64>,
    pub h2: Vec<f64>,
    /// Nuclear repulsion.
    pub h0: f64,
}

impl SpinOrbitalIntegrals {
    pub fn new(n_modes: usize, h1: Vec<f64>, h2: Vec<f64>, h0: f64) -> Result<Self> {
        if h1.len() != n_modes * n_modes || h2.len() != n_modes.pow(4) {
            return Err(invalid_arg(format!("tensor sizes do not match {n_modes} modes")));
        }
        Ok(Self { n_modes, h1, h2, h0 })
    }

    pub fn h1(&self, p: usize, q: usize) -> f64 {
        self.h1[p * self.n_modes + q]
    }

    pub fn h2(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        let n = self.n_modes;
        self.h2[((p * n + q) * n + r) * n + s]
    }

    pub fn n_spatial(&self) -> usize {
        self.n_modes / 2
    }

    pub fn spin(&self, mode: usize) -> Spin {
        mode_spin(mode, self.n_spatial())
    }

    /// Same integrals with every two-body term removed.
    pub fn without_two_body(&self) -> Self {
        Self { h2: vec![0.0; self.h2.len()], ..self.clone() }
    }
}

pub(crate) fn mode_spin(mode: usize, n_spatial: usize) -> Spin {
    if mode < n_spatial {
        Spin::Alpha
    } else {
        Spin::Beta
    }
}

/// Transforms AO integrals into the HF molecular-orbital basis and expands
/// them over spin orbitals; `h0` is the nuclear repulsion.
pub fn spin_orbital_integrals(ints: &IntegralSet, hf: &HartreeFockResult) -> Result<SpinOrbitalIntegrals> {
    if !hf.converged {
        return Err(Error::InvalidState("Hartree-Fock result is not converged".into()));
    }
    let n = ints.n_basis;
    let c = &hf.mo_coefficients;
    if c.rows() != n {
        return Err(invalid_arg("orbital coefficients do not match the basis"));
    }
    let h_ao = ints.core_hamiltonian();
    let h_mo = c.transpose().matmul(&h_ao).matmul(c);

    // chemist (ij|kl) in the MO basis, one index at a time
    let idx = |i: usize, j: usize, k: usize, l: usize| ((i * n + j) * n + k) * n + l;
    let mut t = vec![0.0; n.pow(4)];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    t[idx(i, j, k, l)] = ints.chem(i, j, k, l);
                }
            }
        }
    }
    for axis in 0..4 {
        let mut next = vec![0.0; n.pow(4)];
        for a in 0..n {
            for b in 0..n {
                for cc in 0..n {
                    for d in 0..n {
                        let mut sum = 0.0;
                        for m in 0..n {
                            let (src, coef) = match axis {
                                0 => (idx(m, b, cc, d), c[(m, a)]),
                                1 => (idx(a, m, cc, d), c[(m, b)]),
                                2 => (idx(a, b, m, d), c[(m, cc)]),
                                _ => (idx(a, b, cc, m), c[(m, d)]),
                            };
                            sum += coef * t[src];
                        }
                        next[idx(a, b, cc, d)] = sum;
                    }
                }
            }
        }
        t = next;
    }

    let modes = 2 * n;
    let spatial = |p: usize| p % n;
    let mut h1 = vec![0.0; modes * modes];
    for p in 0..modes {
        for q in 0..modes {
            if mode_spin(p, n) == mode_spin(q, n) {
                h1[p * modes + q] = h_mo[(spatial(p), spatial(q))];
            }
        }
    }
    let mut h2 = vec![0.0; modes.pow(4)];
    for p in 0..modes {
        for q in 0..modes {
            for r in 0..modes {
                for s in 0..modes {
                    if mode_spin(p, n) == mode_spin(s, n) && mode_spin(q, n) == mode_spin(r, n) {
                        h2[((p * modes + q) * modes + r) * modes + s] =
                            t[idx(spatial(p), spatial(s), spatial(q), spatial(r))];
                    }
                }
            }
        }
    }
    SpinOrbitalIntegrals::new(modes, h1, h2, ints.e_nuc)
}
