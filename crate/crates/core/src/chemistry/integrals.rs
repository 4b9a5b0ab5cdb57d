//! Closed-form integrals over s-type Gaussians.
//!
//! For primitives with exponents `a`, `b` on centers `A`, `B` let
//! `p = a + b`, `mu = ab/p` and `P = (aA + bB)/p`. Nuclear attraction and
//! electron repulsion reduce to the zeroth Boys function.

use std::f64::consts::PI;

use super::basis::ContractedGaussian;
use super::geometry::{distance_sq, Atom, MoleculeGeometry};
use crate::error::{invalid_arg, Result};
use crate::linalg::Matrix;

const BOYS_SERIES_CUTOFF: f64 = 1e-10;

/// `F0(x) = int_0^1 exp(-x t^2) dt`
pub fn boys_f0(x: f64) -> f64 {
    if x < BOYS_SERIES_CUTOFF {
        1.0 - x / 3.0 + x * x / 10.0
    } else {
        0.5 * (PI / x).sqrt() * libm::erf(x.sqrt())
    }
}

fn gaussian_center(a: f64, ra: [f64; 3], b: f64, rb: [f64; 3]) -> [f64; 3] {
    [0, 1, 2].map(|k| (a * ra[k] + b * rb[k]) / (a + b))
}

/// Overlap of two unnormalized s primitives.
pub fn overlap_primitive(a: f64, ra: [f64; 3], b: f64, rb: [f64; 3]) -> f64 {
    let p = a + b;
    (PI / p).powf(1.5) * (-a * b / p * distance_sq(ra, rb)).exp()
}

/// `<a| -1/2 nabla^2 |b>` for unnormalized s primitives.
pub fn kinetic_primitive(a: f64, ra: [f64; 3], b: f64, rb: [f64; 3]) -> f64 {
    let p = a + b;
    let mu = a * b / p;
    let r2 = distance_sq(ra, rb);
    mu * (3.0 - 2.0 * mu * r2) * (PI / p).powf(1.5) * (-mu * r2).exp()
}

/// `<a| 1/|r - C| |b>` (positive; multiply by `-Z` for attraction).
pub fn coulomb_primitive(a: f64, ra: [f64; 3], b: f64, rb: [f64; 3], rc: [f64; 3]) -> f64 {
    let p = a + b;
    let rp = gaussian_center(a, ra, b, rb);
    2.0 * PI / p * (-a * b / p * distance_sq(ra, rb)).exp() * boys_f0(p * distance_sq(rp, rc))
}

/// Chemist-notation `(ab|cd)` for unnormalized s primitives.
pub fn eri_primitive(
    (a, ra): (f64, [f64; 3]),
    (b, rb): (f64, [f64; 3]),
    (c, rc): (f64, [f64; 3]),
    (d, rd): (f64, [f64; 3]),
) -> f64 {
    let p = a + b;
    let q = c + d;
    let rp = gaussian_center(a, ra, b, rb);
    let rq = gaussian_center(c, rc, d, rd);
    let pre = 2.0 * PI.powf(2.5) / (p * q * (p + q).sqrt());
    let decay = (-a * b / p * distance_sq(ra, rb) - c * d / q * distance_sq(rc, rd)).exp();
    pre * decay * boys_f0(p * q / (p + q) * distance_sq(rp, rq))
}

fn contract2(f: &ContractedGaussian, g: &ContractedGaussian, kernel: impl Fn(f64, f64) -> f64) -> f64 {
    f.primitives()
        .flat_map(|(a, wa)| g.primitives().map(move |(b, wb)| (a, wa, b, wb)))
        .map(|(a, wa, b, wb)| wa * wb * kernel(a, b))
        .sum()
}

pub fn overlap(f: &ContractedGaussian, g: &ContractedGaussian) -> f64 {
    contract2(f, g, |a, b| overlap_primitive(a, f.center, b, g.center))
}

pub fn kinetic(f: &ContractedGaussian, g: &ContractedGaussian) -> f64 {
    contract2(f, g, |a, b| kinetic_primitive(a, f.center, b, g.center))
}

/// Attraction to all nuclei, `-sum_C Z_C <f| 1/|r - C| |g>`.
pub fn nuclear_attraction(f: &ContractedGaussian, g: &ContractedGaussian, nuclei: &[Atom]) -> f64 {
    nuclei
        .iter()
        .map(|n| {
            -(n.nuclear_charge as f64)
                * contract2(f, g, |a, b| coulomb_primitive(a, f.center, b, g.center, n.position))
        })
        .sum()
}

/// Chemist-notation `(fg|hk)` over contracted functions.
pub fn electron_repulsion(
    f: &ContractedGaussian,
    g: &ContractedGaussian,
    h: &ContractedGaussian,
    k: &ContractedGaussian,
) -> f64 {
    let mut total = 0.0;
    for (a, wa) in f.primitives() {
        for (b, wb) in g.primitives() {
            for (c, wc) in h.primitives() {
                for (d, wd) in k.primitives() {
                    total += wa
                        * wb
                        * wc
                        * wd
                        * eri_primitive((a, f.center), (b, g.center), (c, h.center), (d, k.center));
                }
            }
        }
    }
    total
}

/// AO-basis integrals.
///
/// `eri` is stored with the index placement of the second-quantized two-body
/// term: `eri[p][q][r][s] = int phi_p(1) phi_q(2) 1/r12 phi_r(2) phi_s(1)`,
/// i.e. chemist `(ps|qr)`. Use [`IntegralSet::chem`] for chemist order.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralSet {
    pub n_basis: usize,
    pub overlap: Matrix,
    pub kinetic: Matrix,
    pub nuclear: Matrix,
    pub eri: Vec<f64>,
    pub e_nuc: f64,
}

impl IntegralSet {
    pub fn eri(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        let n = self.n_basis;
        self.eri[((p * n + q) * n + r) * n + s]
    }

    /// Chemist `(ij|kl)`.
    pub fn chem(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.eri(i, k, l, j)
    }

    pub fn core_hamiltonian(&self) -> Matrix {
        Matrix::from_fn(self.n_basis, self.n_basis, |i, j| self.kinetic[(i, j)] + self.nuclear[(i, j)])
    }
}

pub fn compute_integrals(basis: &[ContractedGaussian], geometry: &MoleculeGeometry) -> Result<IntegralSet> {
    integrals_for_nuclei(basis, &geometry.atoms)
}

/// Same as [`compute_integrals`] for an arbitrary nuclear framework (e.g. a
/// lone atom, which has no closed-shell geometry).
pub fn integrals_for_nuclei(basis: &[ContractedGaussian], nuclei: &[Atom]) -> Result<IntegralSet> {
    let mut e_nuc = 0.0;
    for (i, a) in nuclei.iter().enumerate() {
        for b in &nuclei[..i] {
            let r = distance_sq(a.position, b.position).sqrt();
            if r < 1e-8 {
                return Err(invalid_arg("coincident nuclei"));
            }
            e_nuc += (a.nuclear_charge * b.nuclear_charge) as f64 / r;
        }
    }

    let n = basis.len();
    let overlap = Matrix::from_fn(n, n, |i, j| overlap(&basis[i], &basis[j]));
    let kinetic = Matrix::from_fn(n, n, |i, j| kinetic(&basis[i], &basis[j]));
    let nuclear = Matrix::from_fn(n, n, |i, j| nuclear_attraction(&basis[i], &basis[j], nuclei));

    let mut chem = vec![0.0; n * n * n * n];
    let idx = |i: usize, j: usize, k: usize, l: usize| ((i * n + j) * n + k) * n + l;
    for i in 0..n {
        for j in 0..=i {
            for k in 0..n {
                for l in 0..=k {
                    if i * (i + 1) / 2 + j < k * (k + 1) / 2 + l {
                        continue;
                    }
                    let v = electron_repulsion(&basis[i], &basis[j], &basis[k], &basis[l]);
                    for (a, b, c, d) in [
                        (i, j, k, l),
                        (j, i, k, l),
                        (i, j, l, k),
                        (j, i, l, k),
                        (k, l, i, j),
                        (l, k, i, j),
                        (k, l, j, i),
                        (l, k, j, i),
                    ] {
                        chem[idx(a, b, c, d)] = v;
                    }
                }
            }
        }
    }
    // (ps|qr) -> eri[p][q][r][s]
    let mut eri = vec![0.0; n * n * n * n];
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    eri[idx(p, q, r, s)] = chem[idx(p, s, q, r)];
                }
            }
        }
    }
    Ok(IntegralSet { n_basis: n, overlap, kinetic, nuclear, eri, e_nuc })
}
