//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use vqe_core::Complex64 as C;
use vqe_core::pauli::{PauliLetter, PauliString};
use vqe_core::statevector::Gate;

// ---------------------------------------------------------------- quadrature

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// Composite rule: `panels` equal sub-intervals, 16 nodes each.
pub struct Composite {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Composite {
    pub fn new(a: f64, b: f64, panels: usize) -> Self {
        let (x, w) = gauss_legendre(16);
        let h = (b - a) / panels as f64;
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for p in 0..panels {
            let lo = a + p as f64 * h;
            for (xi, wi) in x.iter().zip(&w) {
                nodes.push(lo + 0.5 * h * (xi + 1.0));
                weights.push(0.5 * h * wi);
            }
        }
        Self { nodes, weights }
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.points().map(|(x, w)| w * f(x)).sum()
    }
}

pub fn boys_quadrature(x: f64) -> f64 {
    Composite::new(0.0, 1.0, 32).integrate(|t| (-x * t * t).exp())
}

fn gauss1(a: f64, center: f64, t: f64) -> f64 {
    (-a * (t - center).powi(2)).exp()
}

/// `int g_a g_b` as a product of three axis integrals.
pub fn overlap_quadrature(a: f64, ra: [f64; 3], b: f64, rb: [f64; 3]) -> f64 {
    let rule = Composite::new(-14.0, 14.0, 56);
    (0..3).map(|k| rule.integrate(|t| gauss1(a, ra[k], t) * gauss1(b, rb[k], t))).product()
}

/// `int g_a (-1/2 lap) g_b`, with `lap g_b = (4 b^2 |r - B|^2 - 6 b) g_b`.
pub fn kinetic_quadrature(a: f64, ra: [f64; 3], b: f64, rb: [f64; 3]) -> f64 {
    let rule = Composite::new(-14.0, 14.0, 56);
    let i0: Vec<f64> = (0..3).map(|k| rule.integrate(|t| gauss1(a, ra[k], t) * gauss1(b, rb[k], t))).collect();
    let i2: Vec<f64> = (0..3)
        .map(|k| rule.integrate(|t| (t - rb[k]).powi(2) * gauss1(a, ra[k], t) * gauss1(b, rb[k], t)))
        .collect();
    let s = i0[0] * i0[1] * i0[2];
    let r2 = i2[0] * i0[1] * i0[2] + i0[0] * i2[1] * i0[2] + i0[0] * i0[1] * i2[2];
    -0.5 * (4.0 * b * b * r2 - 6.0 * b * s)
}

/// `int g_a g_b / |r - C|` for centers on the z axis, in spherical
/// coordinates around `C` so the singularity cancels against `r^2`.
pub fn coulomb_quadrature_on_axis(a: f64, za: f64, b: f64, zb: f64, zc: f64) -> f64 {
    let radial = Composite::new(0.0, 16.0, 96);
    let polar = Composite::new(-1.0, 1.0, 64);
    let mut total = 0.0;
    for (r, wr) in radial.points() {
        for (u, wu) in polar.points() {
            let z = zc + r * u;
            let rho2 = r * r * (1.0 - u * u);
            let val = (-a * (rho2 + (z - za).powi(2)) - b * (rho2 + (z - zb).powi(2))).exp();
            total += wr * wu * r * val;
        }
    }
    2.0 * PI * total
}

/// `(ab|cd)` for centers on the z axis: the density `g_a g_b` integrated in
/// cylindrical coordinates against the potential of `g_c g_d`.
pub fn eri_quadrature_on_axis(
    (a, za): (f64, f64),
    (b, zb): (f64, f64),
    potential: impl Fn([f64; 3]) -> f64,
) -> f64 {
    let radial = Composite::new(0.0, 9.0, 36);
    let axial = Composite::new(-12.0, 12.0, 96);
    let mut total = 0.0;
    for (rho, wr) in radial.points() {
        for (z, wz) in axial.points() {
            let density = (-a * (rho * rho + (z - za).powi(2)) - b * (rho * rho + (z - zb).powi(2))).exp();
            if density < 1e-30 {
                continue;
            }
            total += wr * wz * rho * density * potential([rho, 0.0, z]);
        }
    }
    2.0 * PI * total
}

// ---------------------------------------------------------- dense matrices

pub type Dense = Vec<Vec<C>>;

pub fn identity(dim: usize) -> Dense {
    (0..dim).map(|i| (0..dim).map(|j| if i == j { C::new(1.0, 0.0) } else { C::new(0.0, 0.0) }).collect()).collect()
}

pub fn kron(a: &Dense, b: &Dense) -> Dense {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![C::new(0.0, 0.0); n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut out = vec![vec![C::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == C::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn add(a: &Dense, b: &Dense, scale: C) -> Dense {
    a.iter().zip(b).map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + scale * y).collect()).collect()
}

pub fn dagger(a: &Dense) -> Dense {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].conj()).collect()).collect()
}

pub fn mat_vec(a: &Dense, v: &[C]) -> Vec<C> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

pub fn max_diff(a: &Dense, b: &Dense) -> f64 {
    a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn to_dense2(m: [[C; 2]; 2]) -> Dense {
    vec![vec![m[0][0], m[0][1]], vec![m[1][0], m[1][1]]]
}

/// `I (x) ... (x) op (x) ... (x) I` with qubit 0 the rightmost factor.
pub fn embed(op: &Dense, qubit: usize, n: usize) -> Dense {
    let mut out = vec![vec![C::new(1.0, 0.0)]];
    for q in (0..n).rev() {
        out = kron(&out, &if q == qubit { op.clone() } else { identity(2) });
    }
    out
}

fn letter_matrix(l: PauliLetter) -> Dense {
    let (o, i1) = (C::new(0.0, 0.0), C::new(1.0, 0.0));
    match l {
        PauliLetter::I => identity(2),
        PauliLetter::X => vec![vec![o, i1], vec![i1, o]],
        PauliLetter::Y => vec![vec![o, C::new(0.0, -1.0)], vec![C::new(0.0, 1.0), o]],
        PauliLetter::Z => vec![vec![i1, o], vec![o, -i1]],
    }
}

pub fn pauli_dense(p: &PauliString) -> Dense {
    let mut out = vec![vec![C::new(1.0, 0.0)]];
    for q in (0..p.n_qubits()).rev() {
        out = kron(&out, &letter_matrix(p.letter(q)));
    }
    out
}

/// Full `2^n x 2^n` matrix of a bound gate.
pub fn gate_dense(gate: &Gate, n: usize) -> Dense {
    match gate {
        Gate::Cnot { control, target } => {
            let (o, i1) = (C::new(0.0, 0.0), C::new(1.0, 0.0));
            let p0 = vec![vec![i1, o], vec![o, o]];
            let p1 = vec![vec![o, o], vec![o, i1]];
            let x = letter_matrix(PauliLetter::X);
            let off = embed(&p0, *control, n);
            let on = matmul(&embed(&p1, *control, n), &embed(&x, *target, n));
            add(&off, &on, i1)
        }
        Gate::PauliRotation { axis, angle } => {
            let t = angle.value().unwrap() / 2.0;
            add(&identity(1 << n).iter().map(|r| r.iter().map(|v| v * t.cos()).collect()).collect(), &pauli_dense(axis), C::new(0.0, -t.sin()))
        }
        g => embed(&to_dense2(g.single_qubit_matrix().unwrap()), g.qubits()[0], n),
    }
}

/// `exp(a)` by scaling and squaring with a Taylor series.
pub fn expm(a: &Dense) -> Dense {
    let n = a.len();
    let norm = a.iter().map(|r| r.iter().map(|v| v.norm()).sum::<f64>()).fold(0.0, f64::max);
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scale = C::new(0.5f64.powi(squarings as i32), 0.0);
    let scaled: Dense = a.iter().map(|r| r.iter().map(|v| v * scale).collect()).collect();
    let mut result = identity(n);
    let mut term = identity(n);
    for k in 1..30 {
        term = matmul(&term, &scaled).iter().map(|r| r.iter().map(|v| v / k as f64).collect()).collect();
        result = add(&result, &term, C::new(1.0, 0.0));
    }
    for _ in 0..squarings {
        result = matmul(&result, &result);
    }
    result
}
