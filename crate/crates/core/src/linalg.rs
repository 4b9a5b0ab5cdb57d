//! Small dense linear algebra: row-major real matrices and cyclic Jacobi
//! eigensolvers for symmetric and Hermitian matrices.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{invalid_arg, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| (self[(i, j)] - self[(j, i)]).abs() <= tol))
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order and the matching eigenvectors as
/// the columns of the second matrix.
pub fn symmetric_eigen(a: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    if !a.is_square() {
        return Err(invalid_arg("eigensolver needs a square matrix"));
    }
    let n = a.rows;
    let scale = a.data.iter().fold(0.0_f64, |m, x| m.max(x.abs())).max(1.0);
    if !a.is_symmetric(1e-10 * scale) {
        return Err(invalid_arg("eigensolver needs a symmetric matrix"));
    }
    let mut m = a.clone();
    let mut v = Matrix::identity(n);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)] * m[(i, j)])
            .sum();
        if off.sqrt() <= f64::EPSILON * scale * 1e-2 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = m[(p, p)];
                let aqq = m[(q, q)];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].total_cmp(&m[(j, j)]));
    let values = order.iter().map(|&i| m[(i, i)]).collect();
    let vectors = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok((values, vectors))
}

/// Smallest eigenpair of a Hermitian matrix given row-major.
///
/// A Hermitian `A + iB` is embedded as the real symmetric `[[A, -B], [B, A]]`,
/// whose spectrum is that of the original with every eigenvalue doubled.
pub fn hermitian_ground(dim: usize, h: &[Complex64]) -> Result<(f64, Vec<Complex64>)> {
    if h.len() != dim * dim {
        return Err(invalid_arg("matrix length does not match dimension"));
    }
    let is_real = h.iter().all(|z| z.im == 0.0);
    if is_real {
        let a = Matrix::from_fn(dim, dim, |i, j| h[i * dim + j].re);
        let (values, vectors) = symmetric_eigen(&a)?;
        let ground = vectors.column(0).into_iter().map(|x| Complex64::new(x, 0.0)).collect();
        return Ok((values[0], ground));
    }

    let n2 = 2 * dim;
    let embedded = Matrix::from_fn(n2, n2, |i, j| {
        let z = h[(i % dim) * dim + (j % dim)];
        match (i < dim, j < dim) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let (values, vectors) = symmetric_eigen(&embedded)?;
    let col = vectors.column(0);
    let mut ground: Vec<Complex64> = (0..dim).map(|i| Complex64::new(col[i], col[i + dim])).collect();
    let norm = ground.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    ground.iter_mut().for_each(|z| *z /= norm);
    Ok((values[0], ground))
}

/// `S^{-1/2}` of a symmetric positive-definite matrix.
pub fn inverse_sqrt_spd(s: &Matrix) -> Result<Matrix> {
    let (values, vectors) = symmetric_eigen(s)?;
    if values.iter().any(|&x| x <= 1e-14) {
        return Err(invalid_arg("matrix is not positive definite"));
    }
    let n = s.rows;
    Ok(Matrix::from_fn(n, n, |i, j| {
        (0..n).map(|k| vectors[(i, k)] * vectors[(j, k)] / values[k].sqrt()).sum()
    }))
}
