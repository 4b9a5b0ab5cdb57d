use std::f64::consts::PI;

use super::geometry::MoleculeGeometry;
use super::integrals::overlap_primitive;
use crate::error::{Error, Result};

pub const STO3G_H_EXPONENTS: [f64; 3] = [3.42525091, 0.62391373, 0.16885540];
pub const STO3G_H_COEFFICIENTS: [f64; 3] = [0.15432897, 0.53532814, 0.44463454];

/// Contracted s-type Gaussian `sum_i c_i exp(-a_i |r - center|^2)`.
///
/// `coefficients` are the raw contraction weights; `norms` folds in the
/// primitive normalization and the overall contraction normalization, so the
/// function actually evaluated uses `coefficients[i] * norms[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContractedGaussian {
    pub center: [f64; 3],
    pub exponents: Vec<f64>,
    pub coefficients: Vec<f64>,
    norms: Vec<f64>,
}

impl ContractedGaussian {
    pub fn new(center: [f64; 3], exponents: Vec<f64>, coefficients: Vec<f64>) -> Result<Self> {
        if exponents.len() != coefficients.len() || exponents.is_empty() {
            return Err(crate::error::invalid_arg("exponent and coefficient lists must match"));
        }
        if exponents.iter().any(|&a| !(a > 0.0)) {
            return Err(crate::error::invalid_arg("exponents must be positive"));
        }
        let primitive: Vec<f64> = exponents.iter().map(|&a| (2.0 * a / PI).powf(0.75)).collect();
        let mut self_overlap = 0.0;
        for i in 0..exponents.len() {
            for j in 0..exponents.len() {
                self_overlap += coefficients[i]
                    * coefficients[j]
                    * primitive[i]
                    * primitive[j]
                    * overlap_primitive(exponents[i], center, exponents[j], center);
            }
        }
        let scale = self_overlap.sqrt().recip();
        let norms = primitive.iter().map(|n| n * scale).collect();
        Ok(Self { center, exponents, coefficients, norms })
    }

    pub fn sto3g_hydrogen(center: [f64; 3]) -> Self {
        Self::new(center, STO3G_H_EXPONENTS.to_vec(), STO3G_H_COEFFICIENTS.to_vec())
            .expect("published parameters are valid")
    }

    /// `(exponent, normalized weight)` pairs.
    pub fn primitives(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.exponents
            .iter()
            .zip(&self.coefficients)
            .zip(&self.norms)
            .map(|((&a, &c), &n)| (a, c * n))
    }

    pub fn value_at(&self, r: [f64; 3]) -> f64 {
        let d2 = super::geometry::distance_sq(r, self.center);
        self.primitives().map(|(a, w)| w * (-a * d2).exp()).sum()
    }
}

/// One contracted 1s function per hydrogen atom.
pub fn sto3g_basis(geometry: &MoleculeGeometry) -> Result<Vec<ContractedGaussian>> {
    geometry
        .atoms
        .iter()
        .map(|atom| {
            if atom.symbol != "H" {
                return Err(Error::Unsupported(format!(
                    "no STO-3G parameters for element '{}'",
                    atom.symbol
                )));
            }
            Ok(ContractedGaussian::sto3g_hydrogen(atom.position))
        })
        .collect()
}
