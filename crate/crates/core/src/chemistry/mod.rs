//! Electronic structure for hydrogen-only molecules in the STO-3G basis.
//!
//! Everything here works in atomic units; [`ANGSTROM_PER_BOHR`] is the one
//! conversion constant used at the input boundary.

mod basis;
mod geometry;
pub mod integrals;
mod scf;
mod spin;

pub use basis::{sto3g_basis, ContractedGaussian, STO3G_H_COEFFICIENTS, STO3G_H_EXPONENTS};
pub use geometry::{Atom, LengthUnit, MoleculeGeometry, ANGSTROM_PER_BOHR};
pub use integrals::{boys_f0, compute_integrals, IntegralSet};
pub use scf::{hartree_fock, HartreeFockResult, SCF_ENERGY_TOL, SCF_MAX_ITERATIONS};
pub use spin::{spin_orbital_integrals, Spin, SpinOrbitalIntegrals};
