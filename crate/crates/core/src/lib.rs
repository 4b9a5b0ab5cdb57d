//! Variational quantum eigensolver toolkit for the hydrogen molecule.
//!
//! The crate is layered bottom-up:
//!
//! - [`statevector`]: dense n-qubit simulation and circuits
//! - [`pauli`]: Pauli-string algebra, expectation values, exact diagonalization
//! - [`fermion`]: second-quantized operators and the Jordan-Wigner mapping
//! - [`chemistry`]: STO-3G integrals, restricted Hartree-Fock, spin-orbital integrals
//! - [`ansatz`]: Hartree-Fock reference circuit and UCCSD
//! - [`vqe`]: objective, gradients, L-BFGS and Nelder-Mead

pub mod ansatz;
pub mod chemistry;
pub mod error;
pub mod fermion;
pub mod linalg;
pub mod pauli;
pub mod statevector;
pub mod vqe;

pub use error::{Error, Result};
pub use num_complex::Complex64;
