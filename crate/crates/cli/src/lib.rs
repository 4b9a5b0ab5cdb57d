//! Library side of the `h2vqe` command-line tool.

pub mod circuit_text;
pub mod report;
pub mod scan;

use std::time::Instant;

use thiserror::Error;
use vqe_core::chemistry::{
    compute_integrals, hartree_fock, spin_orbital_integrals, sto3g_basis, HartreeFockResult, MoleculeGeometry,
};
use vqe_core::fermion::{assemble_hamiltonian, jordan_wigner};
use vqe_core::pauli::PauliSum;
use vqe_core::vqe::{VqeConfig, VqeProblem, VqeResult};

pub use circuit_text::{parse_circuit, CircuitParseError};
pub use report::SingleReport;
pub use scan::{format_csv, parse_csv, run_scan, ScanRow, ScanSpec, ScanSummary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_CONVERGED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Parse(#[from] CircuitParseError),
    #[error(transparent)]
    Core(#[from] vqe_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(vqe_core::Error::ScfNotConverged(_)) => EXIT_NOT_CONVERGED,
            _ => EXIT_USAGE,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn check_distance(distance: f64) -> CliResult<()> {
    if !(distance > 0.0) || !distance.is_finite() {
        return Err(CliError::Usage(format!("distance must be positive, got {distance}")));
    }
    Ok(())
}

/// Everything computed for one bond length.
#[derive(Clone, Debug)]
pub struct PointResult {
    /// Angstrom.
    pub distance: f64,
    pub hartree_fock: HartreeFockResult,
    pub problem: VqeProblem,
    pub exact_energy: f64,
    pub vqe: VqeResult,
    pub wall_time_seconds: f64,
}

/// Qubit problem for H2 at `distance` Angstrom.
pub fn hydrogen_problem(distance: f64) -> CliResult<(HartreeFockResult, VqeProblem)> {
    check_distance(distance)?;
    let geometry = MoleculeGeometry::hydrogen_molecule(distance)?;
    let ints = compute_integrals(&sto3g_basis(&geometry)?, &geometry)?;
    let hf = hartree_fock(&ints, geometry.n_electrons())?;
    let so = spin_orbital_integrals(&ints, &hf)?;
    let problem = VqeProblem::from_integrals(&so, geometry.n_electrons())?;
    Ok((hf, problem))
}

/// HF, exact diagonalization and VQE at one distance.
pub fn run_point(distance: f64, config: &VqeConfig) -> CliResult<PointResult> {
    config.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let start = Instant::now();
    let (hartree_fock, problem) = hydrogen_problem(distance)?;
    let exact_energy = problem.hamiltonian.exact_ground_energy()?.0;
    let vqe = problem.solve(config)?;
    Ok(PointResult {
        distance,
        hartree_fock,
        problem,
        exact_energy,
        vqe,
        wall_time_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Jordan-Wigner Hamiltonian at `distance`. The constant term is the
/// electronic part only unless `include_nuclear` is set.
pub fn hamiltonian_at(distance: f64, include_nuclear: bool) -> CliResult<(PauliSum, f64)> {
    check_distance(distance)?;
    let geometry = MoleculeGeometry::hydrogen_molecule(distance)?;
    let ints = compute_integrals(&sto3g_basis(&geometry)?, &geometry)?;
    let hf = hartree_fock(&ints, geometry.n_electrons())?;
    let mut so = spin_orbital_integrals(&ints, &hf)?;
    let nuclear = so.h0;
    if !include_nuclear {
        so.h0 = 0.0;
    }
    Ok((jordan_wigner(&assemble_hamiltonian(&so)?)?, nuclear))
}

/// Text dump with a leading comment block.
pub fn dump_hamiltonian(distance: f64, include_nuclear: bool) -> CliResult<String> {
    let (h, nuclear) = hamiltonian_at(distance, include_nuclear)?;
    let mut out = format!("# distance_angstrom {distance:?}\n# nuclear_repulsion {nuclear:?}\n");
    out.push_str(&format!("# constant_term {}\n", if include_nuclear { "total" } else { "electronic" }));
    out.push_str(&h.to_text());
    Ok(out)
}
