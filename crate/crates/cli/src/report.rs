use serde::Serialize;
use vqe_core::vqe::VqeConfig;

use crate::PointResult;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HistoryEntry {
    pub evaluation: usize,
    pub energy_hartree: f64,
}

/// JSON document written by `single`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingleReport {
    pub distance_angstrom: f64,
    pub hf_hartree: f64,
    pub vqe_hartree: f64,
    pub exact_hartree: f64,
    pub abs_error_hartree: f64,
    /// `|vqe - exact| / |exact|`
    pub relative_error: f64,
    pub optimal_params: Vec<f64>,
    pub history: Vec<HistoryEntry>,
    pub n_evaluations: usize,
    pub iterations: usize,
    pub converged: bool,
    pub optimizer: String,
    pub max_iterations: usize,
    pub shots: usize,
    pub seed: u64,
    pub wall_time_seconds: f64,
}

impl SingleReport {
    pub fn new(point: &PointResult, config: &VqeConfig) -> Self {
        let abs_error = (point.vqe.energy - point.exact_energy).abs();
        Self {
            distance_angstrom: point.distance,
            hf_hartree: point.hartree_fock.hf_total_energy,
            vqe_hartree: point.vqe.energy,
            exact_hartree: point.exact_energy,
            abs_error_hartree: abs_error,
            relative_error: abs_error / point.exact_energy.abs(),
            optimal_params: point.vqe.optimal_params.clone(),
            history: point
                .vqe
                .history
                .iter()
                .map(|&(evaluation, energy_hartree)| HistoryEntry { evaluation, energy_hartree })
                .collect(),
            n_evaluations: point.vqe.n_evaluations,
            iterations: point.vqe.iterations,
            converged: point.vqe.converged,
            optimizer: config.optimizer.to_string(),
            max_iterations: config.max_iterations,
            shots: config.shots,
            seed: config.seed,
            wall_time_seconds: point.wall_time_seconds,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
