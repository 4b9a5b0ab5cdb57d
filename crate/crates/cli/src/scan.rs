use std::fmt::Write as _;

use rayon::prelude::*;
use vqe_core::vqe::VqeConfig;

use crate::{run_point, CliError, CliResult, PointResult};

pub const CSV_HEADER: &str =
    "distance_angstrom,hf_hartree,vqe_hartree,exact_hartree,abs_error_hartree,n_evals,converged";

#[derive(Clone, Debug, PartialEq)]
pub struct ScanSpec {
    /// Angstrom.
    pub d_min: f64,
    pub d_max: f64,
    pub step: f64,
    pub config: VqeConfig,
    pub jobs: usize,
}

impl Default for ScanSpec {
    fn default() -> Self {
        Self { d_min: 0.2, d_max: 2.5, step: 0.05, config: VqeConfig::default(), jobs: 1 }
    }
}

impl ScanSpec {
    pub fn validate(&self) -> CliResult<()> {
        let usage = |m: &str| Err(CliError::Usage(m.into()));
        if !(self.d_min > 0.0) {
            return usage("dmin must be positive");
        }
        if !(self.step > 0.0) {
            return usage("step must be positive");
        }
        if !(self.d_min <= self.d_max) {
            return usage("dmin must not exceed dmax");
        }
        if self.jobs == 0 {
            return usage("jobs must be at least 1");
        }
        self.config.validate().map_err(|e| CliError::Usage(e.to_string()))
    }

    /// `d_min + k step` for every `k` that stays within `d_max`.
    pub fn grid(&self) -> Vec<f64> {
        let n = ((self.d_max - self.d_min) / self.step + 1e-9).floor() as usize + 1;
        (0..n).map(|k| self.d_min + k as f64 * self.step).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub distance: f64,
    pub hf_energy: f64,
    pub vqe_energy: f64,
    pub exact_energy: f64,
    pub abs_error: f64,
    pub n_evaluations: usize,
    pub converged: bool,
}

impl From<&PointResult> for ScanRow {
    fn from(p: &PointResult) -> Self {
        Self {
            distance: p.distance,
            hf_energy: p.hartree_fock.hf_total_energy,
            vqe_energy: p.vqe.energy,
            exact_energy: p.exact_energy,
            abs_error: (p.vqe.energy - p.exact_energy).abs(),
            n_evaluations: p.vqe.n_evaluations,
            converged: p.vqe.converged,
        }
    }
}

/// Runs every grid point on `spec.jobs` worker threads; rows come back in
/// distance order.
pub fn run_scan(spec: &ScanSpec) -> CliResult<Vec<PointResult>> {
    spec.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.jobs)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    pool.install(|| spec.grid().into_par_iter().map(|d| run_point(d, &spec.config)).collect())
}

pub fn format_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{:.6},{:.6},{:.6},{:.6},{:.6},{},{}",
            r.distance, r.hf_energy, r.vqe_energy, r.exact_energy, r.abs_error, r.n_evaluations, r.converged
        )
        .expect("writing to a String");
    }
    out
}

pub fn parse_csv(text: &str) -> CliResult<Vec<ScanRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == CSV_HEADER => {}
        _ => return Err(CliError::Usage("missing or unexpected CSV header".into())),
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let bad = |what: &str| CliError::Usage(format!("line {}: {what}", i + 1));
        let f: Vec<&str> = line.split(',').map(str::trim).collect();
        if f.len() != 7 {
            return Err(bad("expected 7 columns"));
        }
        let num = |k: usize| f[k].parse::<f64>().map_err(|_| bad("bad number"));
        rows.push(ScanRow {
            distance: num(0)?,
            hf_energy: num(1)?,
            vqe_energy: num(2)?,
            exact_energy: num(3)?,
            abs_error: num(4)?,
            n_evaluations: f[5].parse().map_err(|_| bad("bad evaluation count"))?,
            converged: f[6].parse().map_err(|_| bad("bad converged flag"))?,
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanSummary {
    pub n_points: usize,
    pub min_distance: f64,
    pub min_energy: f64,
    pub worst_abs_error: f64,
    pub n_not_converged: usize,
}

impl ScanSummary {
    pub fn from_rows(rows: &[ScanRow]) -> Option<Self> {
        let best = rows.iter().min_by(|a, b| a.vqe_energy.total_cmp(&b.vqe_energy))?;
        Some(Self {
            n_points: rows.len(),
            min_distance: best.distance,
            min_energy: best.vqe_energy,
            worst_abs_error: rows.iter().map(|r| r.abs_error).fold(0.0, f64::max),
            n_not_converged: rows.iter().filter(|r| !r.converged).count(),
        })
    }
}

impl std::fmt::Display for ScanSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} points; minimum {:.6} Hartree at {:.3} Angstrom; worst |vqe - exact| {:.2e}; {} not converged",
            self.n_points, self.min_energy, self.min_distance, self.worst_abs_error, self.n_not_converged
        )
    }
}
