use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use h2vqe::scan::{format_csv, run_scan, ScanRow, ScanSpec, ScanSummary};
use h2vqe::{
    dump_hamiltonian, parse_circuit, run_point, CliError, CliResult, SingleReport, EXIT_NOT_CONVERGED, EXIT_OK,
    EXIT_USAGE,
};
use vqe_core::statevector::{format_bits, Statevector};
use vqe_core::vqe::{GradientMode, OptimizerKind, VqeConfig};

/// H2 ground-state energies from a statevector variational eigensolver.
#[derive(Parser)]
#[command(name = "h2vqe", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dissociation curve over a grid of bond lengths, as CSV.
    Scan {
        #[arg(long, default_value_t = 0.2)]
        dmin: f64,
        #[arg(long, default_value_t = 2.5)]
        dmax: f64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        #[command(flatten)]
        vqe: VqeArgs,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// One bond length, as a JSON report.
    Single {
        /// Angstrom.
        #[arg(long)]
        distance: f64,
        #[command(flatten)]
        vqe: VqeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Qubit Hamiltonian in `<re> <im> <letters>` text form.
    DumpHamiltonian {
        #[arg(long)]
        distance: f64,
        /// Fold the nuclear repulsion into the identity coefficient.
        #[arg(long)]
        include_nuclear: bool,
    },
    /// Execute a circuit file and print amplitudes or a histogram.
    RunCircuit {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        shots: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct VqeArgs {
    /// lbfgs or nelder-mead.
    #[arg(long, default_value = "lbfgs")]
    optimizer: String,
    /// 0 for exact expectation values.
    #[arg(long, default_value_t = 0)]
    shots: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    maxiter: usize,
    /// parameter-shift or finite-difference.
    #[arg(long, default_value = "parameter-shift")]
    gradient: String,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

impl VqeArgs {
    fn config(&self) -> CliResult<VqeConfig> {
        let usage = |e: vqe_core::Error| CliError::Usage(e.to_string());
        let config = VqeConfig {
            optimizer: self.optimizer.parse::<OptimizerKind>().map_err(usage)?,
            max_iterations: self.maxiter,
            gradient_mode: self.gradient.parse::<GradientMode>().map_err(usage)?,
            convergence_tol: self.tol,
            shots: self.shots,
            seed: self.seed,
            ..Default::default()
        };
        config.validate().map_err(usage)?;
        Ok(config)
    }
}

fn write_output(path: Option<&PathBuf>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Scan { dmin, dmax, step, vqe, out, jobs } => {
            let spec = ScanSpec { d_min: dmin, d_max: dmax, step, config: vqe.config()?, jobs };
            let points = run_scan(&spec)?;
            let rows: Vec<ScanRow> = points.iter().map(ScanRow::from).collect();
            write_output(out.as_ref(), &format_csv(&rows))?;
            let summary = ScanSummary::from_rows(&rows).expect("grid is never empty");
            eprintln!("{summary}");
            Ok(if summary.n_not_converged == 0 { EXIT_OK } else { EXIT_NOT_CONVERGED })
        }
        Command::Single { distance, vqe, out } => {
            let config = vqe.config()?;
            let point = run_point(distance, &config)?;
            let report = SingleReport::new(&point, &config);
            write_output(out.as_ref(), &(report.to_json() + "\n"))?;
            eprintln!(
                "hf {:.6}  vqe {:.6}  exact {:.6}  Hartree",
                report.hf_hartree, report.vqe_hartree, report.exact_hartree
            );
            Ok(if report.converged { EXIT_OK } else { EXIT_NOT_CONVERGED })
        }
        Command::DumpHamiltonian { distance, include_nuclear } => {
            print!("{}", dump_hamiltonian(distance, include_nuclear)?);
            Ok(EXIT_OK)
        }
        Command::RunCircuit { file, shots, seed } => {
            let text = fs::read_to_string(&file).map_err(|e| CliError::Io(format!("{}: {e}", file.display())))?;
            let circuit = parse_circuit(&text)?;
            let n = circuit.n_qubits();
            let state = circuit.run(&Statevector::zero(n)?, &[])?;
            if shots == 0 {
                for (i, a) in state.amplitudes().iter().enumerate() {
                    if a.norm() > 1e-12 {
                        println!("{} {:.6} {:.6}", format_bits(i, n), a.re, a.im);
                    }
                }
            } else {
                for (bits, count) in state.sample_measurements(shots, seed)? {
                    println!("{bits} {count}");
                }
            }
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    debug_assert!([EXIT_OK, EXIT_NOT_CONVERGED, EXIT_USAGE].contains(&code));
    ExitCode::from(code as u8)
}
