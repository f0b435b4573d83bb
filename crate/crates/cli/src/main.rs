//! `ampamp`: spectra, simulation traces, resonance sweeps and scans, circuit
//! compilation, and fidelity scoring from one binary.
//!
//! Exit status: 0 on success, 1 on input errors, 2 on capacity errors.

use std::f64::consts::PI;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use ampamp::circuit::{
    compile_cost_oracle_linear, compile_diffusion, compile_experiment, Circuit, ExperimentKind,
};
use ampamp::collective::{run, Oracle};
use ampamp::engine::{
    self, default_k_cap, linspace, linspace_scales, write_scan_csv, write_sweep_csv,
};
use ampamp::fidelity::{
    exact_records, f_metric, read_records, synthesize_records, write_records, write_report,
    ExperimentSpec,
};
use ampamp::grover::resonance_curve;
use ampamp::spectrum::{parse_exact, Cost, CostSpectrum, WeightSet};
use ampamp::{Error, PhaseScale};

#[derive(Parser)]
#[command(
    name = "ampamp",
    version,
    about = "Amplitude-amplification simulator, parameter engine, and circuit compiler"
)]
struct Cli {
    /// Worker threads for sweep/scan (default: AMPAMP_JOBS, then all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Interpret angle-valued inputs (--ps, --theta, --phi, --param, grids)
    /// as multiples of pi
    #[arg(long = "pi-units", global = true)]
    pi_units: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the exact cost spectrum of a weight file (CSV: C,count)
    #[command(group(ArgGroup::new("method").args(["dp", "brute"])))]
    Spectrum {
        /// JSON weight file: {"weights": [...]}
        #[arg(long)]
        weights: PathBuf,
        /// Subset-sum counting construction (default)
        #[arg(long)]
        dp: bool,
        /// Brute-force enumeration over all 2^N bit strings
        #[arg(long)]
        brute: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate the iteration and export the trace (CSV: k,C,count,prob)
    #[command(group(ArgGroup::new("oracle").required(true).args(["weights", "marked"])))]
    Simulate {
        /// JSON weight file for a cost oracle
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Marked-state count for a two-class oracle (needs --n)
        #[arg(long)]
        marked: Option<u64>,
        /// Qubit count (two-class oracle only)
        #[arg(long)]
        n: Option<u32>,
        /// Oracle phase scale in radians per cost unit (phase for --marked)
        #[arg(long)]
        ps: String,
        /// Diffusion angle in radians
        #[arg(long)]
        theta: String,
        /// Iterations to record
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also export the between-operator amplitudes
        /// (CSV: k,C,count,re_alpha,im_alpha,re_mean,im_mean)
        #[arg(long = "plane-out")]
        plane_out: Option<PathBuf>,
    },
    /// First-peak probability over a phase-scale grid
    /// (CSV: ps,target,peak_prob,k_peak)
    Sweep {
        #[arg(long)]
        weights: PathBuf,
        /// Comma-separated target cost values
        #[arg(long)]
        targets: String,
        /// Grid as start,stop,count (inclusive)
        #[arg(long = "ps-grid")]
        ps_grid: String,
        #[arg(long)]
        theta: String,
        #[arg(long = "k-cap")]
        k_cap: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply the phase-scale rule to every class
    /// (CSV: C,count,ps,sigma_ps,peak_prob,k_peak)
    Scan {
        #[arg(long)]
        weights: PathBuf,
        #[arg(long)]
        theta: String,
        #[arg(long = "k-cap")]
        k_cap: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Peak achievable probability vs oracle phase (CSV: phi,p_max)
    Resonance {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        theta: String,
        /// Grid as start,stop,count; default 0,2pi,101
        #[arg(long = "phi-grid")]
        phi_grid: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compile a circuit to OpenQASM-style text plus metrics JSON
    #[command(group(
        ArgGroup::new("what").required(true).args(["experiment", "diffusion", "oracle"])
    ))]
    Compile {
        /// Experiment number (1, 2, or 3); needs --n and --param
        #[arg(long)]
        experiment: Option<u8>,
        /// Diffusion operator; needs --n and --param
        #[arg(long)]
        diffusion: bool,
        /// Linear cost oracle; needs --weights and --param (the phase scale)
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Scale oracle angles by pi/N' (the experiment-circuit convention)
        #[arg(long)]
        scaled: bool,
        /// The circuit parameter, in radians
        #[arg(long)]
        param: String,
        /// QASM destination (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Metrics JSON destination (omitted unless given)
        #[arg(long)]
        metrics: Option<PathBuf>,
    },
    /// Score a measurement-record file against theory (JSON report)
    Fidelity {
        #[arg(long)]
        records: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate synthetic measurement records (JSON, same format as input)
    Synth {
        #[arg(long)]
        experiment: u8,
        #[arg(long)]
        n: u32,
        /// Mix toward the fully decohered uniform distribution, in [0, 1]
        #[arg(long, default_value_t = 0.0)]
        lambda: f64,
        #[arg(long, default_value_t = 10_000)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Grid as start,stop,count; default 0,2pi,100
        #[arg(long)]
        grid: Option<String>,
        /// Emit exact theory counts (fractional, no sampling)
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };
    init_thread_pool(cli.jobs);
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(if err.is_capacity() { 2 } else { 1 })
        }
    }
}

fn init_thread_pool(jobs: Option<usize>) {
    let jobs = jobs.or_else(|| {
        std::env::var("AMPAMP_JOBS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(jobs) = jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global();
    }
}

/// Angle input: plain radians, or multiples of pi under --pi-units.
fn parse_angle(text: &str, pi_units: bool) -> Result<f64, Error> {
    let value: f64 = text
        .trim()
        .parse()
        .map_err(|e| Error::InvalidInput(format!("bad angle {text:?}: {e}")))?;
    Ok(if pi_units { value * PI } else { value })
}

/// Phase-scale input. Under --pi-units the literal is parsed exactly so the
/// scale stays an exact rational multiple of pi.
fn parse_scale(text: &str, pi_units: bool) -> Result<PhaseScale, Error> {
    if pi_units {
        Ok(PhaseScale::pi_times(parse_exact(text)?))
    } else {
        Ok(PhaseScale::radians(text.trim().parse().map_err(|e| {
            Error::InvalidInput(format!("bad phase scale {text:?}: {e}"))
        })?))
    }
}

fn parse_grid_spec(text: &str, pi_units: bool) -> Result<(f64, f64, usize), Error> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::InvalidInput(format!(
            "grid must be start,stop,count, got {text:?}"
        )));
    }
    let start = parse_angle(parts[0], pi_units)?;
    let stop = parse_angle(parts[1], pi_units)?;
    let count: usize = parts[2]
        .trim()
        .parse()
        .map_err(|e| Error::InvalidInput(format!("bad grid count {:?}: {e}", parts[2])))?;
    if count == 0 {
        return Err(Error::InvalidInput("grid count must be positive".into()));
    }
    Ok((start, stop, count))
}

fn parse_targets(text: &str) -> Result<Vec<Cost>, Error> {
    text.split(',').map(parse_exact).collect()
}

fn load_weights(path: &Path) -> Result<WeightSet, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    WeightSet::from_json(&text)
}

/// Write through a closure to either a file or stdout.
fn with_output<F>(path: &Option<PathBuf>, write: F) -> Result<(), Error>
where
    F: FnOnce(&mut dyn Write) -> Result<(), Error>,
{
    match path {
        Some(path) => {
            let file = fs::File::create(path).map_err(|e| {
                Error::InvalidInput(format!("cannot create {}: {e}", path.display()))
            })?;
            let mut out = BufWriter::new(file);
            write(&mut out)?;
            out.flush()?;
            Ok(())
        }
        None => {
            let stdout = io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            write(&mut out)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(), Error> {
    let pi_units = cli.pi_units;
    match &cli.command {
        Command::Spectrum {
            weights,
            dp: _,
            brute,
            out,
        } => {
            let w = load_weights(weights)?;
            let spectrum = if *brute {
                CostSpectrum::brute_force(|z| w.evaluate_index(z), w.n_qubits())?
            } else {
                CostSpectrum::from_weights(&w)?
            };
            with_output(out, |o| Ok(spectrum.write_csv(o)?))
        }
        Command::Simulate {
            weights,
            marked,
            n,
            ps,
            theta,
            k,
            out,
            plane_out,
        } => {
            let theta = parse_angle(theta, pi_units)?;
            let oracle = match (weights, marked) {
                (Some(path), None) => {
                    let w = load_weights(path)?;
                    Oracle::cost(CostSpectrum::from_weights(&w)?, parse_scale(ps, pi_units)?)
                }
                (None, Some(marked)) => {
                    let n = n.ok_or_else(|| {
                        Error::InvalidInput("--marked needs --n for the qubit count".into())
                    })?;
                    Oracle::grover(n, *marked, parse_angle(ps, pi_units)?)?
                }
                _ => unreachable!("clap group enforces exactly one oracle source"),
            };
            let trace = run(&oracle, theta, *k);
            with_output(out, |o| Ok(trace.write_csv(o)?))?;
            if let Some(path) = plane_out {
                with_output(&Some(path.clone()), |o| {
                    Ok(trace.write_complex_plane_csv(o)?)
                })?;
            }
            Ok(())
        }
        Command::Sweep {
            weights,
            targets,
            ps_grid,
            theta,
            k_cap,
            out,
        } => {
            let w = load_weights(weights)?;
            let spectrum = CostSpectrum::from_weights(&w)?;
            let targets = parse_targets(targets)?;
            let (start, stop, count) = parse_grid_spec(ps_grid, pi_units)?;
            let grid = linspace_scales(start, stop, count);
            let theta = parse_angle(theta, pi_units)?;
            let k_cap = k_cap.unwrap_or_else(|| default_k_cap(w.n_qubits()));
            let rows = engine::ps_sweep(&spectrum, &targets, &grid, theta, k_cap)?;
            with_output(out, |o| Ok(write_sweep_csv(&rows, o)?))
        }
        Command::Scan {
            weights,
            theta,
            k_cap,
            out,
        } => {
            let w = load_weights(weights)?;
            let spectrum = CostSpectrum::from_weights(&w)?;
            let theta = parse_angle(theta, pi_units)?;
            let k_cap = k_cap.unwrap_or_else(|| default_k_cap(w.n_qubits()));
            let scan = engine::spectrum_scan(&spectrum, theta, k_cap)?;
            with_output(out, |o| Ok(write_scan_csv(&scan, o)?))
        }
        Command::Resonance {
            n,
            theta,
            phi_grid,
            out,
        } => {
            let theta = parse_angle(theta, pi_units)?;
            let grid = match phi_grid {
                Some(spec) => {
                    let (start, stop, count) = parse_grid_spec(spec, pi_units)?;
                    linspace(start, stop, count)
                }
                None => linspace(0.0, 2.0 * PI, 101),
            };
            let curve = resonance_curve(*n, theta, &grid)?;
            with_output(out, |o| {
                writeln!(o, "phi,p_max")?;
                for (phi, p) in &curve {
                    writeln!(o, "{phi},{p}")?;
                }
                Ok(())
            })
        }
        Command::Compile {
            experiment,
            diffusion,
            oracle,
            n,
            weights,
            scaled,
            param,
            out,
            metrics,
        } => {
            let circuit: Circuit = if let Some(number) = experiment {
                let kind = ExperimentKind::from_number(*number)?;
                let n = n.ok_or_else(|| Error::InvalidInput("--experiment needs --n".into()))?;
                compile_experiment(kind, n, parse_angle(param, pi_units)?)?
            } else if *diffusion {
                let n = n.ok_or_else(|| Error::InvalidInput("--diffusion needs --n".into()))?;
                compile_diffusion(n, parse_angle(param, pi_units)?)?
            } else {
                debug_assert!(*oracle);
                let path = weights
                    .as_ref()
                    .ok_or_else(|| Error::InvalidInput("--oracle needs --weights".into()))?;
                let w = load_weights(path)?;
                compile_cost_oracle_linear(&w, parse_angle(param, pi_units)?, *scaled)?
            };
            with_output(out, |o| {
                o.write_all(ampamp::qasm::emit_qasm(&circuit).as_bytes())?;
                Ok(())
            })?;
            if let Some(path) = metrics {
                with_output(&Some(path.clone()), |o| {
                    serde_json::to_writer_pretty(&mut *o, &circuit.metrics())
                        .map_err(|e| Error::InvalidInput(format!("cannot write metrics: {e}")))?;
                    writeln!(o)?;
                    Ok(())
                })?;
            }
            Ok(())
        }
        Command::Fidelity { records, out } => {
            let file = fs::File::open(records).map_err(|e| {
                Error::InvalidInput(format!("cannot read {}: {e}", records.display()))
            })?;
            let (kind, n_qubits, records) = read_records(io::BufReader::new(file))?;
            let grid: Vec<f64> = records.iter().map(|r| r.parameter).collect();
            let spec = ExperimentSpec::with_grid(kind, n_qubits, grid)?;
            let report = f_metric(&spec, &records)?;
            with_output(out, |o| {
                write_report(&mut *o, &report)?;
                writeln!(o)?;
                Ok(())
            })
        }
        Command::Synth {
            experiment,
            n,
            lambda,
            shots,
            seed,
            grid,
            exact,
            out,
        } => {
            let kind = ExperimentKind::from_number(*experiment)?;
            let spec = match grid {
                Some(text) => {
                    let (start, stop, count) = parse_grid_spec(text, pi_units)?;
                    ExperimentSpec::with_grid(kind, *n, linspace(start, stop, count))?
                }
                None => ExperimentSpec::new(kind, *n)?,
            };
            let records = if *exact {
                exact_records(&spec, *shots)
            } else {
                synthesize_records(&spec, *shots, *lambda, *seed)?
            };
            with_output(out, |o| {
                write_records(&mut *o, kind, *n, &records)?;
                writeln!(o)?;
                Ok(())
            })
        }
    }
}
