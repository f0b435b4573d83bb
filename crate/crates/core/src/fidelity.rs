//! First-iteration theory states and the f-metric.
//!
//! Each bundled experiment is a single oracle+diffusion iteration whose
//! per-basis-state probabilities follow in closed form from the mean
//! amplitude. The f-metric compares a set of measurement records (one per
//! parameter value) against that theory: per basis state,
//! `f_i = 1 − RMS_i / RMS̃_i`, where `RMS̃` replaces the measurement with a
//! fully decohered uniform distribution. `f = 1` is perfect agreement,
//! `f = 0` is uniform, `f < 0` means structured error on the wrong side of
//! uniform. `f_exp` averages all `2^N` states.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::io::{Read, Write};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits;
pub use crate::circuit::ExperimentKind;
use crate::error::{Error, Result};
use crate::spectrum::{ratio_to_f64, WeightSet};

/// Qubit cap for per-basis-state theory tables.
pub const THEORY_QUBIT_LIMIT: u32 = 16;
/// States whose decohered RMS falls below this are excluded from `f_exp`
/// (their theory is indistinguishable from uniform across the whole grid and
/// the metric divides by zero).
const EXCLUSION_EPS: f64 = 1e-12;

/// A single experiment: which circuit family, how many qubits, and the
/// parameter grid the records are expected to cover.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    kind: ExperimentKind,
    n_qubits: u32,
    grid: Vec<f64>,
}

impl ExperimentSpec {
    /// Default grid: 100 evenly spaced parameter values over `[0, 2π]`.
    pub fn new(kind: ExperimentKind, n_qubits: u32) -> Result<Self> {
        Self::with_grid(kind, n_qubits, crate::engine::linspace(0.0, 2.0 * PI, 100))
    }

    pub fn with_grid(kind: ExperimentKind, n_qubits: u32, grid: Vec<f64>) -> Result<Self> {
        if !(2..=THEORY_QUBIT_LIMIT).contains(&n_qubits) {
            return Err(Error::Capacity {
                what: "experiment theory",
                limit: THEORY_QUBIT_LIMIT,
                got: n_qubits,
            });
        }
        if grid.is_empty() {
            return Err(Error::invalid("parameter grid is empty"));
        }
        Ok(ExperimentSpec {
            kind,
            n_qubits,
            grid,
        })
    }

    pub fn kind(&self) -> ExperimentKind {
        self.kind
    }

    pub fn n_qubits(&self) -> u32 {
        self.n_qubits
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    fn contains_parameter(&self, p: f64) -> bool {
        self.grid.iter().any(|&g| (g - p).abs() <= 1e-9)
    }

    /// Per-basis-state probabilities after one iteration at the given
    /// parameter value, indexed by basis index. Sums to 1.
    pub fn theory_probabilities(&self, parameter: f64) -> Vec<f64> {
        let n = self.n_qubits;
        let size = 1usize << n;
        let root = (size as f64).sqrt();
        let (oracle_phases, theta): (Vec<f64>, f64) = match self.kind {
            ExperimentKind::PhaseScaleSweep | ExperimentKind::DiffusionSweepCost => {
                let ramp = WeightSet::ramp(n);
                let (ps, theta) = match self.kind {
                    ExperimentKind::PhaseScaleSweep => (parameter, PI),
                    _ => (1.0, parameter),
                };
                let effective = PI * ps / ramp.n_prime() as f64;
                let phases = (0..size as u64)
                    .map(|z| ratio_to_f64(&ramp.evaluate_index(z)) * effective)
                    .collect();
                (phases, theta)
            }
            ExperimentKind::DiffusionSweepGrover => {
                let phases = (0..size)
                    .map(|z| if z == size - 1 { PI } else { 0.0 })
                    .collect();
                (phases, parameter)
            }
        };
        let amps: Vec<Complex64> = oracle_phases
            .iter()
            .map(|&p| Complex64::from_polar(1.0 / root, p))
            .collect();
        let mean = amps.iter().sum::<Complex64>() / size as f64;
        let shift = (Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, theta)) * mean;
        amps.iter().map(|a| (a - shift).norm_sqr()).collect()
    }

    /// The same table keyed by bit string.
    pub fn theory_map(&self, parameter: f64) -> BTreeMap<String, f64> {
        self.theory_probabilities(parameter)
            .into_iter()
            .enumerate()
            .map(|(i, p)| (bits::bitstring_of_index(i as u64, self.n_qubits), p))
            .collect()
    }
}

/// Shot counts at one parameter value. Hardware counts are integers; the
/// map also accepts fractional values so ideal (noise-free) records can be
/// expressed exactly. Missing bit strings are zero counts, and probabilities
/// normalize by `shots`, not by the observed sum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    #[serde(rename = "param")]
    pub parameter: f64,
    pub shots: u64,
    pub counts: BTreeMap<String, f64>,
}

impl MeasurementRecord {
    pub fn measured_probability(&self, bitstring: &str) -> f64 {
        self.counts.get(bitstring).copied().unwrap_or(0.0) / self.shots as f64
    }

    fn validate(&self, n_qubits: u32) -> Result<()> {
        if self.shots == 0 {
            return Err(Error::invalid("record has zero shots"));
        }
        let mut total = 0.0;
        for (key, &count) in &self.counts {
            bits::index_of_bitstring(key, n_qubits)?;
            if count < 0.0 || !count.is_finite() {
                return Err(Error::invalid(format!("negative count for {key:?}")));
            }
            total += count;
        }
        if total > self.shots as f64 * (1.0 + 1e-9) {
            return Err(Error::invalid(format!(
                "counts sum to {total}, more than {} shots",
                self.shots
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFidelity {
    pub bitstring: String,
    /// `None` marks a state excluded because its theory is uniform across
    /// the entire grid.
    pub f: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FidelityReport {
    pub experiment: u8,
    pub n_qubits: u32,
    pub f_exp: f64,
    /// f of the all-ones (marked) state; reported for experiment 3.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_m: Option<f64>,
    pub per_state: Vec<StateFidelity>,
    pub excluded: Vec<String>,
}

/// Score measurement records against theory. Every record's parameter must
/// lie on the spec's grid; the RMS runs over exactly the provided records.
pub fn f_metric(spec: &ExperimentSpec, records: &[MeasurementRecord]) -> Result<FidelityReport> {
    if records.is_empty() {
        return Err(Error::invalid("no measurement records supplied"));
    }
    let n = spec.n_qubits();
    let size = 1usize << n;
    for record in records {
        record.validate(n)?;
        if !spec.contains_parameter(record.parameter) {
            return Err(Error::invalid(format!(
                "record parameter {} is not on the experiment grid",
                record.parameter
            )));
        }
    }
    let theories: Vec<Vec<f64>> = records
        .iter()
        .map(|r| spec.theory_probabilities(r.parameter))
        .collect();
    let uniform = 1.0 / size as f64;
    let mut per_state = Vec::with_capacity(size);
    let mut excluded = Vec::new();
    let mut f_sum = 0.0;
    let mut f_count = 0usize;
    let mut f_marked = None;
    for i in 0..size {
        let bitstring = bits::bitstring_of_index(i as u64, n);
        let mut sq = 0.0;
        let mut sq_decohered = 0.0;
        for (record, theory) in records.iter().zip(&theories) {
            let delta = record.measured_probability(&bitstring) - theory[i];
            sq += delta * delta;
            let delta_uniform = uniform - theory[i];
            sq_decohered += delta_uniform * delta_uniform;
        }
        let rms = (sq / records.len() as f64).sqrt();
        let rms_decohered = (sq_decohered / records.len() as f64).sqrt();
        let f = if rms_decohered < EXCLUSION_EPS {
            excluded.push(bitstring.clone());
            None
        } else {
            let value = 1.0 - rms / rms_decohered;
            f_sum += value;
            f_count += 1;
            Some(value)
        };
        if i == size - 1 && spec.kind() == ExperimentKind::DiffusionSweepGrover {
            f_marked = f;
        }
        per_state.push(StateFidelity { bitstring, f });
    }
    if f_count == 0 {
        return Err(Error::invalid(
            "every basis state is excluded; theory is uniform on this grid",
        ));
    }
    Ok(FidelityReport {
        experiment: spec.kind().number(),
        n_qubits: n,
        f_exp: f_sum / f_count as f64,
        f_m: f_marked,
        per_state,
        excluded,
    })
}

/// Sample one record per grid point from `(1−λ)·theory + λ·uniform` with a
/// seeded generator. Deterministic per seed.
pub fn synthesize_records(
    spec: &ExperimentSpec,
    shots: u64,
    noise_mix: f64,
    seed: u64,
) -> Result<Vec<MeasurementRecord>> {
    if shots == 0 {
        return Err(Error::invalid("shots must be positive"));
    }
    if !(0.0..=1.0).contains(&noise_mix) {
        return Err(Error::invalid("noise mix must lie in [0, 1]"));
    }
    let n = spec.n_qubits();
    let size = 1usize << n;
    let uniform = 1.0 / size as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut records = Vec::with_capacity(spec.grid().len());
    for &parameter in spec.grid() {
        let theory = spec.theory_probabilities(parameter);
        let mixed: Vec<f64> = theory
            .iter()
            .map(|p| (1.0 - noise_mix) * p + noise_mix * uniform)
            .collect();
        let mut cumulative = Vec::with_capacity(size);
        let mut acc = 0.0;
        for p in &mixed {
            acc += p;
            cumulative.push(acc);
        }
        let total = acc;
        let mut tallies = vec![0u64; size];
        for _ in 0..shots {
            let u: f64 = rng.gen_range(0.0..total);
            let idx = cumulative.partition_point(|&c| c < u).min(size - 1);
            tallies[idx] += 1;
        }
        let counts = tallies
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (bits::bitstring_of_index(i as u64, n), c as f64))
            .collect();
        records.push(MeasurementRecord {
            parameter,
            shots,
            counts,
        });
    }
    Ok(records)
}

/// Noise-free records whose counts are exactly `theory · shots` (fractional
/// counts; scoring them returns `f_exp = 1`).
pub fn exact_records(spec: &ExperimentSpec, shots: u64) -> Vec<MeasurementRecord> {
    let n = spec.n_qubits();
    spec.grid()
        .iter()
        .map(|&parameter| {
            let counts = spec
                .theory_probabilities(parameter)
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0.0)
                .map(|(i, &p)| (bits::bitstring_of_index(i as u64, n), p * shots as f64))
                .collect();
            MeasurementRecord {
                parameter,
                shots,
                counts,
            }
        })
        .collect()
}

#[derive(Debug, Serialize, Deserialize)]
struct RecordHeader {
    experiment: u8,
    n_qubits: u32,
}

/// Write the record file: a JSON array whose first element is the header
/// object `{"experiment": k, "n_qubits": n}`, followed by one object per
/// record.
pub fn write_records<W: Write>(
    out: W,
    kind: ExperimentKind,
    n_qubits: u32,
    records: &[MeasurementRecord],
) -> Result<()> {
    let mut entries = vec![serde_json::to_value(RecordHeader {
        experiment: kind.number(),
        n_qubits,
    })
    .expect("header serializes")];
    for record in records {
        entries.push(serde_json::to_value(record).expect("record serializes"));
    }
    serde_json::to_writer_pretty(out, &entries)
        .map_err(|e| Error::invalid(format!("cannot write records: {e}")))
}

/// Read a record file written in the format above.
pub fn read_records<R: Read>(input: R) -> Result<(ExperimentKind, u32, Vec<MeasurementRecord>)> {
    let entries: Vec<serde_json::Value> = serde_json::from_reader(input)
        .map_err(|e| Error::invalid(format!("bad record file: {e}")))?;
    let mut iter = entries.into_iter();
    let header: RecordHeader = iter
        .next()
        .map(serde_json::from_value)
        .transpose()
        .map_err(|e| Error::invalid(format!("bad record header: {e}")))?
        .ok_or_else(|| Error::invalid("record file is empty"))?;
    let records: Vec<MeasurementRecord> = iter
        .map(serde_json::from_value)
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::invalid(format!("bad record entry: {e}")))?;
    Ok((
        ExperimentKind::from_number(header.experiment)?,
        header.n_qubits,
        records,
    ))
}

pub fn write_report<W: Write>(out: W, report: &FidelityReport) -> Result<()> {
    serde_json::to_writer_pretty(out, report)
        .map_err(|e| Error::invalid(format!("cannot write report: {e}")))
}
