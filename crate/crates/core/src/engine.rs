//! Phase-scale selection, resonance sweeps, and whole-spectrum scans.
//!
//! The rule `ps = ±π/(C̄ − C_i)` puts the mean amplitude exactly π out of
//! phase with a chosen target class. The sweep tabulates first-peak joint
//! probabilities over a phase-scale grid; the scan applies the rule to every
//! class of a spectrum and compares iteration counts against the standard
//! two-class reference. Grid points and classes are independent, so both
//! evaluate in parallel when the `parallel` feature is enabled (the `_serial`
//! variants are always available and produce identical output).

use std::collections::BTreeSet;
use std::io::Write;

use num_rational::Rational64;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::collective::{run_to_first_peak, Oracle, TargetClasses};
use crate::error::{Error, Result};
use crate::grover::GroverClosedForm;
use crate::phase::PhaseScale;
use crate::spectrum::{Cost, CostSpectrum};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

/// `ps = sign·π/(C̄ − c)`, exact. Undefined at `c = C̄`.
pub fn ps_for_target_signed(spectrum: &CostSpectrum, c: &Cost, sign: Sign) -> Result<PhaseScale> {
    let delta = spectrum.c_bar() - c;
    if delta == Rational64::from_integer(0) {
        return Err(Error::TargetAtMean);
    }
    let ratio = match sign {
        Sign::Positive => delta.recip(),
        Sign::Negative => -delta.recip(),
    };
    Ok(PhaseScale::pi_times(ratio))
}

/// The sign is chosen so the returned scale is positive.
pub fn ps_for_target(spectrum: &CostSpectrum, c: &Cost) -> Result<PhaseScale> {
    let sign = if spectrum.c_bar() > *c {
        Sign::Positive
    } else {
        Sign::Negative
    };
    ps_for_target_signed(spectrum, c, sign)
}

/// Iteration budget that always contains the deepest first peak:
/// `ceil(2.5 · (π/4) · sqrt(2^N))`.
pub fn default_k_cap(n_qubits: u32) -> usize {
    (2.5 * std::f64::consts::FRAC_PI_4 * 2f64.powi(n_qubits as i32).sqrt()).ceil() as usize
}

/// Reference iteration count for the two-class oracle at `phi = theta = π`:
/// the exact argmax of the closed-form probability, which stays within one
/// of `round(π/4 · sqrt(2^N/N_m))`.
pub fn grover_k_reference(n_qubits: u32, n_marked: u64) -> Result<u64> {
    let ctx = GroverClosedForm::new(
        n_qubits,
        n_marked,
        std::f64::consts::PI,
        std::f64::consts::PI,
    )?;
    let w = ctx.rotation_rate();
    let estimate = (std::f64::consts::PI / (2.0 * w) - 0.5).max(0.0);
    let lo = estimate.floor() as u64;
    let candidates = [lo, lo + 1];
    let best = candidates
        .iter()
        .copied()
        .max_by(|a, b| {
            ctx.probability_m(*a)
                .partial_cmp(&ctx.probability_m(*b))
                .expect("probabilities are finite")
                .then(b.cmp(a)) // prefer the smaller t on ties
        })
        .expect("two candidates");
    Ok(best)
}

/// Inclusive linear grid of plain-radian phase scales.
pub fn linspace_scales(start: f64, stop: f64, count: usize) -> Vec<PhaseScale> {
    linspace(start, stop, count)
        .into_iter()
        .map(PhaseScale::radians)
        .collect()
}

/// Inclusive linear grid.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..count)
            .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}

/// One sweep cell: the first peak of the joint target∪inverse probability
/// at a given phase scale.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub ps: f64,
    pub target: Cost,
    pub peak_prob: f64,
    pub k_peak: usize,
}

fn sweep_cell(
    spectrum: &CostSpectrum,
    ps: PhaseScale,
    target: &Cost,
    theta: f64,
    k_cap: usize,
) -> Result<SweepPoint> {
    let targets = TargetClasses::joint_for_cost(spectrum, target)?;
    let oracle = Oracle::cost(spectrum.clone(), ps);
    let (k_peak, peak_prob) = run_to_first_peak(&oracle, theta, &targets, k_cap)?;
    Ok(SweepPoint {
        ps: ps.value(),
        target: *target,
        peak_prob,
        k_peak,
    })
}

fn sweep_jobs(targets: &[Cost], grid: &[PhaseScale]) -> Vec<(PhaseScale, Cost)> {
    grid.iter()
        .flat_map(|&ps| targets.iter().map(move |&t| (ps, t)))
        .collect()
}

/// Sweep every grid point for every target, grid-major. Rows come back in
/// input order regardless of how the cells were scheduled.
pub fn ps_sweep(
    spectrum: &CostSpectrum,
    targets: &[Cost],
    grid: &[PhaseScale],
    theta: f64,
    k_cap: usize,
) -> Result<Vec<SweepPoint>> {
    if grid.is_empty() {
        return Err(Error::invalid("sweep grid is empty"));
    }
    let jobs = sweep_jobs(targets, grid);
    #[cfg(feature = "parallel")]
    {
        jobs.par_iter()
            .map(|(ps, t)| sweep_cell(spectrum, *ps, t, theta, k_cap))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        jobs.iter()
            .map(|(ps, t)| sweep_cell(spectrum, *ps, t, theta, k_cap))
            .collect()
    }
}

/// Sequential fallback; identical output to [`ps_sweep`].
pub fn ps_sweep_serial(
    spectrum: &CostSpectrum,
    targets: &[Cost],
    grid: &[PhaseScale],
    theta: f64,
    k_cap: usize,
) -> Result<Vec<SweepPoint>> {
    if grid.is_empty() {
        return Err(Error::invalid("sweep grid is empty"));
    }
    sweep_jobs(targets, grid)
        .iter()
        .map(|(ps, t)| sweep_cell(spectrum, *ps, t, theta, k_cap))
        .collect()
}

/// Per-class scan row. Classes sitting exactly at the mean carry no phase
/// scale and are marked skipped (`None` fields).
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub cost: Cost,
    pub count: u64,
    pub joint_count: u64,
    pub ps: Option<f64>,
    pub sigma_ps: Option<f64>,
    pub peak_prob: Option<f64>,
    pub k_peak: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroverRef {
    pub n_marked: u64,
    pub k_grover: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumScan {
    pub rows: Vec<ScanRow>,
    pub grover_refs: Vec<GroverRef>,
}

fn scan_cell(spectrum: &CostSpectrum, j: usize, theta: f64, k_cap: usize) -> Result<ScanRow> {
    let cost = spectrum.values()[j];
    let count = spectrum.counts()[j];
    if cost == spectrum.c_bar() {
        return Ok(ScanRow {
            cost,
            count,
            joint_count: count,
            ps: None,
            sigma_ps: None,
            peak_prob: None,
            k_peak: None,
        });
    }
    let ps = ps_for_target(spectrum, &cost)?;
    let targets = TargetClasses::joint_for_cost(spectrum, &cost)?;
    let joint_count = targets.joint_count(spectrum);
    let oracle = Oracle::cost(spectrum.clone(), ps);
    let (k_peak, peak_prob) = run_to_first_peak(&oracle, theta, &targets, k_cap)?;
    Ok(ScanRow {
        cost,
        count,
        joint_count,
        ps: Some(ps.value()),
        sigma_ps: Some(spectrum.sigma_scaled(ps.value())),
        peak_prob: Some(peak_prob),
        k_peak: Some(k_peak),
    })
}

fn grover_refs_for(spectrum: &CostSpectrum, rows: &[ScanRow]) -> Result<Vec<GroverRef>> {
    let joint_counts: BTreeSet<u64> = rows
        .iter()
        .filter(|r| r.ps.is_some())
        .map(|r| r.joint_count)
        .collect();
    joint_counts
        .into_iter()
        .filter(|&m| m < spectrum.total())
        .map(|m| {
            Ok(GroverRef {
                n_marked: m,
                k_grover: grover_k_reference(spectrum.n_qubits(), m)?,
            })
        })
        .collect()
}

/// Apply the phase-scale rule to every class and record its first-peak joint
/// probability, iteration count, and scaled spread, plus two-class reference
/// iteration counts for every joint degeneracy that occurs.
pub fn spectrum_scan(spectrum: &CostSpectrum, theta: f64, k_cap: usize) -> Result<SpectrumScan> {
    let indices: Vec<usize> = (0..spectrum.len()).collect();
    #[cfg(feature = "parallel")]
    let rows: Result<Vec<ScanRow>> = indices
        .par_iter()
        .map(|&j| scan_cell(spectrum, j, theta, k_cap))
        .collect();
    #[cfg(not(feature = "parallel"))]
    let rows: Result<Vec<ScanRow>> = indices
        .iter()
        .map(|&j| scan_cell(spectrum, j, theta, k_cap))
        .collect();
    let rows = rows?;
    let grover_refs = grover_refs_for(spectrum, &rows)?;
    Ok(SpectrumScan { rows, grover_refs })
}

/// Sequential fallback; identical output to [`spectrum_scan`].
pub fn spectrum_scan_serial(
    spectrum: &CostSpectrum,
    theta: f64,
    k_cap: usize,
) -> Result<SpectrumScan> {
    let rows: Vec<ScanRow> = (0..spectrum.len())
        .map(|j| scan_cell(spectrum, j, theta, k_cap))
        .collect::<Result<_>>()?;
    let grover_refs = grover_refs_for(spectrum, &rows)?;
    Ok(SpectrumScan { rows, grover_refs })
}

/// CSV export: `ps,target,peak_prob,k_peak`.
pub fn write_sweep_csv<W: Write>(points: &[SweepPoint], mut out: W) -> std::io::Result<()> {
    writeln!(out, "ps,target,peak_prob,k_peak")?;
    for p in points {
        writeln!(out, "{},{},{},{}", p.ps, p.target, p.peak_prob, p.k_peak)?;
    }
    Ok(())
}

/// CSV export: `C,count,ps,sigma_ps,peak_prob,k_peak`, with empty fields for
/// skipped (mean-valued) classes.
pub fn write_scan_csv<W: Write>(scan: &SpectrumScan, mut out: W) -> std::io::Result<()> {
    writeln!(out, "C,count,ps,sigma_ps,peak_prob,k_peak")?;
    let fmt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in &scan.rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.cost,
            r.count,
            fmt(r.ps),
            fmt(r.sigma_ps),
            fmt(r.peak_prob),
            r.k_peak.map(|k| k.to_string()).unwrap_or_default()
        )?;
    }
    Ok(())
}
