//! Exact simulation in the collective-state basis.
//!
//! A state over `D` cost classes stores one amplitude per class; every basis
//! state inside a class shares that amplitude, so `Σ N_j |α_j|² = 1`. One
//! iteration applies the phase oracle (`α_j ← α_j e^{i C_j ps}`) and then
//! diffusion about the mean amplitude (`α_j ← α_j − (1 − e^{iθ}) ᾱ`), which
//! reproduces the full `2^N` dynamics exactly. A dense statevector reference
//! (`statevector_reference`) validates that claim for small registers.

use std::io::Write;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::phase::PhaseScale;
use crate::spectrum::{Cost, CostSpectrum};

/// Qubit cap for the dense statevector reference.
pub const STATEVECTOR_QUBIT_LIMIT: u32 = 12;

/// A phase oracle over a cost spectrum. Standard-search oracles are the
/// two-class special case, built by [`Oracle::grover`].
#[derive(Debug, Clone)]
pub struct Oracle {
    spectrum: CostSpectrum,
    scale: PhaseScale,
}

impl Oracle {
    pub fn cost(spectrum: CostSpectrum, scale: PhaseScale) -> Self {
        Oracle { spectrum, scale }
    }

    /// Marked-state oracle: phase `phi` on `n_marked` of the `2^N` states.
    pub fn grover(n_qubits: u32, n_marked: u64, phi: f64) -> Result<Self> {
        Ok(Oracle {
            spectrum: CostSpectrum::grover(n_qubits, n_marked)?,
            scale: PhaseScale::radians(phi),
        })
    }

    pub fn spectrum(&self) -> &CostSpectrum {
        &self.spectrum
    }

    pub fn scale(&self) -> PhaseScale {
        self.scale
    }

    /// Index of the marked class when this is a two-class oracle.
    pub fn marked_class(&self) -> Option<usize> {
        (self.spectrum.len() == 2).then_some(1)
    }

    /// Per-class phase factors `e^{i C_j ps}`.
    pub fn class_phases(&self) -> Vec<Complex64> {
        self.spectrum
            .values()
            .iter()
            .map(|c| Complex64::from_polar(1.0, self.scale.phase_for(c)))
            .collect()
    }
}

/// One amplitude per cost class.
#[derive(Debug, Clone)]
pub struct CollectiveState {
    amps: Vec<Complex64>,
    counts: Vec<u64>,
    n_qubits: u32,
}

impl CollectiveState {
    /// The equal superposition: every class amplitude is `1/sqrt(2^N)`.
    pub fn superposition(spectrum: &CostSpectrum) -> Self {
        let amp = Complex64::new(1.0 / (spectrum.total() as f64).sqrt(), 0.0);
        CollectiveState {
            amps: vec![amp; spectrum.len()],
            counts: spectrum.counts().to_vec(),
            n_qubits: spectrum.n_qubits(),
        }
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn n_qubits(&self) -> u32 {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    /// `ᾱ = (1/2^N) Σ N_j α_j`.
    pub fn mean_amplitude(&self) -> Complex64 {
        let sum: Complex64 = self
            .amps
            .iter()
            .zip(&self.counts)
            .map(|(a, &c)| a * c as f64)
            .sum();
        sum / (1u64 << self.n_qubits) as f64
    }

    /// `Σ N_j |α_j|²`; 1 within float error for any reachable state.
    pub fn norm_sq(&self) -> f64 {
        self.amps
            .iter()
            .zip(&self.counts)
            .map(|(a, &c)| c as f64 * a.norm_sqr())
            .sum()
    }

    /// Per-class measurement probabilities `N_j |α_j|²`.
    pub fn class_probabilities(&self) -> Vec<f64> {
        self.amps
            .iter()
            .zip(&self.counts)
            .map(|(a, &c)| c as f64 * a.norm_sqr())
            .collect()
    }

    pub fn apply_oracle(&self, oracle: &Oracle) -> Result<CollectiveState> {
        if oracle.spectrum.len() != self.len() || oracle.spectrum.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                state: self.len(),
                operator: oracle.spectrum.len(),
            });
        }
        let mut next = self.clone();
        next.apply_phases(&oracle.class_phases());
        Ok(next)
    }

    pub fn apply_diffusion(&self, theta: f64) -> CollectiveState {
        let mut next = self.clone();
        next.diffuse(theta);
        next
    }

    fn apply_phases(&mut self, phases: &[Complex64]) {
        for (a, p) in self.amps.iter_mut().zip(phases) {
            *a *= p;
        }
    }

    fn diffuse(&mut self, theta: f64) {
        let shift =
            (Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, theta)) * self.mean_amplitude();
        for a in self.amps.iter_mut() {
            *a -= shift;
        }
    }
}

/// The classes whose joint probability a run tracks.
#[derive(Debug, Clone)]
pub struct TargetClasses {
    indices: Vec<usize>,
}

impl TargetClasses {
    pub fn single(index: usize) -> Self {
        TargetClasses {
            indices: vec![index],
        }
    }

    /// The class of cost `c` together with its bitwise-inverse class
    /// `2C̄ − c`. The target must exist in the spectrum; a missing inverse
    /// contributes nothing, and `c = C̄` is counted once.
    pub fn joint_for_cost(spectrum: &CostSpectrum, c: &Cost) -> Result<Self> {
        let target = spectrum
            .class_index(c)
            .ok_or_else(|| Error::UnknownCost(c.to_string()))?;
        let mut indices = vec![target];
        let inverse = spectrum.inverse_cost(c);
        if let Some(other) = spectrum.class_index(&inverse) {
            if other != target {
                indices.push(other);
            }
        }
        Ok(TargetClasses { indices })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn joint_count(&self, spectrum: &CostSpectrum) -> u64 {
        self.indices.iter().map(|&i| spectrum.counts()[i]).sum()
    }

    fn probability(&self, state: &CollectiveState) -> f64 {
        self.indices
            .iter()
            .map(|&i| state.counts[i] as f64 * state.amps[i].norm_sqr())
            .sum()
    }
}

/// Snapshot of iteration `k`. `class_probs` is the measurement distribution
/// after the full oracle+diffusion pair; `post_oracle_amps` and `mean_amp`
/// capture the state between the oracle and the diffusion, which is where
/// the π-phase geometry is visible. Iteration 0 is the bare superposition.
#[derive(Debug, Clone)]
pub struct IterationRecord {
    pub k: usize,
    pub class_probs: Vec<f64>,
    pub mean_amp: Complex64,
    pub post_oracle_amps: Vec<Complex64>,
}

#[derive(Debug, Clone)]
pub struct SimulationTrace {
    pub oracle: Oracle,
    pub theta: f64,
    pub records: Vec<IterationRecord>,
}

impl SimulationTrace {
    pub fn k_max(&self) -> usize {
        self.records.len() - 1
    }

    /// Joint probability of cost `c` and its inverse class at iteration `k`.
    pub fn joint_target_probability(&self, c: &Cost, k: usize) -> Result<f64> {
        let targets = TargetClasses::joint_for_cost(self.oracle.spectrum(), c)?;
        let record = self
            .records
            .get(k)
            .ok_or_else(|| Error::invalid(format!("iteration {k} beyond trace")))?;
        Ok(targets
            .indices()
            .iter()
            .map(|&i| record.class_probs[i])
            .sum())
    }

    /// Probability-vs-iteration series for a set of target classes.
    pub fn series(&self, targets: &TargetClasses) -> Vec<f64> {
        self.records
            .iter()
            .map(|r| targets.indices().iter().map(|&i| r.class_probs[i]).sum())
            .collect()
    }

    /// CSV export: `k,C,count,prob` for every iteration and class.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "k,C,count,prob")?;
        let spectrum = self.oracle.spectrum();
        for record in &self.records {
            for (j, (v, &c)) in spectrum.values().iter().zip(spectrum.counts()).enumerate() {
                writeln!(out, "{},{},{},{}", record.k, v, c, record.class_probs[j])?;
            }
        }
        Ok(())
    }

    /// CSV export of the between-operator snapshots:
    /// `k,C,count,re_alpha,im_alpha,re_mean,im_mean`. Row set `k=0` is the
    /// superposition; row set `k>=1` is the state right after the k-th oracle.
    pub fn write_complex_plane_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "k,C,count,re_alpha,im_alpha,re_mean,im_mean")?;
        let spectrum = self.oracle.spectrum();
        for record in &self.records {
            for (j, (v, &c)) in spectrum.values().iter().zip(spectrum.counts()).enumerate() {
                let a = record.post_oracle_amps[j];
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    record.k, v, c, a.re, a.im, record.mean_amp.re, record.mean_amp.im
                )?;
            }
        }
        Ok(())
    }
}

/// Run `k_max` full iterations from the equal superposition, recording every
/// step. Memory grows as `k_max · D`; use [`run_to_first_peak`] for long
/// resonance hunts.
pub fn run(oracle: &Oracle, theta: f64, k_max: usize) -> SimulationTrace {
    let mut state = CollectiveState::superposition(oracle.spectrum());
    let phases = oracle.class_phases();
    let mut records = Vec::with_capacity(k_max + 1);
    records.push(IterationRecord {
        k: 0,
        class_probs: state.class_probabilities(),
        mean_amp: state.mean_amplitude(),
        post_oracle_amps: state.amps().to_vec(),
    });
    for k in 1..=k_max {
        state.apply_phases(&phases);
        let post_oracle_amps = state.amps().to_vec();
        let mean_amp = state.mean_amplitude();
        state.diffuse(theta);
        records.push(IterationRecord {
            k,
            class_probs: state.class_probabilities(),
            mean_amp,
            post_oracle_amps,
        });
    }
    SimulationTrace {
        oracle: oracle.clone(),
        theta,
        records,
    }
}

/// First interior peak of a probability series: the smallest `k >= 1` with
/// `p(k) >= p(k-1)` and `p(k) >= p(k+1)`. Plateaus count; a series that is
/// still climbing at its end does not.
pub fn first_peak(series: &[f64]) -> Result<(usize, f64)> {
    for k in 1..series.len().saturating_sub(1) {
        if series[k] >= series[k - 1] && series[k] >= series[k + 1] {
            return Ok((k, series[k]));
        }
    }
    Err(Error::NoPeak {
        k_max: series.len().saturating_sub(1),
    })
}

/// Iterate until the tracked joint probability passes its first peak,
/// keeping only O(D) state. Returns the peak iteration and value; peaks up
/// to `k_cap` are reportable (one confirming iteration runs past the cap).
pub fn run_to_first_peak(
    oracle: &Oracle,
    theta: f64,
    targets: &TargetClasses,
    k_cap: usize,
) -> Result<(usize, f64)> {
    let mut state = CollectiveState::superposition(oracle.spectrum());
    let phases = oracle.class_phases();
    let mut prev2;
    let mut prev1 = targets.probability(&state);
    prev2 = prev1;
    for k in 1..=k_cap + 1 {
        state.apply_phases(&phases);
        state.diffuse(theta);
        let current = targets.probability(&state);
        if k >= 2 && prev1 >= prev2 && prev1 >= current {
            return Ok((k - 1, prev1));
        }
        prev2 = prev1;
        prev1 = current;
    }
    Err(Error::NoPeak { k_max: k_cap })
}

/// Dense reference: simulate the same iteration over all `2^N` explicit
/// amplitudes and aggregate per class. Independent of the collective-state
/// code path; every class probability must agree with it.
pub fn statevector_reference<F: Fn(u64) -> Cost>(
    spectrum: &CostSpectrum,
    cost_fn: F,
    scale: PhaseScale,
    theta: f64,
    k: usize,
) -> Result<Vec<f64>> {
    let n = spectrum.n_qubits();
    if n > STATEVECTOR_QUBIT_LIMIT {
        return Err(Error::Capacity {
            what: "dense statevector reference",
            limit: STATEVECTOR_QUBIT_LIMIT,
            got: n,
        });
    }
    let size = 1usize << n;
    let class_of: Vec<usize> = (0..size as u64)
        .map(|z| {
            let c = cost_fn(z);
            spectrum
                .class_index(&c)
                .ok_or_else(|| Error::UnknownCost(c.to_string()))
        })
        .collect::<Result<_>>()?;
    let class_phases: Vec<Complex64> = spectrum
        .values()
        .iter()
        .map(|c| Complex64::from_polar(1.0, scale.phase_for(c)))
        .collect();
    let mut amps = vec![Complex64::new(1.0 / (size as f64).sqrt(), 0.0); size];
    let diff = |amps: &mut Vec<Complex64>| {
        let mean: Complex64 = amps.iter().sum::<Complex64>() / size as f64;
        let shift = (Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, theta)) * mean;
        for a in amps.iter_mut() {
            *a -= shift;
        }
    };
    for _ in 0..k {
        for (a, &cls) in amps.iter_mut().zip(&class_of) {
            *a *= class_phases[cls];
        }
        diff(&mut amps);
    }
    let mut probs = vec![0.0; spectrum.len()];
    for (a, &cls) in amps.iter().zip(&class_of) {
        probs[cls] += a.norm_sqr();
    }
    Ok(probs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine;
    use crate::spectrum::WeightSet;
    use num_rational::Rational64;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    fn ramp_oracle(n: u32, ps: PhaseScale) -> Oracle {
        let spectrum = CostSpectrum::from_weights(&WeightSet::ramp(n)).unwrap();
        Oracle::cost(spectrum, ps)
    }

    #[test]
    fn superposition_is_uniform_and_normalized() {
        let spectrum = CostSpectrum::from_weights(&WeightSet::ramp(5)).unwrap();
        let state = CollectiveState::superposition(&spectrum);
        assert_eq!(state.len(), 16);
        let expected = 1.0 / 32f64.sqrt();
        for a in state.amps() {
            assert_eq!(*a, Complex64::new(expected, 0.0));
        }
        assert!((state.norm_sq() - 1.0).abs() < 1e-15);

        let grover = CostSpectrum::grover(3, 1).unwrap();
        let gs = CollectiveState::superposition(&grover);
        assert_eq!(gs.counts(), &[7, 1]);
        assert_eq!(gs.amps()[0], gs.amps()[1]);
    }

    #[test]
    fn zero_scale_oracle_is_identity() {
        let oracle = ramp_oracle(4, PhaseScale::radians(0.0));
        let state = CollectiveState::superposition(oracle.spectrum());
        let next = state.apply_oracle(&oracle).unwrap();
        assert_eq!(state.amps(), next.amps());
    }

    #[test]
    fn grover_pi_flips_marked_sign() {
        let oracle = Oracle::grover(2, 1, PI).unwrap();
        let state = CollectiveState::superposition(oracle.spectrum());
        let next = state.apply_oracle(&oracle).unwrap();
        assert!((next.amps()[0] - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        assert!((next.amps()[1] - Complex64::new(-0.5, 0.0)).norm() < 1e-12);
        // mean over (3, 1) classes: (3*0.5 - 0.5)/4 = 1/4
        assert!((next.mean_amplitude() - Complex64::new(0.25, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn mean_amplitude_of_superposition() {
        let spectrum = CostSpectrum::from_weights(&WeightSet::ramp(6)).unwrap();
        let state = CollectiveState::superposition(&spectrum);
        let expected = 1.0 / 64f64.sqrt();
        assert!((state.mean_amplitude() - Complex64::new(expected, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn diffusion_fixes_superposition_up_to_phase() {
        let spectrum = CostSpectrum::from_weights(&WeightSet::ramp(5)).unwrap();
        let state = CollectiveState::superposition(&spectrum);
        for theta in [0.0, 0.7, PI, 4.4] {
            let next = state.apply_diffusion(theta);
            let expected = Complex64::from_polar(1.0 / 32f64.sqrt(), theta);
            for a in next.amps() {
                assert!((a - expected).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn exact_grover_two_qubits() {
        let oracle = Oracle::grover(2, 1, PI).unwrap();
        let state = CollectiveState::superposition(oracle.spectrum());
        let after = state.apply_oracle(&oracle).unwrap().apply_diffusion(PI);
        assert!((after.amps()[1].norm() - 1.0).abs() < 1e-12);
        assert!(after.amps()[0].norm() < 1e-12);

        let trace = run(&oracle, PI, 3);
        let targets = TargetClasses::single(1);
        let (k, p) = first_peak(&trace.series(&targets)).unwrap();
        assert_eq!(k, 1);
        assert!((p - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unitarity_over_random_draws() {
        let spectrum = CostSpectrum::from_weights(&WeightSet::ramp(6)).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut state = CollectiveState::superposition(&spectrum);
        for _ in 0..10_000 {
            let ps: f64 = rng.gen_range(-8.0..8.0);
            let theta: f64 = rng.gen_range(0.0..2.0 * PI);
            let oracle = Oracle::cost(spectrum.clone(), PhaseScale::radians(ps));
            state = state.apply_oracle(&oracle).unwrap();
            assert!((state.norm_sq() - 1.0).abs() < 1e-10);
            state = state.apply_diffusion(theta);
            assert!((state.norm_sq() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn mean_phase_after_first_oracle() {
        // arg(mean) = C_bar * ps (mod 2 pi) for the ramp weights at N=10.
        let ps = engine::ps_for_target(
            &CostSpectrum::from_weights(&WeightSet::ramp(10)).unwrap(),
            &Rational64::from_integer(2),
        )
        .unwrap();
        let oracle = ramp_oracle(10, ps);
        let state = CollectiveState::superposition(oracle.spectrum());
        let mean = state.apply_oracle(&oracle).unwrap().mean_amplitude();
        let expected = (27.5 * PI / 25.5).rem_euclid(2.0 * PI);
        assert!((mean.arg().rem_euclid(2.0 * PI) - expected).abs() < 1e-9);
    }

    #[test]
    fn pi_phase_tracking_against_target() {
        // Strict for the first two oracle applications; observed (and only
        // warned about) beyond that.
        let spectrum = CostSpectrum::from_weights(&WeightSet::ramp(10)).unwrap();
        let target = Rational64::from_integer(2);
        let ps = engine::ps_for_target(&spectrum, &target).unwrap();
        let oracle = Oracle::cost(spectrum.clone(), ps);
        let trace = run(&oracle, PI, 8);
        let target_idx = spectrum.class_index(&target).unwrap();
        for record in trace.records.iter().skip(1) {
            let diff = (record.mean_amp.arg() - record.post_oracle_amps[target_idx].arg())
                .rem_euclid(2.0 * PI);
            let off = (diff - PI).abs();
            if record.k <= 2 {
                assert!(off < 1e-9, "iteration {}: off by {off}", record.k);
            } else if off >= 1e-9 {
                eprintln!(
                    "warning: pi-phase tracking drifts at iteration {} by {off:e}",
                    record.k
                );
            }
        }
    }

    #[test]
    fn trace_records_and_joint_probability() {
        let spectrum = CostSpectrum::from_weights(&WeightSet::ramp(5)).unwrap();
        let oracle = Oracle::cost(spectrum.clone(), PhaseScale::radians(0.3));
        let trace = run(&oracle, PI, 0);
        assert_eq!(trace.records.len(), 1);
        // two basis states of 32: C=0 and its inverse C=15
        let p = trace
            .joint_target_probability(&Rational64::from_integer(0), 0)
            .unwrap();
        assert!((p - 2.0 / 32.0).abs() < 1e-12);
        assert!(trace
            .joint_target_probability(&Rational64::from_integer(99), 0)
            .is_err());

        // c = c_bar would be counted once, not doubled: use N=2 ramp plus a
        // class at the mean (weights {1,1} give values 0,1,2 with mean 1).
        let w = WeightSet::from_integers(&[1, 1]).unwrap();
        let s = CostSpectrum::from_weights(&w).unwrap();
        let t = run(&Oracle::cost(s, PhaseScale::radians(0.0)), PI, 0);
        let p_mid = t
            .joint_target_probability(&Rational64::from_integer(1), 0)
            .unwrap();
        assert!((p_mid - 0.5).abs() < 1e-12);
    }

    #[test]
    fn first_peak_rules() {
        assert_eq!(first_peak(&[0.1, 0.4, 0.2]).unwrap(), (1, 0.4));
        // plateau counts
        assert_eq!(first_peak(&[0.1, 0.3, 0.3, 0.2]).unwrap(), (1, 0.3));
        // strictly climbing series has no interior peak yet
        assert!(first_peak(&[0.1, 0.2, 0.3]).is_err());
        // monotone decreasing never satisfies p(k) >= p(k-1)
        assert!(first_peak(&[0.5, 0.4, 0.3]).is_err());
        assert!(first_peak(&[0.5]).is_err());
    }

    #[test]
    fn grover_n10_marked_pair_peaks_near_seventeen() {
        let oracle = Oracle::grover(10, 2, PI).unwrap();
        let trace = run(&oracle, PI, 30);
        let (k, p) = first_peak(&trace.series(&TargetClasses::single(1))).unwrap();
        assert_eq!(k, 17);
        assert!(p > 0.999);
    }

    #[test]
    fn grover_n4_single_marked_peak() {
        let oracle = Oracle::grover(4, 1, PI).unwrap();
        let trace = run(&oracle, PI, 10);
        let (k, p) = first_peak(&trace.series(&TargetClasses::single(1))).unwrap();
        assert_eq!(k, 3);
        assert!(p > 0.96);
    }

    #[test]
    fn streaming_peak_matches_trace_peak() {
        let spectrum = CostSpectrum::from_weights(&WeightSet::ramp(8)).unwrap();
        let target = Rational64::from_integer(2);
        let ps = engine::ps_for_target(&spectrum, &target).unwrap();
        let oracle = Oracle::cost(spectrum.clone(), ps);
        let targets = TargetClasses::joint_for_cost(&spectrum, &target).unwrap();
        let trace = run(&oracle, PI, 80);
        let from_trace = first_peak(&trace.series(&targets)).unwrap();
        let streaming = run_to_first_peak(&oracle, PI, &targets, 80).unwrap();
        assert_eq!(from_trace.0, streaming.0);
        assert!((from_trace.1 - streaming.1).abs() < 1e-12);
    }

    #[test]
    fn flat_series_peaks_immediately() {
        // ps = 0 leaves the oracle trivial; probabilities never move.
        let spectrum = CostSpectrum::from_weights(&WeightSet::ramp(6)).unwrap();
        let oracle = Oracle::cost(spectrum.clone(), PhaseScale::radians(0.0));
        let targets =
            TargetClasses::joint_for_cost(&spectrum, &Rational64::from_integer(0)).unwrap();
        let (k, p) = run_to_first_peak(&oracle, PI, &targets, 50).unwrap();
        assert_eq!(k, 1);
        assert!((p - 2.0 / 64.0).abs() < 1e-12);
    }

    #[test]
    fn statevector_agreement_random_instances() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..8 {
            let n = rng.gen_range(2..=9);
            let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(-50..=50)).collect();
            let w = WeightSet::from_integers(&weights).unwrap();
            let spectrum = CostSpectrum::from_weights(&w).unwrap();
            let ps = PhaseScale::radians(rng.gen_range(-PI..PI));
            let theta = rng.gen_range(0.0..2.0 * PI);
            let k = rng.gen_range(0..=25);
            let oracle = Oracle::cost(spectrum.clone(), ps);
            let trace = run(&oracle, theta, k);
            let reference =
                statevector_reference(&spectrum, |z| w.evaluate_index(z), ps, theta, k).unwrap();
            for (a, b) in trace.records[k].class_probs.iter().zip(&reference) {
                assert!((a - b).abs() < 1e-9, "collective {a} vs dense {b}");
            }
        }
    }

    #[test]
    fn statevector_uniform_at_k0_and_guard() {
        let spectrum = CostSpectrum::from_weights(&WeightSet::ramp(5)).unwrap();
        let w = WeightSet::ramp(5);
        let probs = statevector_reference(
            &spectrum,
            |z| w.evaluate_index(z),
            PhaseScale::radians(0.4),
            PI,
            0,
        )
        .unwrap();
        for (p, &c) in probs.iter().zip(spectrum.counts()) {
            assert!((p - c as f64 / 32.0).abs() < 1e-12);
        }

        let big = CostSpectrum::from_weights(&WeightSet::ramp(13)).unwrap();
        let w13 = WeightSet::ramp(13);
        assert!(statevector_reference(
            &big,
            |z| w13.evaluate_index(z),
            PhaseScale::radians(0.4),
            PI,
            1
        )
        .unwrap_err()
        .is_capacity());
    }

    #[test]
    fn complex_plane_export_shape() {
        let oracle = ramp_oracle(3, PhaseScale::radians(0.2));
        let d = oracle.spectrum().len();
        let trace = run(&oracle, PI, 2);
        let mut buf = Vec::new();
        trace.write_complex_plane_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "k,C,count,re_alpha,im_alpha,re_mean,im_mean");
        assert_eq!(lines.len(), 1 + 3 * d);
        // k = 0 rows hold the bare superposition
        let amp = 1.0 / 8f64.sqrt();
        for line in &lines[1..=d] {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields[0], "0");
            assert!((fields[3].parse::<f64>().unwrap() - amp).abs() < 1e-15);
            assert_eq!(fields[4].parse::<f64>().unwrap(), 0.0);
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let oracle = ramp_oracle(3, PhaseScale::radians(0.2));
        let other = CostSpectrum::from_weights(&WeightSet::ramp(4)).unwrap();
        let state = CollectiveState::superposition(&other);
        assert!(matches!(
            state.apply_oracle(&oracle),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
