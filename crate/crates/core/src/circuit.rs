//! Gate-level compilation of oracles, diffusion, and the bundled experiments.
//!
//! The gate set is `{H, X, P(θ), CX}`. The multi-controlled phase gate is
//! decomposed into a cascade of blocks, one per qubit: block `j` walks the
//! Gray sequence over the lower `j-1` qubits, emitting a CX from the changed
//! control onto qubit `j` and then `P(±θ')` with `θ' = θ/2^{n-1}`, sign by
//! parity of the current code. That realizes the XOR expansion of the AND
//! over all qubits, costing `2^n − 2` CX gates. No routing, no SWAPs, no
//! basis translation beyond this set.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::spectrum::{ratio_to_f64, WeightSet};

/// Qubit cap for dense unitary construction.
pub const UNITARY_QUBIT_LIMIT: u32 = 10;
/// Qubit cap for dense statevector simulation of a circuit.
pub const SIMULATION_QUBIT_LIMIT: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    H(u32),
    X(u32),
    Phase { qubit: u32, angle: f64 },
    Cx { control: u32, target: u32 },
}

impl Gate {
    pub fn qubits(&self) -> (u32, Option<u32>) {
        match *self {
            Gate::H(q) | Gate::X(q) | Gate::Phase { qubit: q, .. } => (q, None),
            Gate::Cx { control, target } => (control, Some(target)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    width: u32,
    gates: Vec<Gate>,
}

/// Depth and gate-count metrics, serialized as the metrics JSON.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CircuitMetrics {
    pub depth: usize,
    pub two_qubit_gates: usize,
    pub total_gates: usize,
    pub width: u32,
}

impl Circuit {
    pub fn new(width: u32) -> Result<Self> {
        if width == 0 {
            return Err(Error::invalid("a circuit needs at least one qubit"));
        }
        Ok(Circuit {
            width,
            gates: Vec::new(),
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let (a, b) = gate.qubits();
        if a >= self.width || b.is_some_and(|q| q >= self.width) {
            return Err(Error::invalid(format!(
                "gate {gate:?} addresses a qubit outside width {}",
                self.width
            )));
        }
        if let Gate::Cx { control, target } = gate {
            if control == target {
                return Err(Error::invalid("CX control and target must differ"));
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn h(&mut self, q: u32) -> Result<()> {
        self.push(Gate::H(q))
    }

    pub fn x(&mut self, q: u32) -> Result<()> {
        self.push(Gate::X(q))
    }

    pub fn phase(&mut self, q: u32, angle: f64) -> Result<()> {
        self.push(Gate::Phase { qubit: q, angle })
    }

    pub fn cx(&mut self, control: u32, target: u32) -> Result<()> {
        self.push(Gate::Cx { control, target })
    }

    fn extend(&mut self, other: &Circuit) -> Result<()> {
        for gate in &other.gates {
            self.push(*gate)?;
        }
        Ok(())
    }

    /// Parallel gate layers under earliest-possible scheduling: a gate joins
    /// the first layer in which all its qubits are free.
    pub fn depth(&self) -> usize {
        let mut busy_until = vec![0usize; self.width as usize];
        let mut depth = 0;
        for gate in &self.gates {
            let (a, b) = gate.qubits();
            let layer = match b {
                Some(b) => busy_until[a as usize].max(busy_until[b as usize]) + 1,
                None => busy_until[a as usize] + 1,
            };
            busy_until[a as usize] = layer;
            if let Some(b) = b {
                busy_until[b as usize] = layer;
            }
            depth = depth.max(layer);
        }
        depth
    }

    pub fn two_qubit_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g, Gate::Cx { .. }))
            .count()
    }

    pub fn metrics(&self) -> CircuitMetrics {
        CircuitMetrics {
            depth: self.depth(),
            two_qubit_gates: self.two_qubit_count(),
            total_gates: self.gates.len(),
            width: self.width,
        }
    }
}

/// Gray sequence over `n` bits: starts at all zeros, neighbors differ in one
/// bit, built by the reflect-and-prefix recursion (the appended bit is the
/// leading one).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraySequence {
    n_bits: u32,
    codes: Vec<u64>,
}

impl GraySequence {
    pub fn new(n_bits: u32) -> Result<Self> {
        if n_bits == 0 {
            return Err(Error::invalid("a Gray sequence needs at least one bit"));
        }
        if n_bits > 24 {
            return Err(Error::Capacity {
                what: "Gray sequence construction",
                limit: 24,
                got: n_bits,
            });
        }
        let mut codes: Vec<u64> = vec![0, 1];
        for bit in 1..n_bits {
            let reflected: Vec<u64> = codes.iter().rev().map(|c| c | 1 << bit).collect();
            codes.extend(reflected);
        }
        Ok(GraySequence { n_bits, codes })
    }

    pub fn n_bits(&self) -> u32 {
        self.n_bits
    }

    pub fn codes(&self) -> &[u64] {
        &self.codes
    }

    /// Code rendered with the leading (most recently appended) bit first,
    /// matching the prefix notation of the recursion.
    pub fn code_string(&self, i: usize) -> String {
        (0..self.n_bits)
            .rev()
            .map(|b| {
                if self.codes[i] >> b & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }
}

pub fn gray_sequence(n_bits: u32) -> Result<GraySequence> {
    GraySequence::new(n_bits)
}

/// `C^{n-1}-P(θ)`: a diagonal circuit applying `e^{iθ}` exactly on the
/// all-ones state and 1 elsewhere. Costs `2^n − 2` CX gates for `n >= 2`.
pub fn compile_mcp(n_qubits: u32, theta: f64) -> Result<Circuit> {
    let mut circuit = Circuit::new(n_qubits)?;
    let theta_prime = theta / 2f64.powi(n_qubits as i32 - 1);
    circuit.phase(0, theta_prime)?;
    for block in 2..=n_qubits {
        let target = block - 1;
        let gray = GraySequence::new(block - 1)?;
        let controls = gray.codes().len();
        let mut previous = 0u64;
        for step in 1..=controls {
            // walk the nonzero codes, then close back to zero
            let code = if step < controls {
                gray.codes()[step]
            } else {
                0
            };
            let changed = (previous ^ code).trailing_zeros();
            circuit.cx(changed, target)?;
            let sign = if code.count_ones() % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            circuit.phase(target, sign * theta_prime)?;
            previous = code;
        }
    }
    Ok(circuit)
}

/// `H`-layer, `X`-layer, `C^{n-1}-P(θ)`, `X`-layer, `H`-layer: the diffusion
/// operator `I − (1 − e^{iθ})|s⟩⟨s|`.
pub fn compile_diffusion(n_qubits: u32, theta: f64) -> Result<Circuit> {
    let mut circuit = Circuit::new(n_qubits)?;
    for q in 0..n_qubits {
        circuit.h(q)?;
    }
    for q in 0..n_qubits {
        circuit.x(q)?;
    }
    circuit.extend(&compile_mcp(n_qubits, theta)?)?;
    for q in 0..n_qubits {
        circuit.x(q)?;
    }
    for q in 0..n_qubits {
        circuit.h(q)?;
    }
    Ok(circuit)
}

/// Linear cost oracle: one `P` gate per qubit. Plain convention applies
/// `W_i·ps`; the scaled convention applies `W_i·π·ps/N'`, matching the
/// bundled experiment circuits.
pub fn compile_cost_oracle_linear(
    weights: &WeightSet,
    ps: f64,
    scaled_by_n_prime: bool,
) -> Result<Circuit> {
    let mut circuit = Circuit::new(weights.n_qubits())?;
    for (i, w) in weights.weights().iter().enumerate() {
        let w = ratio_to_f64(w);
        let angle = if scaled_by_n_prime {
            w * PI * ps / weights.n_prime() as f64
        } else {
            w * ps
        };
        circuit.phase(i as u32, angle)?;
    }
    Ok(circuit)
}

/// The three bundled experiments, all single-iteration circuits on the ramp
/// weights / all-ones marked state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExperimentKind {
    /// Cost oracle (scaled), diffusion fixed at π; the parameter is `ps`.
    PhaseScaleSweep,
    /// Cost oracle (scaled) at `ps = 1`; the parameter is the diffusion θ.
    DiffusionSweepCost,
    /// Marked-state oracle at φ = π (all-ones marked); parameter is θ.
    DiffusionSweepGrover,
}

impl ExperimentKind {
    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(ExperimentKind::PhaseScaleSweep),
            2 => Ok(ExperimentKind::DiffusionSweepCost),
            3 => Ok(ExperimentKind::DiffusionSweepGrover),
            other => Err(Error::invalid(format!("unknown experiment {other}"))),
        }
    }

    pub fn number(&self) -> u8 {
        match self {
            ExperimentKind::PhaseScaleSweep => 1,
            ExperimentKind::DiffusionSweepCost => 2,
            ExperimentKind::DiffusionSweepGrover => 3,
        }
    }
}

pub fn compile_experiment(kind: ExperimentKind, n_qubits: u32, parameter: f64) -> Result<Circuit> {
    if n_qubits < 2 {
        return Err(Error::invalid("experiment circuits need at least 2 qubits"));
    }
    let mut circuit = Circuit::new(n_qubits)?;
    for q in 0..n_qubits {
        circuit.h(q)?;
    }
    let ramp = WeightSet::ramp(n_qubits);
    match kind {
        ExperimentKind::PhaseScaleSweep => {
            circuit.extend(&compile_cost_oracle_linear(&ramp, parameter, true)?)?;
            circuit.extend(&compile_diffusion(n_qubits, PI)?)?;
        }
        ExperimentKind::DiffusionSweepCost => {
            circuit.extend(&compile_cost_oracle_linear(&ramp, 1.0, true)?)?;
            circuit.extend(&compile_diffusion(n_qubits, parameter)?)?;
        }
        ExperimentKind::DiffusionSweepGrover => {
            circuit.extend(&compile_mcp(n_qubits, PI)?)?;
            circuit.extend(&compile_diffusion(n_qubits, parameter)?)?;
        }
    }
    Ok(circuit)
}

fn apply_gate(state: &mut [Complex64], gate: &Gate) {
    let size = state.len();
    match *gate {
        Gate::H(q) => {
            let bit = 1usize << q;
            let norm = std::f64::consts::FRAC_1_SQRT_2;
            for i in 0..size {
                if i & bit == 0 {
                    let (a, b) = (state[i], state[i | bit]);
                    state[i] = (a + b) * norm;
                    state[i | bit] = (a - b) * norm;
                }
            }
        }
        Gate::X(q) => {
            let bit = 1usize << q;
            for i in 0..size {
                if i & bit == 0 {
                    state.swap(i, i | bit);
                }
            }
        }
        Gate::Phase { qubit, angle } => {
            let bit = 1usize << qubit;
            let factor = Complex64::from_polar(1.0, angle);
            for (i, amp) in state.iter_mut().enumerate() {
                if i & bit != 0 {
                    *amp *= factor;
                }
            }
        }
        Gate::Cx { control, target } => {
            let c = 1usize << control;
            let t = 1usize << target;
            for i in 0..size {
                if i & c != 0 && i & t == 0 {
                    state.swap(i, i | t);
                }
            }
        }
    }
}

/// Dense statevector simulation from `|0...0⟩`.
pub fn simulate_statevector(circuit: &Circuit) -> Result<Vec<Complex64>> {
    if circuit.width() > SIMULATION_QUBIT_LIMIT {
        return Err(Error::Capacity {
            what: "dense circuit simulation",
            limit: SIMULATION_QUBIT_LIMIT,
            got: circuit.width(),
        });
    }
    let mut state = vec![Complex64::new(0.0, 0.0); 1 << circuit.width()];
    state[0] = Complex64::new(1.0, 0.0);
    for gate in circuit.gates() {
        apply_gate(&mut state, gate);
    }
    Ok(state)
}

/// The full `2^N × 2^N` matrix of a circuit, built column by column.
pub fn unitary_of_circuit(circuit: &Circuit) -> Result<Vec<Vec<Complex64>>> {
    if circuit.width() > UNITARY_QUBIT_LIMIT {
        return Err(Error::Capacity {
            what: "dense unitary construction",
            limit: UNITARY_QUBIT_LIMIT,
            got: circuit.width(),
        });
    }
    let size = 1usize << circuit.width();
    let mut columns = Vec::with_capacity(size);
    for k in 0..size {
        let mut col = vec![Complex64::new(0.0, 0.0); size];
        col[k] = Complex64::new(1.0, 0.0);
        for gate in circuit.gates() {
            apply_gate(&mut col, gate);
        }
        columns.push(col);
    }
    // transpose column-major into row-major
    let mut rows = vec![vec![Complex64::new(0.0, 0.0); size]; size];
    for (c, col) in columns.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            rows[r][c] = *v;
        }
    }
    Ok(rows)
}

/// Maximum absolute deviation of the circuit's unitary from the diagonal
/// matrix of `expected` phases, after dividing out one global phase.
pub fn verify_diagonal_phase(circuit: &Circuit, expected: &[Complex64]) -> Result<f64> {
    let size = 1usize << circuit.width();
    if expected.len() != size {
        return Err(Error::invalid(format!(
            "expected {size} diagonal phases, got {}",
            expected.len()
        )));
    }
    let unitary = unitary_of_circuit(circuit)?;
    let reference = expected
        .iter()
        .position(|e| e.norm() > 0.5)
        .ok_or_else(|| Error::invalid("expected diagonal has no nonzero entry"))?;
    let mut global = unitary[reference][reference] / expected[reference];
    let norm = global.norm();
    if norm < 1e-6 {
        return Ok(f64::INFINITY);
    }
    global /= norm;
    let mut deviation: f64 = 0.0;
    for (r, row) in unitary.iter().enumerate() {
        for (c, entry) in row.iter().enumerate() {
            let want = if r == c {
                global * expected[r]
            } else {
                Complex64::new(0.0, 0.0)
            };
            deviation = deviation.max((entry - want).norm());
        }
    }
    Ok(deviation)
}
