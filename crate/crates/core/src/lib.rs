//! Amplitude amplification with generalized cost oracles.
//!
//! The crate simulates the oracle/diffusion iteration exactly in the basis of
//! *collective states* — one complex amplitude per distinct cost value — so
//! problem sizes of 40 qubits run at desk scale. On top of the simulator sit:
//!
//! * [`spectrum`] — exact cost spectra `{(C_j, N_j)}` for linear (and generic)
//!   cost functions, built by brute force or subset-sum counting;
//! * [`collective`] — the collective-state simulator plus a full-statevector
//!   reference used to validate it;
//! * [`engine`] — the closed-form phase-scale rule, resonance sweeps and
//!   whole-spectrum scans (data-parallel when the `parallel` feature is on);
//! * [`grover`] — exact two-dimensional iteration dynamics in closed form;
//! * [`circuit`] — gate-level compilation of the oracle, diffusion and the
//!   three hardware experiments, with dense-unitary verification;
//! * [`qasm`] — deterministic OpenQASM-style emission and parse-back;
//! * [`fidelity`] — first-iteration theory states and the f-metric scoring of
//!   measurement records.
//!
//! Bit convention used throughout: bit `i` of a basis index pairs with the
//! `(i+1)`-th weight, and the *leftmost* character of a bit string is that
//! first variable. So `"100"` denotes basis index 1.

pub mod bits;
pub mod circuit;
pub mod collective;
pub mod engine;
pub mod error;
pub mod fidelity;
pub mod grover;
pub mod phase;
pub mod qasm;
pub mod spectrum;

pub use error::{Error, Result};
pub use phase::PhaseScale;
pub use spectrum::{Cost, CostSpectrum, WeightSet};
