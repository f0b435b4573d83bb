//! Oracle phase scales.
//!
//! The resonance rule produces phase scales of the form `π/(C̄ − C_i)` —
//! rational multiples of π. Carrying that rational exactly lets per-class
//! phases `C_j·ps` be reduced modulo 2π in integer arithmetic before any
//! float conversion, which matters when large costs meet many iterations.

use std::f64::consts::PI;

use num_integer::Integer;
use num_rational::Rational64;

use crate::spectrum::{ratio_to_f64, Cost};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhaseScale {
    /// Plain radians per cost unit.
    Radians(f64),
    /// `r·π` radians per cost unit, with `r` exact.
    PiTimes(Rational64),
}

impl PhaseScale {
    pub fn radians(value: f64) -> Self {
        PhaseScale::Radians(value)
    }

    pub fn pi_times(ratio: Rational64) -> Self {
        PhaseScale::PiTimes(ratio)
    }

    /// The scale in radians per cost unit.
    pub fn value(&self) -> f64 {
        match self {
            PhaseScale::Radians(v) => *v,
            PhaseScale::PiTimes(r) => ratio_to_f64(r) * PI,
        }
    }

    /// `c · ps` reduced into `[0, 2π)`. On the `PiTimes` path the reduction
    /// is exact: `c·r mod 2` is computed over 128-bit integers and only the
    /// final product with π rounds.
    pub fn phase_for(&self, c: &Cost) -> f64 {
        match self {
            PhaseScale::Radians(v) => (ratio_to_f64(c) * v).rem_euclid(2.0 * PI),
            PhaseScale::PiTimes(r) => {
                let num = *c.numer() as i128 * *r.numer() as i128;
                let den = *c.denom() as i128 * *r.denom() as i128;
                // (num/den) mod 2 = (num mod 2den)/den, folded into [0, 2den).
                let reduced = num.rem_euclid(2 * den);
                let g = reduced.gcd(&den);
                (reduced / g) as f64 / (den / g) as f64 * PI
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_rational_reduction_is_exact() {
        // 5/2 * pi * 7 = 17.5 pi == 1.5 pi (mod 2 pi)
        let scale = PhaseScale::pi_times(Rational64::new(5, 2));
        let phase = scale.phase_for(&Rational64::from_integer(7));
        assert_eq!(phase, 1.5 * PI);
    }

    #[test]
    fn large_products_stay_reduced() {
        // 1/408 * pi * huge cost: the reduced phase stays in [0, 2 pi).
        let scale = PhaseScale::pi_times(Rational64::new(1, 408));
        let phase = scale.phase_for(&Rational64::from_integer(123_456_789));
        assert!((0.0..2.0 * PI).contains(&phase));
        // 123456789 mod 816 = 69, so the phase is 69/408 * pi.
        assert_eq!(phase, 69.0 / 408.0 * PI);
    }

    #[test]
    fn radians_path_reduces_into_range() {
        let scale = PhaseScale::radians(10.0);
        let phase = scale.phase_for(&Rational64::from_integer(5));
        assert!((0.0..2.0 * PI).contains(&phase));
        assert!((phase - 50.0f64.rem_euclid(2.0 * PI)).abs() < 1e-12);
    }

    #[test]
    fn value_matches_pi_multiple() {
        let scale = PhaseScale::pi_times(Rational64::new(1, 4));
        assert!((scale.value() - PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn negative_scales_fold_positive() {
        let scale = PhaseScale::pi_times(Rational64::new(-1, 2));
        let phase = scale.phase_for(&Rational64::from_integer(1));
        assert_eq!(phase, 1.5 * PI);
    }
}
