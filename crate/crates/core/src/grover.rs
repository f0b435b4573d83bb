//! Exact two-dimensional iteration dynamics in closed form.
//!
//! The oracle+diffusion pair acting on the (marked, unmarked) subspace is a
//! 2x2 unitary `G`. Its eigen-decomposition gives the marked-state amplitude
//! at any iteration count without stepping the simulation, plus the peak
//! achievable probability as a function of the oracle phase and the width of
//! that resonance. Serves as an independent analytic oracle for the
//! collective-state simulator's two-class case.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const EIGENVECTOR_DEGENERACY_EPS: f64 = 1e-12;

/// Eigen-structure of `G = U_s(theta) U_G(phi)` for `n_marked` of `2^N`
/// states. `beta` fixes the initial overlap (`sin beta = sqrt(N_m/2^N)`),
/// `w` the rotation rate per iteration, and `x` the eigenvector mixing angle.
#[derive(Debug, Clone, Copy)]
pub struct GroverClosedForm {
    n_qubits: u32,
    n_marked: u64,
    phi: f64,
    theta: f64,
    beta: f64,
    w: f64,
    x: f64,
}

impl GroverClosedForm {
    pub fn new(n_qubits: u32, n_marked: u64, phi: f64, theta: f64) -> Result<Self> {
        if n_qubits == 0 || n_qubits > 52 {
            return Err(Error::Capacity {
                what: "closed-form iteration dynamics",
                limit: 52,
                got: n_qubits,
            });
        }
        let total = (1u64 << n_qubits) as f64;
        if n_marked == 0 || n_marked >= 1u64 << n_qubits {
            return Err(Error::invalid(format!(
                "marked count must satisfy 1 <= N_m < 2^N, got {n_marked}"
            )));
        }
        let beta = (n_marked as f64 / total).sqrt().asin();
        let sin_b2 = beta.sin() * beta.sin();
        let cos_w =
            ((phi - theta) / 2.0).cos() - 2.0 * (phi / 2.0).sin() * (theta / 2.0).sin() * sin_b2;
        let w = cos_w.clamp(-1.0, 1.0).acos(); // branch: w in [0, pi]
        let sin_x_raw = (theta / 2.0).sin() * (2.0 * beta).sin();
        let cos_x_raw = w.sin()
            + ((phi - theta) / 2.0).sin()
            + 2.0 * (phi / 2.0).cos() * (theta / 2.0).sin() * sin_b2;
        let l_m = sin_x_raw * sin_x_raw + cos_x_raw * cos_x_raw;
        if l_m < EIGENVECTOR_DEGENERACY_EPS {
            return Err(Error::DegenerateDynamics);
        }
        // two-argument arctangent fixes the quadrant of x
        let x = sin_x_raw.atan2(cos_x_raw);
        Ok(GroverClosedForm {
            n_qubits,
            n_marked,
            phi,
            theta,
            beta,
            w,
            x,
        })
    }

    pub fn n_qubits(&self) -> u32 {
        self.n_qubits
    }

    pub fn n_marked(&self) -> u64 {
        self.n_marked
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn rotation_rate(&self) -> f64 {
        self.w
    }

    /// Unit eigenvalues `λ± = −e^{i((θ+φ)/2 ± w)}`.
    pub fn eigenvalues(&self) -> (Complex64, Complex64) {
        let base = (self.theta + self.phi) / 2.0;
        (
            -Complex64::from_polar(1.0, base + self.w),
            -Complex64::from_polar(1.0, base - self.w),
        )
    }

    /// Marked-state amplitude after `t` iterations (up to the global phase
    /// the eigenvalue prefactor carries):
    /// `sin β cos(wt) + i (e^{-iφ/2} cos β sin 2x + sin β cos 2x) sin(wt)`.
    pub fn amplitude_m(&self, t: u64) -> Complex64 {
        let wt = self.w * t as f64;
        let (sin_b, cos_b) = (self.beta.sin(), self.beta.cos());
        let cross = Complex64::from_polar(1.0, -self.phi / 2.0) * (cos_b * (2.0 * self.x).sin())
            + sin_b * (2.0 * self.x).cos();
        Complex64::new(sin_b * wt.cos(), 0.0) + Complex64::i() * cross * wt.sin()
    }

    pub fn probability_m(&self, t: u64) -> f64 {
        self.amplitude_m(t).norm_sqr()
    }

    /// The 2x2 matrix of `G^t` in the (marked, unmarked) basis, with the
    /// global eigenvalue phase dropped.
    pub fn iteration_matrix_power(&self, t: u64) -> [[Complex64; 2]; 2] {
        let wt = self.w * t as f64;
        let (cos_x, sin_x) = (self.x.cos(), self.x.sin());
        let (e_plus, e_minus) = (
            Complex64::from_polar(1.0, wt),
            Complex64::from_polar(1.0, -wt),
        );
        let diag_m = e_plus * cos_x * cos_x + e_minus * sin_x * sin_x;
        let diag_n = e_plus * sin_x * sin_x + e_minus * cos_x * cos_x;
        let off = Complex64::i() * wt.sin() * (2.0 * self.x).sin();
        [
            [diag_m, off * Complex64::from_polar(1.0, -self.phi / 2.0)],
            [off * Complex64::from_polar(1.0, self.phi / 2.0), diag_n],
        ]
    }
}

/// Peak achievable marked-state probability in the large-`2^N` limit. The
/// `theta = π` case uses the simplified form
/// `1 / (sin²(φ/2) + (2^N/4) cos²(φ/2))`.
pub fn p_max(phi: f64, theta: f64, n_qubits: u32) -> Result<f64> {
    let total = 2f64.powi(n_qubits as i32);
    if (theta - PI).abs() < 1e-9 {
        let s = (phi / 2.0).sin();
        let c = (phi / 2.0).cos();
        let denom = s * s + total / 4.0 * c * c;
        if denom <= 0.0 {
            return Err(Error::SingularPeak { phi, theta });
        }
        return Ok(1.0 / denom);
    }
    let st = (theta / 2.0).sin();
    let denom = total * ((theta - phi) / 2.0).sin().powi(2)
        + 4.0 * st * (phi / 2.0).sin() * ((theta - phi) / 2.0).cos();
    if denom <= 0.0 {
        return Err(Error::SingularPeak { phi, theta });
    }
    Ok(4.0 * st * st / denom)
}

/// `2·acos(2/sqrt(2^N − 4))`: the half-maximum crossing angle of the
/// `theta = π` resonance. The crossings sit at this angle and at its mirror
/// `2π` minus it, so the width of the region above half maximum is
/// `2π − 2·fwhm(N)`. Defined for `N >= 3`; `N = 3` sits exactly at the
/// boundary and returns 0.
pub fn fwhm(n_qubits: u32) -> Result<f64> {
    if n_qubits <= 2 {
        return Err(Error::invalid(
            "resonance width is defined only for more than 2 qubits",
        ));
    }
    let arg = 2.0 / (2f64.powi(n_qubits as i32) - 4.0).sqrt();
    Ok(2.0 * arg.clamp(-1.0, 1.0).acos())
}

/// Tabulate `p_max` across an oracle-phase grid.
pub fn resonance_curve(n_qubits: u32, theta: f64, phi_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    phi_grid
        .iter()
        .map(|&phi| Ok((phi, p_max(phi, theta, n_qubits)?)))
        .collect()
}
