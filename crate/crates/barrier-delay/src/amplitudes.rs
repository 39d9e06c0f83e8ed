//! Closed-form scattering amplitudes for one energy.
//!
//! Matching the plane-wave components `A e^{i k1 x}` (incident),
//! `B e^{-i k1 x}` (reflected), `F e^{i k2 (x-a)}` (transmitted) across the
//! barrier gives
//!
//! ```text
//! r = B/A = (g1/g2) e^{i(phi2 - phi1)},    t = F/A = (1/g2) e^{i phi2},
//! ```
//!
//! where `g1 e^{-i phi1}` and `g2 e^{-i phi2}` are the complex combinations
//! returned by [`complex_g1`] and [`complex_g2`].

use num_complex::Complex64;

use crate::barrier::{wave_numbers, BarrierConfig, WaveNumbers};
use crate::error::Result;

/// `phi1` is undefined when `g1 < EPS_G1_REL * g2` (perfect resonance of a
/// symmetric barrier); `r` is then reported as exactly zero.
pub const EPS_G1_REL: f64 = 1e-14;

/// Amplitudes and derived probabilities at one energy.
#[derive(Debug, Clone, Copy)]
pub struct ScatteringAmplitudes {
    /// Reflection amplitude B/A.
    pub r: Complex64,
    /// Transmission amplitude F/A.
    pub t: Complex64,
    pub g1: f64,
    /// `None` when g1 vanishes and the reflected phase is undefined.
    pub phi1: Option<f64>,
    pub g2: f64,
    pub phi2: f64,
    /// Transmission probability T = |t|^2; may exceed 1 when k1 > k2.
    pub transmission_probability: f64,
    /// Transmission coefficient (k2/k1) T, the conserved current ratio, <= 1.
    pub transmission_coefficient: f64,
}

/// The complex number `g1 e^{-i phi1}
/// = (1/2)(1 - k2/k1) cos(k0 a) - (i/2)(k2/k0 - k0/k1) sin(k0 a)`.
pub fn complex_g1(wn: &WaveNumbers, a: f64) -> Complex64 {
    let (k0, k1, k2) = (wn.k0, wn.k1, wn.k2);
    let (s, c) = (k0 * a).sin_cos();
    Complex64::new(0.5 * (1.0 - k2 / k1) * c, -0.5 * (k2 / k0 - k0 / k1) * s)
}

/// The complex number `g2 e^{-i phi2}
/// = (1/2)(1 + k2/k1) cos(k0 a) - (i/2)(k2/k0 + k0/k1) sin(k0 a)`.
/// Its modulus is strictly positive: the two terms cannot vanish together.
pub fn complex_g2(wn: &WaveNumbers, a: f64) -> Complex64 {
    let (k0, k1, k2) = (wn.k0, wn.k1, wn.k2);
    let (s, c) = (k0 * a).sin_cos();
    Complex64::new(0.5 * (1.0 + k2 / k1) * c, -0.5 * (k2 / k0 + k0 / k1) * s)
}

/// Transmission probability from the closed form
/// `T = 4 k0^2 k1^2 / [k0^2 (k1+k2)^2 + (k1^2-k0^2)(k2^2-k0^2) sin^2(k0 a)]`.
/// Maximal exactly at `k0 a = m pi`, where it equals `4/(1 + k2/k1)^2`.
pub fn transmission_probability(wn: &WaveNumbers, a: f64) -> f64 {
    let (k0, k1, k2) = (wn.k0, wn.k1, wn.k2);
    let s = (k0 * a).sin();
    let denom = k0 * k0 * (k1 + k2) * (k1 + k2)
        + (k1 * k1 - k0 * k0) * (k2 * k2 - k0 * k0) * s * s;
    4.0 * k0 * k0 * k1 * k1 / denom
}

/// Full amplitude set at one energy. Phases are negated principal arguments
/// of the [`complex_g1`]/[`complex_g2`] values, so `arg t = phi2` and
/// `arg r = phi2 - phi1` hold by construction.
pub fn amplitudes(cfg: &BarrierConfig, energy: f64) -> Result<ScatteringAmplitudes> {
    let wn = wave_numbers(cfg, energy)?;
    Ok(amplitudes_from_wave_numbers(&wn, cfg.a))
}

pub fn amplitudes_from_wave_numbers(wn: &WaveNumbers, a: f64) -> ScatteringAmplitudes {
    let cg1 = complex_g1(wn, a);
    let cg2 = complex_g2(wn, a);
    let g1 = cg1.norm();
    let g2 = cg2.norm();
    // t = (1/g2) e^{i phi2} = conj(cg2)/|cg2|^2
    let t = cg2.conj() / (g2 * g2);
    let (r, phi1) = if g1 < EPS_G1_REL * g2 {
        (Complex64::new(0.0, 0.0), None)
    } else {
        (cg1 / cg2, Some(-cg1.arg()))
    };
    let big_t = transmission_probability(wn, a);
    ScatteringAmplitudes {
        r,
        t,
        g1,
        phi1,
        g2,
        phi2: -cg2.arg(),
        transmission_probability: big_t,
        transmission_coefficient: (wn.k2 / wn.k1) * big_t,
    }
}
