//! Over-barrier scattering against an asymmetric rectangular barrier.
//!
//! A particle with energy `E > V0` crosses a barrier of height `V0` occupying
//! `[0, a]`, with flat potentials `V1` on the left and `V2` on the right
//! (`V0 > V1`, `V0 > V2`). The library computes the complex reflection and
//! transmission amplitudes, the associated group delays (phase times), the
//! transmission-resonance structure at `k0·a = mπ`, and verifies the delays
//! independently with a time-domain Gaussian wave-packet measurement.
//!
//! Modules:
//! - [`barrier`]: configuration and wave numbers
//! - [`amplitudes`]: closed-form complex amplitudes `r`, `t` and probabilities
//! - [`delay`]: analytic group delays, numeric-derivative cross-checks,
//!   resonance summaries, and the packet validity bound
//! - [`wavepacket`]: Gaussian packet synthesis and peak-arrival measurement
//! - [`scan`]: parameter sweeps over thickness or energy with phase unwrapping
//! - [`svg`]: single-series line plots for scan outputs
//!
//! All numerics are pure functions of immutable inputs. With the `parallel`
//! feature (default) the grid-shaped work runs on rayon; without it the same
//! code runs sequentially.

pub mod amplitudes;
pub mod barrier;
pub mod delay;
mod error;
pub(crate) mod par;
pub mod scan;
pub mod svg;
pub mod wavepacket;

pub use amplitudes::{
    amplitudes, complex_g1, complex_g2, transmission_probability, ScatteringAmplitudes,
};
pub use barrier::{wave_numbers, BarrierConfig, WaveNumbers};
pub use delay::{
    classical_time, delay_report, packet_validity_bound, refine_resonance_k0a, resonance_summary,
    tau_1_analytic, tau_numeric, tau_r, tau_t_analytic, DelayKind, DelayReport, ResonanceSummary,
};
pub use error::{Error, Result};
pub use scan::{
    scan_energy, scan_thickness, unwrap_phase, RowFlag, ScanMode, ScanRequest, ScanResult, ScanRow,
};
pub use wavepacket::{distortion_metric, synthesize, PacketMeasurement, PacketSpec};

/// Formats a float with at most 12 significant digits, shortest form.
///
/// Output is deterministic: scientific notation with trailing zeros stripped
/// from the mantissa, so repeated runs produce byte-identical CSV files.
pub fn fmt_sig12(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let s = format!("{:.11e}", x);
    // split mantissa / exponent and strip trailing zeros from the mantissa
    let (mant, exp) = s.split_once('e').expect("exponential format");
    let mant = mant.trim_end_matches('0').trim_end_matches('.');
    format!("{mant}e{exp}")
}
