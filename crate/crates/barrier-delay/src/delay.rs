//! Group delays (phase times) and resonance structure.
//!
//! The transmission group delay is `tau_t = hbar d(phi2)/dE` and the
//! reflection group delay is `tau_r = tau_t + tau_1` with
//! `tau_1 = -hbar d(phi1)/dE`. Both closed forms below are expressed in
//! units of the classical traversal time `tau_c = a / v_c`,
//! `v_c = hbar k0 / mu`. Each analytic delay has a numeric-derivative
//! cross-check built from central differences of the unwrapped phase.

use crate::amplitudes::{amplitudes_from_wave_numbers, complex_g2, EPS_G1_REL};
use crate::barrier::{wave_numbers, BarrierConfig, WaveNumbers};
use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Which scattering phase a numeric derivative differentiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DelayKind {
    /// `hbar d(phi2)/dE`.
    Transmission,
    /// `hbar d(phi2 - phi1)/dE`, the reflected-phase derivative.
    Reflection,
}

/// All delays at one energy, analytic and numeric.
#[derive(Debug, Clone, Copy)]
pub struct DelayReport {
    pub energy: f64,
    /// Classical velocity in the barrier region, hbar k0 / mu.
    pub v_c: f64,
    /// Classical traversal time a / v_c.
    pub tau_c: f64,
    pub tau_t: f64,
    /// `None` when g1 vanishes (phi1 undefined).
    pub tau_1: Option<f64>,
    pub tau_r: Option<f64>,
    pub tau_t_numeric: f64,
    /// `None` when the reflected phase is undefined or wraps across the stencil.
    pub tau_r_numeric: Option<f64>,
}

/// Closed-form values at the m-th transmission resonance `k0 a = m pi`.
#[derive(Debug, Clone, Copy)]
pub struct ResonanceSummary {
    pub m: u32,
    /// Resonance location refined from the transmission maximum; coincides
    /// with m pi to machine precision.
    pub k0a_at_peak: f64,
    /// Location of the |tau_r| extremum itself, refined by golden section.
    /// Slightly offset from m pi because the slowly varying factors shift
    /// the extremum of the ratio.
    pub k0a_at_tau_r_extremum: f64,
    pub tau_t_max: f64,
    pub tau_1_max: f64,
    pub t_max: f64,
    /// Half width Delta E of the reflection-delay peak.
    pub half_width_e: f64,
}

/// sin(x)/x with a series fallback near zero.
pub(crate) fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// Classical velocity and traversal time `(v_c, tau_c)` in the barrier region.
pub fn classical_time(cfg: &BarrierConfig, energy: f64) -> Result<(f64, f64)> {
    let wn = wave_numbers(cfg, energy)?;
    let v_c = cfg.hbar * wn.k0 / cfg.mu;
    Ok((v_c, cfg.a / v_c))
}

fn g1_squared(wn: &WaveNumbers, a: f64) -> f64 {
    let (k0, k1, k2) = (wn.k0, wn.k1, wn.k2);
    let (s, c) = (k0 * a).sin_cos();
    0.25 * (1.0 - k2 / k1).powi(2) * c * c + 0.25 * (k2 / k0 - k0 / k1).powi(2) * s * s
}

fn g2_squared(wn: &WaveNumbers, a: f64) -> f64 {
    let (k0, k1, k2) = (wn.k0, wn.k1, wn.k2);
    let (s, c) = (k0 * a).sin_cos();
    0.25 * (1.0 + k2 / k1).powi(2) * c * c + 0.25 * (k2 / k0 + k0 / k1).powi(2) * s * s
}

/// Shared oscillatory term of both delay brackets.
fn oscillatory_term(wn: &WaveNumbers, a: f64) -> f64 {
    let (k0, k1, k2) = (wn.k0, wn.k1, wn.k2);
    (1.0 - k0 * k0 / (k1 * k1)) * (k2 / k0 - k0 / k2) * sinc(2.0 * k0 * a)
}

/// Analytic transmission group delay,
/// `tau_t = (tau_c / 4 g2^2)(1 + k2/k1)[k2/k0 + k0/k1 - (1 - k0^2/k1^2)(k2/k0 - k0/k2) sin(2 k0 a)/(2 k0 a)]`.
pub fn tau_t_analytic(cfg: &BarrierConfig, energy: f64) -> Result<f64> {
    let wn = wave_numbers(cfg, energy)?;
    let (_, tau_c) = classical_time(cfg, energy)?;
    Ok(tau_t_from_wave_numbers(&wn, cfg.a, tau_c))
}

pub(crate) fn tau_t_from_wave_numbers(wn: &WaveNumbers, a: f64, tau_c: f64) -> f64 {
    let (k0, k1, k2) = (wn.k0, wn.k1, wn.k2);
    let bracket = k2 / k0 + k0 / k1 - oscillatory_term(wn, a);
    tau_c / (4.0 * g2_squared(wn, a)) * (1.0 + k2 / k1) * bracket
}

/// Analytic reflected-phase contribution,
/// `tau_1 = -(tau_c / 4 g1^2)(1 - k2/k1)[k2/k0 - k0/k1 - (1 - k0^2/k1^2)(k2/k0 - k0/k2) sin(2 k0 a)/(2 k0 a)]`.
/// `None` where g1 vanishes.
pub fn tau_1_analytic(cfg: &BarrierConfig, energy: f64) -> Result<Option<f64>> {
    let wn = wave_numbers(cfg, energy)?;
    let (_, tau_c) = classical_time(cfg, energy)?;
    Ok(tau_1_from_wave_numbers(&wn, cfg.a, tau_c))
}

pub(crate) fn tau_1_from_wave_numbers(wn: &WaveNumbers, a: f64, tau_c: f64) -> Option<f64> {
    let (k0, k1, k2) = (wn.k0, wn.k1, wn.k2);
    let g1_sq = g1_squared(wn, a);
    let g2_sq = g2_squared(wn, a);
    if g1_sq.sqrt() < EPS_G1_REL * g2_sq.sqrt() {
        return None;
    }
    let bracket = k2 / k0 - k0 / k1 - oscillatory_term(wn, a);
    Some(-tau_c / (4.0 * g1_sq) * (1.0 - k2 / k1) * bracket)
}

/// Reflection group delay `tau_r = tau_t + tau_1`; `None` iff tau_1 is.
pub fn tau_r(cfg: &BarrierConfig, energy: f64) -> Result<Option<f64>> {
    let tau_t = tau_t_analytic(cfg, energy)?;
    Ok(tau_1_analytic(cfg, energy)?.map(|tau_1| tau_t + tau_1))
}

/// Default finite-difference step for the numeric phase derivative.
pub fn default_diff_step(cfg: &BarrierConfig, energy: f64) -> f64 {
    (1e-6 * energy.abs()).max(1e-9 * cfg.v0.abs())
}

fn phase_at(cfg: &BarrierConfig, energy: f64, kind: DelayKind) -> Result<f64> {
    let wn = wave_numbers(cfg, energy)?;
    let a = cfg.a;
    match kind {
        DelayKind::Transmission => Ok(-complex_g2(&wn, a).arg()),
        DelayKind::Reflection => {
            let amp = amplitudes_from_wave_numbers(&wn, a);
            match amp.phi1 {
                Some(phi1) => Ok(amp.phi2 - phi1),
                None => Err(Error::Undefined(
                    "reflected phase undefined where g1 = 0".into(),
                )),
            }
        }
    }
}

/// Numeric group delay: central difference of the unwrapped scattering phase
/// with one Richardson extrapolation level. Signed so that it compares
/// directly to [`tau_t_analytic`] (transmission) or tau_r (reflection).
pub fn tau_numeric(cfg: &BarrierConfig, energy: f64, kind: DelayKind) -> Result<f64> {
    tau_numeric_with_step(cfg, energy, kind, default_diff_step(cfg, energy))
}

pub fn tau_numeric_with_step(
    cfg: &BarrierConfig,
    energy: f64,
    kind: DelayKind,
    h: f64,
) -> Result<f64> {
    let offsets = [-h, -h / 2.0, 0.0, h / 2.0, h];
    let mut phases = [0.0; 5];
    for (p, off) in phases.iter_mut().zip(offsets) {
        *p = phase_at(cfg, energy + off, kind)?;
    }
    // nearest-branch unwrap across the stencil; reject jumps beyond pi/2
    let mut unwrapped = phases;
    for i in 1..5 {
        let mut d = unwrapped[i] - unwrapped[i - 1];
        d -= 2.0 * PI * (d / (2.0 * PI)).round();
        if d.abs() > PI / 2.0 {
            return Err(Error::PhaseWrap(format!(
                "phase jump {d:.4} rad between stencil points at E={energy}"
            )));
        }
        unwrapped[i] = unwrapped[i - 1] + d;
    }
    let coarse = (unwrapped[4] - unwrapped[0]) / (2.0 * h);
    let fine = (unwrapped[3] - unwrapped[1]) / h;
    Ok(cfg.hbar * (4.0 * fine - coarse) / 3.0)
}

/// All delays at one energy, analytic plus numeric cross-checks.
pub fn delay_report(cfg: &BarrierConfig, energy: f64) -> Result<DelayReport> {
    let (v_c, tau_c) = classical_time(cfg, energy)?;
    let tau_t = tau_t_analytic(cfg, energy)?;
    let tau_1 = tau_1_analytic(cfg, energy)?;
    Ok(DelayReport {
        energy,
        v_c,
        tau_c,
        tau_t,
        tau_1,
        tau_r: tau_1.map(|t1| tau_t + t1),
        tau_t_numeric: tau_numeric(cfg, energy, DelayKind::Transmission)?,
        tau_r_numeric: tau_numeric(cfg, energy, DelayKind::Reflection).ok(),
    })
}

fn require_asymmetric(wn: &WaveNumbers) -> Result<()> {
    if (wn.k1 - wn.k2).abs() < 1e-12 * (wn.k1 + wn.k2) {
        return Err(Error::Undefined(
            "k1 = k2: tau_1 peak absent and half width undefined for a symmetric barrier".into(),
        ));
    }
    Ok(())
}

/// Argument of the half-width arcsine, `k0 |k1 - k2| / sqrt((k1^2-k0^2)(k2^2-k0^2))`.
fn half_width_asin_arg(wn: &WaveNumbers) -> f64 {
    let (k0, k1, k2) = (wn.k0, wn.k1, wn.k2);
    k0 * (k1 - k2).abs() / ((k1 * k1 - k0 * k0) * (k2 * k2 - k0 * k0)).sqrt()
}

/// Refines the m-th resonance location in `k0 a` by bisecting the zero of
/// sin(2 k0 a), the stationarity condition of the transmission maximum.
/// In a thickness scan at fixed energy this is exact: only sin^2(k0 a)
/// varies with a, so T is maximal exactly at k0 a = m pi.
pub fn refine_resonance_k0a(m: u32) -> f64 {
    let target = m as f64 * PI;
    let (mut lo, mut hi) = (target - 0.4, target + 0.4);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (2.0 * mid).sin() < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 * target {
            break;
        }
    }
    0.5 * (lo + hi)
}

fn golden_section_max(mut lo: f64, mut hi: f64, tol: f64, f: impl Fn(f64) -> f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}

/// Closed-form peak values at the m-th transmission resonance of a thickness
/// scan at fixed energy. The thickness is set so that `k0 a` sits at the
/// refined resonance location.
pub fn resonance_summary(cfg: &BarrierConfig, energy: f64, m: u32) -> Result<ResonanceSummary> {
    if m == 0 {
        return Err(Error::Domain("resonance index m must be >= 1".into()));
    }
    let wn = wave_numbers(cfg, energy)?;
    require_asymmetric(&wn)?;
    let (k0, k1, k2) = (wn.k0, wn.k1, wn.k2);
    let k0a_at_peak = refine_resonance_k0a(m);
    let a_peak = k0a_at_peak / k0;
    let v_c = cfg.hbar * k0 / cfg.mu;
    let tau_c = a_peak / v_c;

    let arg = half_width_asin_arg(&wn);
    if arg > 1.0 {
        return Err(Error::Domain(format!(
            "half-width arcsine argument {arg:.4} > 1: outside the k0 << k1,k2 validity regime"
        )));
    }

    // the |tau_r| extremum itself sits slightly off m pi
    let tau_r_at = |k0a: f64| -> f64 {
        let a = k0a / k0;
        let tc = a / v_c;
        match tau_1_from_wave_numbers(&wn, a, tc) {
            Some(t1) => (tau_t_from_wave_numbers(&wn, a, tc) + t1).abs(),
            None => 0.0,
        }
    };
    let k0a_at_tau_r_extremum = golden_section_max(
        k0a_at_peak - 0.1,
        k0a_at_peak + 0.1,
        1e-10,
        tau_r_at,
    );

    Ok(ResonanceSummary {
        m,
        k0a_at_peak,
        k0a_at_tau_r_extremum,
        tau_t_max: (k1 * k2 + k0 * k0) / (k0 * (k1 + k2)) * tau_c,
        tau_1_max: -(k1 * k2 - k0 * k0) / (k0 * (k1 - k2)) * tau_c,
        t_max: 4.0 / (1.0 + k2 / k1).powi(2),
        half_width_e: cfg.hbar / tau_c * arg.asin(),
    })
}

/// Maximum barrier thickness for which a Gaussian packet of time spreading
/// `w` keeps its spectral half-width below the resonance half width:
/// `a <= 2 v_c w asin(k0 |k1 - k2| / sqrt((k1^2-k0^2)(k2^2-k0^2)))`.
pub fn packet_validity_bound(cfg: &BarrierConfig, energy: f64, w: f64) -> Result<f64> {
    if !(w > 0.0) {
        return Err(Error::Domain(format!("time spreading w must be positive (got {w})")));
    }
    let wn = wave_numbers(cfg, energy)?;
    require_asymmetric(&wn)?;
    let arg = half_width_asin_arg(&wn);
    if arg > 1.0 {
        return Err(Error::Domain(format!(
            "half-width arcsine argument {arg:.4} > 1: outside the k0 << k1,k2 validity regime"
        )));
    }
    let v_c = cfg.hbar * wn.k0 / cfg.mu;
    Ok(2.0 * v_c * w * arg.asin())
}
