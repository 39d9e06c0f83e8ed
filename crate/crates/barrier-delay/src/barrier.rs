//! Barrier geometry and wave numbers.

use crate::error::{Error, Result};

/// Relative guard below which `E - V0` is treated as degenerate: the barrier
/// wave number k0 vanishes there and the classical traversal time diverges.
pub const ENERGY_GUARD_REL: f64 = 1e-12;

/// An asymmetric rectangular barrier: height `V0` on `[0, a]`, flat
/// potentials `V1` (left) and `V2` (right), particle mass `mu`, and the
/// action scale `hbar`. Requires `V0 > V1` and `V0 > V2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrierConfig {
    pub v0: f64,
    pub v1: f64,
    pub v2: f64,
    /// Barrier thickness, `a >= 0`.
    pub a: f64,
    pub mu: f64,
    pub hbar: f64,
}

impl BarrierConfig {
    /// Natural-unit constructor (`mu = 1`, `hbar = 1`).
    pub fn new(v0: f64, v1: f64, v2: f64, a: f64) -> Result<Self> {
        Self::with_units(v0, v1, v2, a, 1.0, 1.0)
    }

    pub fn with_units(v0: f64, v1: f64, v2: f64, a: f64, mu: f64, hbar: f64) -> Result<Self> {
        if !(v0.is_finite() && v1.is_finite() && v2.is_finite() && a.is_finite()) {
            return Err(Error::Domain("non-finite barrier parameter".into()));
        }
        if v0 <= v1 || v0 <= v2 {
            return Err(Error::Domain(format!(
                "barrier requires V0 > V1 and V0 > V2 (got V0={v0}, V1={v1}, V2={v2})"
            )));
        }
        if a < 0.0 {
            return Err(Error::Domain(format!("thickness must be >= 0 (got {a})")));
        }
        if !(mu > 0.0) || !(hbar > 0.0) {
            return Err(Error::Domain(format!(
                "mass and hbar must be positive (got mu={mu}, hbar={hbar})"
            )));
        }
        Ok(Self { v0, v1, v2, a, mu, hbar })
    }

    /// Dimensionless front door matching the figure captions: potentials as
    /// ratios to the incidence energy (`V0/E`, `V1/E`, `V2/E`) and the
    /// re-scaled thickness `k0·a`. Internally fixes `E = 1`, `mu = hbar = 1`.
    /// Returns the config together with that energy.
    pub fn from_ratios(v0e: f64, v1e: f64, v2e: f64, k0a: f64) -> Result<(Self, f64)> {
        let energy = 1.0;
        if v0e >= 1.0 {
            return Err(Error::Domain(format!(
                "over-barrier regime requires V0/E < 1 (got {v0e})"
            )));
        }
        let k0 = (2.0 * (energy - v0e)).sqrt();
        let cfg = Self::new(v0e, v1e, v2e, k0a / k0)?;
        Ok((cfg, energy))
    }

    /// Thickness replaced, everything else kept.
    pub fn with_thickness(self, a: f64) -> Result<Self> {
        Self::with_units(self.v0, self.v1, self.v2, a, self.mu, self.hbar)
    }

    /// The barrier traversed from the other side: `V1` and `V2` exchanged.
    pub fn swapped(self) -> Self {
        Self { v1: self.v2, v2: self.v1, ..self }
    }
}

/// The wave-number triple at one energy: `k_j = sqrt(2 mu (E - V_j)) / hbar`
/// for the barrier region (`k0`), the left lead (`k1`), and the right lead
/// (`k2`). Over-barrier, so all three are real and positive, with `k1 > k0`
/// and `k2 > k0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveNumbers {
    pub k0: f64,
    pub k1: f64,
    pub k2: f64,
    pub energy: f64,
}

/// Computes the wave numbers, rejecting energies at or below the barrier top
/// (within [`ENERGY_GUARD_REL`] of `V0`) where k0 degenerates.
pub fn wave_numbers(cfg: &BarrierConfig, energy: f64) -> Result<WaveNumbers> {
    if !energy.is_finite() {
        return Err(Error::Domain("non-finite energy".into()));
    }
    let guard = ENERGY_GUARD_REL * cfg.v0.abs().max(energy.abs()).max(1.0);
    if energy - cfg.v0 <= guard {
        return Err(Error::Domain(format!(
            "energy {energy} not above barrier top V0={} (k0 degenerate)",
            cfg.v0
        )));
    }
    if energy <= cfg.v1 || energy <= cfg.v2 {
        return Err(Error::Domain(format!(
            "energy {energy} not above lead potentials V1={}, V2={}",
            cfg.v1, cfg.v2
        )));
    }
    let k = |v: f64| (2.0 * cfg.mu * (energy - v)).sqrt() / cfg.hbar;
    Ok(WaveNumbers { k0: k(cfg.v0), k1: k(cfg.v1), k2: k(cfg.v2), energy })
}
