//! Named parameter sets for the three reference figures.

use barrier_delay::{BarrierConfig, Result, ScanMode, ScanRequest};

/// Dimensionless ratios V0/E, V1/E, V2/E used by figures 1 and 2.
pub const FIG1_RATIOS: (f64, f64, f64) = (0.95, 0.0, 0.3);
/// The positive-peak (dashed) configuration of figure 2: leads swapped.
pub const FIG2_DASHED_RATIOS: (f64, f64, f64) = (0.95, 0.3, 0.0);
/// Figure 3 raw units: V0 = 1, V1 = 0, V2 = 0.3 V0, a = 10 / sqrt(0.3 mu V0).
pub const FIG3_V0: f64 = 1.0;
pub const FIG3_V1: f64 = 0.0;
pub const FIG3_V2_OVER_V0: f64 = 0.3;

pub const DEFAULT_POINTS: usize = 2000;

/// Thickness-scan request for figures 1 and 2 (k0a in [0.5, 10]).
pub fn thickness_request(ratios: (f64, f64, f64), n_points: usize) -> Result<ScanRequest> {
    let (cfg, energy) = BarrierConfig::from_ratios(ratios.0, ratios.1, ratios.2, 1.0)?;
    Ok(ScanRequest {
        cfg,
        mode: ScanMode::Thickness { energy },
        k0a_min: 0.5,
        k0a_max: 10.0,
        n_points,
    })
}

/// Energy-scan request for figure 3: E in [V0, 1.15 V0] maps to k0a in [0, 10].
pub fn figure3_request(n_points: usize) -> Result<ScanRequest> {
    let v2 = FIG3_V2_OVER_V0 * FIG3_V0;
    let a = 10.0 / (FIG3_V2_OVER_V0 * FIG3_V0).sqrt();
    let cfg = BarrierConfig::new(FIG3_V0, FIG3_V1, v2, a)?;
    Ok(ScanRequest {
        cfg,
        mode: ScanMode::Energy,
        k0a_min: 0.0,
        k0a_max: 10.0,
        n_points,
    })
}

pub fn by_figure(figure: u8, n_points: usize) -> Result<ScanRequest> {
    match figure {
        1 | 2 => thickness_request(FIG1_RATIOS, n_points),
        3 => figure3_request(n_points),
        other => Err(barrier_delay::Error::InvalidInput(format!(
            "unknown figure {other}; expected 1, 2, or 3"
        ))),
    }
}
