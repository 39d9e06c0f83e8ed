//! JSON run configuration (`--config file.json`).
//!
//! Schema:
//! ```json
//! {
//!   "barrier": {
//!     "ratios": {"v0e": 0.95, "v1e": 0.0, "v2e": 0.3}
//!     // or "raw": {"v0": 1.0, "v1": 0.0, "v2": 0.3, "a": 18.25, "mu": 1.0, "hbar": 1.0, "energy": 1.05}
//!   },
//!   "scan": {"mode": "thickness", "k0a_min": 0.5, "k0a_max": 10.0, "points": 2000},
//!   "outputs": ["tau_t", "tau_r"],
//!   "outdir": "out",
//!   "format": "both"
//! }
//! ```
//! Exactly one of `ratios` / `raw` must be present.

use barrier_delay::{BarrierConfig, Error, Result, ScanMode, ScanRequest};
use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub barrier: BarrierSection,
    pub scan: Option<ScanSection>,
    pub outputs: Option<Vec<String>>,
    pub outdir: Option<String>,
    pub format: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BarrierSection {
    pub ratios: Option<Ratios>,
    pub raw: Option<RawUnits>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Ratios {
    pub v0e: f64,
    pub v1e: f64,
    pub v2e: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawUnits {
    pub v0: f64,
    pub v1: f64,
    pub v2: f64,
    pub a: f64,
    #[serde(default = "one")]
    pub mu: f64,
    #[serde(default = "one")]
    pub hbar: f64,
    pub energy: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSection {
    pub mode: String,
    pub k0a_min: f64,
    pub k0a_max: f64,
    pub points: usize,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        let cfg: FileConfig = serde_json::from_str(&text)
            .map_err(|e| Error::InvalidInput(format!("malformed config {}: {e}", path.display())))?;
        cfg.barrier.validate()?;
        Ok(cfg)
    }

    /// Barrier plus the incidence energy (1 for the ratio route).
    pub fn barrier(&self) -> Result<(BarrierConfig, f64)> {
        self.barrier.resolve(1.0)
    }

    pub fn scan_request(&self) -> Result<ScanRequest> {
        let scan = self
            .scan
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("config has no scan section".into()))?;
        let mode = match scan.mode.as_str() {
            "thickness" => {
                let (_, energy) = self.barrier()?;
                ScanMode::Thickness { energy }
            }
            "energy" => ScanMode::Energy,
            other => {
                return Err(Error::InvalidInput(format!(
                    "scan mode must be thickness or energy (got {other})"
                )))
            }
        };
        let (cfg, _) = self.barrier()?;
        Ok(ScanRequest {
            cfg,
            mode,
            k0a_min: scan.k0a_min,
            k0a_max: scan.k0a_max,
            n_points: scan.points,
        })
    }
}

impl BarrierSection {
    pub fn validate(&self) -> Result<()> {
        match (&self.ratios, &self.raw) {
            (Some(_), None) | (None, Some(_)) => Ok(()),
            _ => Err(Error::InvalidInput(
                "barrier must provide exactly one of ratios / raw".into(),
            )),
        }
    }

    pub fn resolve(&self, default_k0a: f64) -> Result<(BarrierConfig, f64)> {
        self.validate()?;
        if let Some(r) = &self.ratios {
            return BarrierConfig::from_ratios(r.v0e, r.v1e, r.v2e, default_k0a);
        }
        let raw = self.raw.as_ref().expect("validated");
        let cfg = BarrierConfig::with_units(raw.v0, raw.v1, raw.v2, raw.a, raw.mu, raw.hbar)?;
        Ok((cfg, raw.energy))
    }
}
