//! Parameter sweeps over thickness or energy, indexed by the re-scaled
//! variable `k0 a` as in the figures. Rows are computed independently (in
//! parallel with the `parallel` feature); phase unwrapping is a sequential
//! post-pass. Per-row failures are flagged, never aborting the scan.

use crate::amplitudes::amplitudes_from_wave_numbers;
use crate::barrier::{wave_numbers, BarrierConfig};
use crate::delay::{tau_1_from_wave_numbers, tau_t_from_wave_numbers};
use crate::error::{Error, Result};
use crate::par;
use std::f64::consts::PI;

/// Wrapped jumps closer to pi than this margin are ambiguous.
pub const WRAP_AMBIGUITY_MARGIN: f64 = 1e-3;

/// What varies along the scan. The grid is always expressed in `k0 a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScanMode {
    /// Fixed incidence energy, thickness `a = k0a / k0` per row.
    Thickness { energy: f64 },
    /// Fixed thickness from the config, energy `E = V0 + (hbar k0a / a)^2 / (2 mu)` per row.
    Energy,
}

#[derive(Debug, Clone)]
pub struct ScanRequest {
    pub cfg: BarrierConfig,
    pub mode: ScanMode,
    pub k0a_min: f64,
    pub k0a_max: f64,
    pub n_points: usize,
}

impl ScanRequest {
    fn validate(&self) -> Result<()> {
        if !(self.k0a_min < self.k0a_max) {
            return Err(Error::InvalidInput(format!(
                "scan range must satisfy lo < hi (got {}..{})",
                self.k0a_min, self.k0a_max
            )));
        }
        if self.k0a_min < 0.0 {
            return Err(Error::InvalidInput("k0a must be non-negative".into()));
        }
        if self.n_points < 2 {
            return Err(Error::InvalidInput("scan needs at least 2 points".into()));
        }
        if let ScanMode::Energy = self.mode {
            if self.cfg.a <= 0.0 {
                return Err(Error::InvalidInput(
                    "energy scan needs a positive fixed thickness".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Machine-readable per-row status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowFlag {
    Ok,
    /// Energy at or below the barrier top; row not computed.
    DomainError,
    /// g1 = 0: tau_1 and phi1 undefined at this row.
    Tau1Undefined,
    /// Ambiguous phase jump from the previous row; unwrapped phase re-anchored.
    PhaseWrap,
}

impl RowFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            RowFlag::Ok => "ok",
            RowFlag::DomainError => "domain_error",
            RowFlag::Tau1Undefined => "tau1_undefined",
            RowFlag::PhaseWrap => "phase_wrap",
        }
    }
}

/// One scan row; delays are in units of the per-row classical time, and
/// undefined entries are NaN with the reason in `flag`.
#[derive(Debug, Clone, Copy)]
pub struct ScanRow {
    pub k0a: f64,
    pub energy: f64,
    pub a: f64,
    pub tau_t_over_tau_c: f64,
    pub tau_1_over_tau_c: f64,
    pub tau_r_over_tau_c: f64,
    pub transmission_probability: f64,
    pub transmission_coefficient: f64,
    pub phi1_unwrapped: f64,
    pub phi2_unwrapped: f64,
    pub flag: RowFlag,
}

#[derive(Debug, Clone)]
pub struct ScanResult {
    pub rows: Vec<ScanRow>,
}

pub const CSV_HEADER: &str =
    "k0a,E,a,tau_t/tau_c,tau_1/tau_c,tau_r/tau_c,T,Tc,phi1_unwrapped,phi2_unwrapped,flags";

impl ScanResult {
    /// CSV with floats at 12 significant digits; byte-identical across runs.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.rows.len() * 96 + CSV_HEADER.len() + 1);
        out.push_str(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            let f = crate::fmt_sig12;
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{}\n",
                f(row.k0a),
                f(row.energy),
                f(row.a),
                f(row.tau_t_over_tau_c),
                f(row.tau_1_over_tau_c),
                f(row.tau_r_over_tau_c),
                f(row.transmission_probability),
                f(row.transmission_coefficient),
                f(row.phi1_unwrapped),
                f(row.phi2_unwrapped),
                row.flag.as_str()
            ));
        }
        out
    }

    /// Indices of interior local maxima of the selected value, ignoring
    /// rows with NaN entries.
    pub fn local_maxima(&self, value: impl Fn(&ScanRow) -> f64) -> Vec<usize> {
        let vals: Vec<f64> = self.rows.iter().map(&value).collect();
        let mut out = Vec::new();
        for i in 1..vals.len().saturating_sub(1) {
            let (l, c, r) = (vals[i - 1], vals[i], vals[i + 1]);
            if l.is_finite() && c.is_finite() && r.is_finite() && c > l && c >= r {
                out.push(i);
            }
        }
        out
    }
}

/// Restores a continuous phase from principal-value samples by adding
/// multiples of 2 pi. Fails with [`Error::WrapAmbiguity`] when a consecutive
/// wrapped jump lies within [`WRAP_AMBIGUITY_MARGIN`] of pi, where the
/// branch cannot be decided; refine the grid in that case.
pub fn unwrap_phase(samples: &[f64]) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(samples.len());
    let mut prev_in = f64::NAN;
    let mut prev_out = f64::NAN;
    for (i, &s) in samples.iter().enumerate() {
        if out.is_empty() {
            out.push(s);
        } else {
            let mut d = s - prev_in;
            d -= 2.0 * PI * (d / (2.0 * PI)).round();
            if d.abs() > PI - WRAP_AMBIGUITY_MARGIN {
                return Err(Error::WrapAmbiguity { index: i, jump: d });
            }
            out.push(prev_out + d);
        }
        prev_in = s;
        prev_out = *out.last().unwrap();
    }
    Ok(out)
}

struct RawRow {
    k0a: f64,
    energy: f64,
    a: f64,
    tau_t_rel: f64,
    tau_1_rel: f64,
    transmission_probability: f64,
    transmission_coefficient: f64,
    phi1: f64,
    phi2: f64,
    flag: RowFlag,
}

fn compute_row(cfg: &BarrierConfig, mode: ScanMode, k0a: f64) -> RawRow {
    let bad = |energy: f64, a: f64| RawRow {
        k0a,
        energy,
        a,
        tau_t_rel: f64::NAN,
        tau_1_rel: f64::NAN,
        transmission_probability: f64::NAN,
        transmission_coefficient: f64::NAN,
        phi1: f64::NAN,
        phi2: f64::NAN,
        flag: RowFlag::DomainError,
    };
    let (energy, a) = match mode {
        ScanMode::Thickness { energy } => {
            let wn = match wave_numbers(cfg, energy) {
                Ok(wn) => wn,
                Err(_) => return bad(energy, f64::NAN),
            };
            (energy, k0a / wn.k0)
        }
        ScanMode::Energy => {
            // E = V0 + (hbar k0)^2 / (2 mu) with k0 = k0a / a
            let energy = cfg.v0 + (cfg.hbar * k0a / cfg.a).powi(2) / (2.0 * cfg.mu);
            (energy, cfg.a)
        }
    };
    let wn = match wave_numbers(cfg, energy) {
        Ok(wn) => wn,
        Err(_) => return bad(energy, a),
    };
    let tau_c = a * cfg.mu / (cfg.hbar * wn.k0);
    let amp = amplitudes_from_wave_numbers(&wn, a);
    let tau_t = tau_t_from_wave_numbers(&wn, a, tau_c);
    let tau_1 = tau_1_from_wave_numbers(&wn, a, tau_c);
    let (tau_t_rel, tau_1_rel) = if tau_c > 0.0 {
        (tau_t / tau_c, tau_1.map_or(f64::NAN, |t| t / tau_c))
    } else {
        (0.0, tau_1.map_or(f64::NAN, |_| 0.0))
    };
    RawRow {
        k0a,
        energy,
        a,
        tau_t_rel,
        tau_1_rel,
        transmission_probability: amp.transmission_probability,
        transmission_coefficient: amp.transmission_coefficient,
        phi1: amp.phi1.unwrap_or(f64::NAN),
        phi2: amp.phi2,
        flag: if amp.phi1.is_none() { RowFlag::Tau1Undefined } else { RowFlag::Ok },
    }
}

/// Nearest-branch continuation over a column that may contain NaN gaps.
/// Ambiguous jumps flag the row instead of aborting.
fn unwrap_column(raw: &[RawRow], pick: impl Fn(&RawRow) -> f64, flags: &mut [RowFlag]) -> Vec<f64> {
    let mut out = vec![f64::NAN; raw.len()];
    let mut prev: Option<(f64, f64)> = None; // (principal, unwrapped)
    for (i, row) in raw.iter().enumerate() {
        let p = pick(row);
        if !p.is_finite() {
            continue;
        }
        match prev {
            None => out[i] = p,
            Some((p_prev, u_prev)) => {
                let mut d = p - p_prev;
                d -= 2.0 * PI * (d / (2.0 * PI)).round();
                if d.abs() > PI - WRAP_AMBIGUITY_MARGIN {
                    if flags[i] == RowFlag::Ok {
                        flags[i] = RowFlag::PhaseWrap;
                    }
                    out[i] = p; // re-anchor
                } else {
                    out[i] = u_prev + d;
                }
            }
        }
        prev = Some((p, out[i]));
    }
    out
}

fn run_scan(req: &ScanRequest) -> Result<ScanResult> {
    req.validate()?;
    let n = req.n_points;
    let step = (req.k0a_max - req.k0a_min) / (n as f64 - 1.0);
    let raw: Vec<RawRow> = par::map_indexed(n, |i| {
        compute_row(&req.cfg, req.mode, req.k0a_min + step * i as f64)
    });
    let mut flags: Vec<RowFlag> = raw.iter().map(|r| r.flag).collect();
    let phi1_unwrapped = unwrap_column(&raw, |r| r.phi1, &mut flags);
    let phi2_unwrapped = unwrap_column(&raw, |r| r.phi2, &mut flags);
    let rows = raw
        .iter()
        .enumerate()
        .map(|(i, r)| ScanRow {
            k0a: r.k0a,
            energy: r.energy,
            a: r.a,
            tau_t_over_tau_c: r.tau_t_rel,
            tau_1_over_tau_c: r.tau_1_rel,
            tau_r_over_tau_c: r.tau_t_rel + r.tau_1_rel,
            transmission_probability: r.transmission_probability,
            transmission_coefficient: r.transmission_coefficient,
            phi1_unwrapped: phi1_unwrapped[i],
            phi2_unwrapped: phi2_unwrapped[i],
            flag: flags[i],
        })
        .collect();
    Ok(ScanResult { rows })
}

/// Thickness sweep at fixed energy: `a` runs so that `k0 a` covers the range.
pub fn scan_thickness(req: &ScanRequest) -> Result<ScanResult> {
    match req.mode {
        ScanMode::Thickness { .. } => run_scan(req),
        ScanMode::Energy => Err(Error::InvalidInput("expected thickness mode".into())),
    }
}

/// Energy sweep at fixed thickness: `E` runs so that `k0 a` covers the range.
/// Rows at or below the barrier top are flagged `domain_error`.
pub fn scan_energy(req: &ScanRequest) -> Result<ScanResult> {
    match req.mode {
        ScanMode::Energy => run_scan(req),
        ScanMode::Thickness { .. } => Err(Error::InvalidInput("expected energy mode".into())),
    }
}
