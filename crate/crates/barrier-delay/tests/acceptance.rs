//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Resonance locations are refined through the transmission maximum (the
//! stationarity of sin^2(k0 a)), which pins them at k0 a = m pi to machine
//! precision; the raw extremum of the delay-to-classical-time ratio itself
//! sits a few 1e-4..1e-2 in k0 a away because of the slowly varying
//! prefactors.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use barrier_delay::{
    refine_resonance_k0a, scan_energy, scan_thickness, synthesize, tau_1_analytic, tau_numeric,
    tau_r, tau_t_analytic, wave_numbers, BarrierConfig, DelayKind, PacketSpec, RowFlag, ScanMode,
    ScanRequest,
};

fn check(criterion: u32, desc: &str, ok: bool, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("ACCEPTANCE {criterion} {verdict}: {desc} ({detail})");
    assert!(ok, "criterion {criterion} failed: {desc} ({detail})");
}

fn fig1_request(n_points: usize) -> ScanRequest {
    let (cfg, energy) = BarrierConfig::from_ratios(0.95, 0.0, 0.3, 1.0).unwrap();
    ScanRequest {
        cfg,
        mode: ScanMode::Thickness { energy },
        k0a_min: 0.5,
        k0a_max: 10.0,
        n_points,
    }
}

/// Random asymmetric barrier in the over-barrier regime, E = 1.
fn sample_config(rng: &mut impl Rng) -> BarrierConfig {
    let v0 = rng.gen_range(0.5..0.99);
    let v1 = rng.gen_range(0.0..0.9) * v0;
    let v2 = rng.gen_range(0.0..0.9) * v0;
    let a = rng.gen_range(0.1..30.0);
    BarrierConfig::new(v0, v1, v2, a).unwrap()
}

/// Random barrier in the near-top regime k0 << k1, k2 with well-separated
/// leads, where the resonance anomaly statements apply.
fn sample_resonant_regime(rng: &mut impl Rng) -> BarrierConfig {
    loop {
        let v0: f64 = rng.gen_range(0.85..0.99);
        let v1 = rng.gen_range(0.0..0.5) * v0;
        let v2 = rng.gen_range(0.0..0.5) * v0;
        if (v1 - v2).abs() < 0.01 * v0 {
            continue;
        }
        return BarrierConfig::new(v0, v1, v2, 1.0).unwrap();
    }
}

#[test]
fn criterion_1_figure_one_transmission_peaks() {
    let req = fig1_request(2000);
    let started = Instant::now();
    let scan = scan_thickness(&req).unwrap();
    let elapsed = started.elapsed();

    let energy = 1.0;
    let wn = wave_numbers(&req.cfg, energy).unwrap();
    let expected_peak = (wn.k1 * wn.k2 + wn.k0 * wn.k0) / (wn.k0 * (wn.k1 + wn.k2));

    let maxima = scan.local_maxima(|r| r.tau_t_over_tau_c);
    let mut ok = maxima.len() == 3 && elapsed.as_secs_f64() < 1.0;
    let mut detail = format!("{} maxima, scan took {:.3}s", maxima.len(), elapsed.as_secs_f64());
    for (i, &idx) in maxima.iter().enumerate() {
        let m = i as u32 + 1;
        let target = m as f64 * PI;
        // grid maximum sits at the resonance up to the slow-prefactor offset
        ok &= (scan.rows[idx].k0a - target).abs() < 0.05;
        // refinement through the transmission maximum pins it to m pi
        let refined = refine_resonance_k0a(m);
        ok &= (refined - target).abs() <= 1e-9;
        // peak value at the refined location matches the closed form
        let cfg = req.cfg.with_thickness(refined / wn.k0).unwrap();
        let tau_rel = tau_t_analytic(&cfg, energy).unwrap() * wn.k0 / cfg.a;
        ok &= (tau_rel - expected_peak).abs() < 1e-9;
        ok &= (tau_rel - 2.1590).abs() < 1e-3;
        detail = format!("{detail}; m={m} refined {refined:.12} peak {tau_rel:.6}");
    }
    check(1, "figure-1 thickness scan: tau_t/tau_c peaks at m pi of height ~2.1590", ok, &detail);
}

#[test]
fn criterion_2_figure_two_reflection_peaks() {
    let req = fig1_request(2000);
    let energy = 1.0;
    let wn = wave_numbers(&req.cfg, energy).unwrap();

    // solid curve: negative peaks at the resonances
    let scan = scan_thickness(&req).unwrap();
    let dips = scan.local_maxima(|r| -r.tau_r_over_tau_c);
    let deepest = dips
        .iter()
        .map(|&i| scan.rows[i].tau_r_over_tau_c)
        .fold(f64::INFINITY, f64::min);

    // closed-form values exactly at the refined resonance
    let cfg_res = req.cfg.with_thickness(PI / wn.k0).unwrap();
    let tau_c = cfg_res.a / wn.k0;
    let tau_t_peak = tau_t_analytic(&cfg_res, energy).unwrap();
    let tau_1_peak = tau_1_analytic(&cfg_res, energy).unwrap().unwrap();
    let tau_r_peak = tau_r(&cfg_res, energy).unwrap().unwrap();

    // dashed curve: swapped leads give positive peaks of equal tau_1 magnitude
    let swapped = cfg_res.swapped();
    let tau_1_swapped = tau_1_analytic(&swapped, energy).unwrap().unwrap();
    let tau_r_swapped = tau_r(&swapped, energy).unwrap().unwrap();

    let ratio = tau_1_peak.abs() / tau_t_peak;
    let ok = (tau_r_peak / tau_c - -19.379255804998158).abs() < 1e-9
        && (deepest - tau_r_peak / tau_c).abs() < 0.01
        && tau_r_swapped > 0.0
        && (tau_1_swapped + tau_1_peak).abs() < 1e-9 * tau_1_peak.abs()
        && (ratio - 9.976225246210667).abs() < 1e-9 * ratio
        && tau_r_peak.abs() > tau_t_peak;
    check(
        2,
        "figure-2: tau_r peaks ~ -19.38 tau_c, swapped preset positive, |tau_1max|/tau_tmax ~ 9.98",
        ok,
        &format!(
            "tau_r/tau_c={:.6}, grid dip {:.6}, swapped {:.6}, ratio {:.6}",
            tau_r_peak / tau_c,
            deepest,
            tau_r_swapped / tau_c,
            ratio
        ),
    );
}

#[test]
fn criterion_3_figure_three_energy_dips() {
    let a = 10.0 / 0.3f64.sqrt();
    let cfg = BarrierConfig::new(1.0, 0.0, 0.3, a).unwrap();
    let req = ScanRequest {
        cfg,
        mode: ScanMode::Energy,
        k0a_min: 0.0,
        k0a_max: 10.0,
        n_points: 2000,
    };
    let scan = scan_energy(&req).unwrap();
    let dips: Vec<usize> = scan
        .local_maxima(|r| -r.tau_r_over_tau_c)
        .into_iter()
        .filter(|&i| scan.rows[i].tau_r_over_tau_c < -1.0)
        .collect();
    let mut ok = dips.len() == 3;
    let mut detail = format!("{} dips", dips.len());
    for (i, &idx) in dips.iter().enumerate() {
        let m = i as f64 + 1.0;
        ok &= scan.rows[idx].tau_r_over_tau_c < 0.0;
        // refine the resonance condition sin(k0 a) = 0 in energy, bracketed
        // around the grid dip
        let k0a_of = |e: f64| (2.0 * (e - cfg.v0)).sqrt() * a;
        let (mut lo, mut hi) = (scan.rows[idx - 1].energy, scan.rows[idx + 1].energy);
        // widen until the bracket straddles the sign change of sin
        while (k0a_of(lo).sin()) * (k0a_of(hi).sin()) > 0.0 {
            lo -= 1e-4;
            hi += 1e-4;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if k0a_of(lo).sin() * k0a_of(mid).sin() <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let k0a_res = k0a_of(0.5 * (lo + hi));
        ok &= (k0a_res - m * PI).abs() < 1e-6;
        detail = format!("{detail}; m={m} at k0a={k0a_res:.9}");
    }
    check(3, "figure-3 energy scan: negative tau_r dips at k0a = m pi (1e-6)", ok, &detail);
}

#[test]
fn criterion_4_probability_current_conservation() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0004);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let cfg = sample_config(&mut rng);
        let amp = barrier_delay::amplitudes(&cfg, 1.0).unwrap();
        let wn = wave_numbers(&cfg, 1.0).unwrap();
        let flux = amp.r.norm_sqr() + (wn.k2 / wn.k1) * amp.t.norm_sqr();
        worst = worst.max((flux - 1.0).abs());
    }
    check(
        4,
        "|r|^2 + (k2/k1)|t|^2 = 1 to 1e-12 over 10^4 random configs",
        worst < 1e-12,
        &format!("worst deviation {worst:.3e}"),
    );
}

#[test]
fn criterion_5_average_principle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0005);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    while count < 1_000 {
        let cfg = sample_config(&mut rng);
        let (Some(tr_left), Some(tr_right)) = (
            tau_r(&cfg, 1.0).unwrap(),
            tau_r(&cfg.swapped(), 1.0).unwrap(),
        ) else {
            continue;
        };
        let tau_t = tau_t_analytic(&cfg, 1.0).unwrap();
        let rel = (tr_left + tr_right - 2.0 * tau_t).abs() / (2.0 * tau_t).abs().max(1e-300);
        worst = worst.max(rel);
        count += 1;
    }
    check(
        5,
        "tau_r(V1,V2) + tau_r(V2,V1) = 2 tau_t to 1e-9 over 10^3 samples",
        worst < 1e-9,
        &format!("worst relative deviation {worst:.3e}"),
    );
}

#[test]
fn criterion_6_anomaly_linkage() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0006);
    let mut counterexamples = 0;
    for _ in 0..1_000 {
        let cfg = sample_resonant_regime(&mut rng);
        let wn = wave_numbers(&cfg, 1.0).unwrap();
        let m = rng.gen_range(1..=3) as f64;
        let cfg = cfg.with_thickness(m * PI / wn.k0).unwrap();
        let amp = barrier_delay::amplitudes(&cfg, 1.0).unwrap();
        let resonant_tau_r = tau_r(&cfg, 1.0).unwrap().unwrap();
        let k1_gt_k2 = wn.k1 > wn.k2;
        let t_max_gt_1 = amp.transmission_probability > 1.0;
        let tau_r_neg = resonant_tau_r < 0.0;
        if t_max_gt_1 != k1_gt_k2 || tau_r_neg != k1_gt_k2 {
            counterexamples += 1;
        }
    }
    check(
        6,
        "T_max > 1 <=> k1 > k2 <=> resonant tau_r < 0 over 10^3 samples",
        counterexamples == 0,
        &format!("{counterexamples} counterexamples"),
    );
}

#[test]
fn criterion_7_derivative_oracle() {
    // thickness grid at fixed energy (fig-1 parameters)
    let (cfg0, energy) = BarrierConfig::from_ratios(0.95, 0.0, 0.3, 1.0).unwrap();
    let wn = wave_numbers(&cfg0, energy).unwrap();
    let mut checked = 0usize;
    let mut excluded = 0usize;
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let k0a = 0.5 + (10.0 - 0.5) * i as f64 / 999.0;
        let cfg = cfg0.with_thickness(k0a / wn.k0).unwrap();
        let tau_c = cfg.a / wn.k0;
        let floor = 1e-6 * tau_c;

        let tau_t = tau_t_analytic(&cfg, energy).unwrap();
        if tau_t.abs() > floor {
            let num = tau_numeric(&cfg, energy, DelayKind::Transmission).unwrap();
            worst = worst.max(((num - tau_t) / tau_t).abs());
            checked += 1;
        } else {
            excluded += 1;
        }

        match (tau_r(&cfg, energy).unwrap(), tau_numeric(&cfg, energy, DelayKind::Reflection)) {
            (Some(tr), Ok(num)) if tr.abs() > floor => {
                worst = worst.max(((num - tr) / tr).abs());
                checked += 1;
            }
            _ => excluded += 1, // undefined, wrapped, or below the floor
        }
    }
    // energy grid at fixed thickness (fig-3 parameters, interior points)
    let a = 10.0 / 0.3f64.sqrt();
    let cfg = BarrierConfig::new(1.0, 0.0, 0.3, a).unwrap();
    for i in 0..1000 {
        let e = 1.001 + (1.15 - 1.001) * i as f64 / 999.0;
        let wn_e = wave_numbers(&cfg, e).unwrap();
        let floor = 1e-6 * (a / wn_e.k0);
        let tau_t = tau_t_analytic(&cfg, e).unwrap();
        if tau_t.abs() > floor {
            let num = tau_numeric(&cfg, e, DelayKind::Transmission).unwrap();
            worst = worst.max(((num - tau_t) / tau_t).abs());
            checked += 1;
        }
        match (tau_r(&cfg, e).unwrap(), tau_numeric(&cfg, e, DelayKind::Reflection)) {
            (Some(tr), Ok(num)) if tr.abs() > floor => {
                worst = worst.max(((num - tr) / tr).abs());
                checked += 1;
            }
            _ => excluded += 1,
        }
    }
    check(
        7,
        "analytic delays match Richardson-extrapolated hbar d(phi)/dE to 1e-6",
        worst < 1e-6 && checked > 3000,
        &format!("worst relative {worst:.3e} over {checked} points ({excluded} excluded)"),
    );
}

#[test]
fn criterion_8_wavepacket_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0008);
    let mut detail = String::new();
    let mut ok = true;
    let mut negative_tau_r_seen = false;
    let mut runs = 0;

    // the figure-1 resonance plus randomized resonant and off-resonant configs
    let mut cases: Vec<(BarrierConfig, f64)> = vec![BarrierConfig::from_ratios(0.95, 0.0, 0.3, PI).unwrap()];
    for i in 0..11 {
        let base = sample_resonant_regime(&mut rng);
        let wn = wave_numbers(&base, 1.0).unwrap();
        let m = rng.gen_range(1..=2) as f64;
        let k0a = if i % 2 == 0 {
            m * PI // resonant
        } else {
            (m + rng.gen_range(0.25..0.45)) * PI // off-resonant
        };
        cases.push((base.with_thickness(k0a / wn.k0).unwrap(), 1.0));
    }

    for (cfg, e0) in cases {
        let wn = wave_numbers(&cfg, e0).unwrap();
        let k0a = wn.k0 * cfg.a;
        let near_resonance = (k0a / PI - (k0a / PI).round()).abs() < 0.05;
        // spectral margin: the restriction holds with factor >= 2 everywhere;
        // resonant runs use a wider margin because the reflection response
        // varies on the resonance width itself
        let margin = if near_resonance { 10.0 } else { 3.0 };
        let bound_per_w = barrier_delay::packet_validity_bound(&cfg, e0, 1.0).unwrap();
        let w = margin * cfg.a / bound_per_w;
        let mut spec = PacketSpec::new(e0, w);
        spec.n_energy = 1024;
        spec.n_time = 4096;

        let started = Instant::now();
        let m = synthesize(&cfg, &spec).unwrap();
        let elapsed = started.elapsed().as_secs_f64();
        runs += 1;

        let tau_t = tau_t_analytic(&cfg, e0).unwrap();
        let tol_t = (0.02 * tau_t.abs()).max(2.0 * m.dt);
        let t_ok = (m.tau_t_measured - tau_t).abs() <= tol_t;
        let mut r_ok = true;
        if let Some(tr) = tau_r(&cfg, e0).unwrap() {
            let tol_r = (0.02 * tr.abs()).max(2.0 * m.dt);
            r_ok = (m.tau_r_measured - tr).abs() <= tol_r;
            if tr < 0.0 && m.tau_r_measured < 0.0 {
                negative_tau_r_seen = true;
            }
            if (m.tau_r_measured < 0.0) != (tr < 0.0) {
                r_ok = false;
            }
        }
        ok &= t_ok && r_ok && elapsed < 30.0;
        if !(t_ok && r_ok) || elapsed >= 30.0 {
            detail.push_str(&format!(
                "[k0a={k0a:.3} t_ok={t_ok} r_ok={r_ok} {elapsed:.1}s] "
            ));
        }
    }
    ok &= negative_tau_r_seen && runs >= 10;
    check(
        8,
        "measured packet delays match analytic within max(2%, 2 dt); negative tau_r demonstrated",
        ok,
        &format!("{runs} runs, negative tau_r seen: {negative_tau_r_seen} {detail}"),
    );
}

// Additional cross-module properties backing the criteria.

#[test]
fn reciprocity_of_transmission_delay() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..200 {
        let cfg = sample_config(&mut rng);
        let t1 = tau_t_analytic(&cfg, 1.0).unwrap();
        let t2 = tau_t_analytic(&cfg.swapped(), 1.0).unwrap();
        assert!((t1 - t2).abs() <= 1e-10 * t1.abs().max(1e-300), "{t1} vs {t2}");
    }
}

#[test]
fn enhancement_ordering_at_figure_one_parameters() {
    // at resonance |tau_1max| > tau_tmax > tau_c; between resonances tau_t < tau_c
    let (cfg, e) = BarrierConfig::from_ratios(0.95, 0.0, 0.3, PI).unwrap();
    let (_, tau_c) = barrier_delay::classical_time(&cfg, e).unwrap();
    let tau_t = tau_t_analytic(&cfg, e).unwrap();
    let tau_1 = tau_1_analytic(&cfg, e).unwrap().unwrap();
    assert!(tau_1.abs() > tau_t && tau_t > tau_c);
    let (cfg_off, _) = BarrierConfig::from_ratios(0.95, 0.0, 0.3, 1.5 * PI).unwrap();
    let (_, tau_c_off) = barrier_delay::classical_time(&cfg_off, e).unwrap();
    assert!(tau_t_analytic(&cfg_off, e).unwrap() < tau_c_off);
}

#[test]
fn far_from_resonance_reflection_collapses_to_transmission() {
    // k2/k1 = 0.95, k0/k1 = 0.1 at k0 a = 1.5 pi: |tau_1| << tau_t
    let k1 = 1.4f64;
    let (k0, k2) = (0.1 * k1, 0.95 * k1);
    let e = 1.0;
    let cfg = BarrierConfig::new(
        e - 0.5 * k0 * k0,
        e - 0.5 * k1 * k1,
        e - 0.5 * k2 * k2,
        1.5 * PI / k0,
    )
    .unwrap();
    let tau_t = tau_t_analytic(&cfg, e).unwrap();
    let tau_1 = tau_1_analytic(&cfg, e).unwrap().unwrap();
    assert!(tau_1.abs() / tau_t < 0.1, "ratio {}", tau_1.abs() / tau_t);
}

#[test]
fn half_width_arcsine_argument_is_valid_in_the_resonant_regime() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let cfg = sample_resonant_regime(&mut rng);
        let wn = wave_numbers(&cfg, 1.0).unwrap();
        let lhs = (wn.k0 * (wn.k1 - wn.k2)).powi(2);
        let rhs = (wn.k1 * wn.k1 - wn.k0 * wn.k0) * (wn.k2 * wn.k2 - wn.k0 * wn.k0);
        assert!(lhs <= rhs, "asin argument above 1: {} > {}", lhs, rhs);
    }
}

#[test]
fn scan_flags_carry_reason_codes() {
    let a = 10.0 / 0.3f64.sqrt();
    let cfg = BarrierConfig::new(1.0, 0.0, 0.3, a).unwrap();
    let req = ScanRequest {
        cfg,
        mode: ScanMode::Energy,
        k0a_min: 0.0,
        k0a_max: 10.0,
        n_points: 500,
    };
    let scan = scan_energy(&req).unwrap();
    for row in &scan.rows {
        if row.tau_t_over_tau_c.is_nan() {
            assert_ne!(row.flag, RowFlag::Ok);
        }
        assert!(!row.flag.as_str().is_empty());
    }
}
