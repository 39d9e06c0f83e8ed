//! CLI for over-barrier scattering: parameter scans, resonance tables, and
//! wave-packet delay measurements, emitting CSV and SVG artifacts.

mod config;
mod presets;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use barrier_delay::{
    classical_time, fmt_sig12, packet_validity_bound, resonance_summary, scan_energy,
    scan_thickness, svg, synthesize, tau_r, tau_t_analytic, BarrierConfig, Error, PacketSpec,
    Result, RowFlag, ScanMode, ScanRequest, ScanResult, ScanRow,
};

#[derive(Parser)]
#[command(
    name = "barrier-delay",
    about = "Group delays and transmission resonances of an asymmetric rectangular barrier",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep thickness or energy and emit scan.csv (and SVG plots).
    Scan(ScanArgs),
    /// Tabulate closed-form peak values at the resonances k0a = m pi.
    Resonances(ResonanceArgs),
    /// Run the time-domain wave-packet measurement of the delays.
    Packet(PacketArgs),
}

#[derive(Args, Clone)]
struct BarrierArgs {
    /// Figure preset: 1 (tau_t thickness scan), 2 (tau_r thickness scan),
    /// 3 (tau_r energy scan).
    #[arg(long)]
    figure: Option<u8>,
    /// Barrier height as a ratio V0/E.
    #[arg(long)]
    v0e: Option<f64>,
    /// Left potential as a ratio V1/E.
    #[arg(long, requires = "v0e")]
    v1e: Option<f64>,
    /// Right potential as a ratio V2/E.
    #[arg(long, requires = "v0e")]
    v2e: Option<f64>,
}

impl BarrierArgs {
    fn ratios(&self) -> Option<(f64, f64, f64)> {
        self.v0e.map(|v0e| (v0e, self.v1e.unwrap_or(0.0), self.v2e.unwrap_or(0.0)))
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Svg,
    Both,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Output {
    TauT,
    TauR,
    Tau1,
    T,
    Tc,
    Phases,
}

impl Output {
    fn column(self) -> &'static [(&'static str, fn(&ScanRow) -> f64)] {
        match self {
            Output::TauT => &[("tau_t_over_tau_c", |r: &ScanRow| r.tau_t_over_tau_c)],
            Output::TauR => &[("tau_r_over_tau_c", |r: &ScanRow| r.tau_r_over_tau_c)],
            Output::Tau1 => &[("tau_1_over_tau_c", |r: &ScanRow| r.tau_1_over_tau_c)],
            Output::T => &[("T", |r: &ScanRow| r.transmission_probability)],
            Output::Tc => &[("Tc", |r: &ScanRow| r.transmission_coefficient)],
            Output::Phases => &[
                ("phi1_unwrapped", |r: &ScanRow| r.phi1_unwrapped),
                ("phi2_unwrapped", |r: &ScanRow| r.phi2_unwrapped),
            ],
        }
    }
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    barrier: BarrierArgs,
    /// Scan variable when using ratio flags: thickness (fixed E) or energy.
    #[arg(long, value_enum, default_value = "thickness")]
    mode: ModeArg,
    #[arg(long, default_value_t = 0.5)]
    k0a_min: f64,
    #[arg(long, default_value_t = 10.0)]
    k0a_max: f64,
    #[arg(long, default_value_t = presets::DEFAULT_POINTS)]
    points: usize,
    /// Series to plot as SVG (the CSV always carries every column).
    #[arg(long, value_enum)]
    out: Vec<Output>,
    #[arg(long, default_value = "out")]
    outdir: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// JSON run configuration; mutually exclusive with the flag route.
    #[arg(long, conflicts_with_all = ["figure", "v0e"])]
    config: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Thickness,
    Energy,
}

#[derive(Args)]
struct ResonanceArgs {
    #[command(flatten)]
    barrier: BarrierArgs,
    /// Tabulate resonances m = 1..=M.
    #[arg(long, short, default_value_t = 3)]
    max_m: u32,
    #[arg(long, default_value = "out")]
    outdir: PathBuf,
}

#[derive(Args)]
struct PacketArgs {
    #[command(flatten)]
    barrier: BarrierArgs,
    /// Barrier thickness as k0a at the carrier energy.
    #[arg(long, default_value_t = std::f64::consts::PI)]
    k0a: f64,
    /// Packet time spreading; derived from --margin when omitted.
    #[arg(long)]
    w: Option<f64>,
    /// Validity-bound margin used to choose w when --w is not given.
    #[arg(long, default_value_t = 8.0)]
    margin: f64,
    #[arg(long, default_value_t = 1024)]
    n_energy: usize,
    #[arg(long, default_value_t = 4096)]
    n_time: usize,
    #[arg(long, default_value_t = 5.0)]
    energy_span: f64,
    /// Print the maximum admissible thickness for this packet and exit.
    #[arg(long)]
    check_bound: bool,
    #[arg(long, default_value = "out")]
    outdir: PathBuf,
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Scan(args) => cmd_scan(&args),
        Command::Resonances(args) => cmd_resonances(&args),
        Command::Packet(args) => cmd_packet(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Undefined(_) => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn configure_threads() {
    if let Ok(v) = std::env::var("BARRIER_DELAY_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(path, contents)?;
    Ok(())
}

fn cmd_scan(args: &ScanArgs) -> Result<ExitCode> {
    let (req, mut outputs, outdir, format) = if let Some(path) = &args.config {
        let file = config::FileConfig::load(path)?;
        let req = file.scan_request()?;
        let outputs: Vec<Output> = file
            .outputs
            .unwrap_or_default()
            .iter()
            .map(|s| {
                Output::from_str(s, true)
                    .map_err(|_| Error::InvalidInput(format!("unknown output {s}")))
            })
            .collect::<Result<_>>()?;
        let outdir = file.outdir.map(PathBuf::from).unwrap_or_else(|| args.outdir.clone());
        let format = match file.format.as_deref() {
            None => args.format,
            Some(s) => Format::from_str(s, true)
                .map_err(|_| Error::InvalidInput(format!("unknown format {s}")))?,
        };
        (req, outputs, outdir, format)
    } else if let Some(figure) = args.barrier.figure {
        let req = presets::by_figure(figure, args.points)?;
        let default = match figure {
            1 => vec![Output::TauT],
            _ => vec![Output::TauR],
        };
        let outputs = if args.out.is_empty() { default } else { args.out.clone() };
        (req, outputs, args.outdir.clone(), args.format)
    } else if let Some(ratios) = args.barrier.ratios() {
        let (cfg, energy) = BarrierConfig::from_ratios(ratios.0, ratios.1, ratios.2, 1.0)?;
        let (cfg, mode) = match args.mode {
            ModeArg::Thickness => (cfg, ScanMode::Thickness { energy }),
            // ratio route fixes E = 1; reuse k0a_max to set the thickness
            ModeArg::Energy => {
                let k0 = (2.0 * (1.0 - ratios.0)).sqrt();
                (cfg.with_thickness(args.k0a_max / k0)?, ScanMode::Energy)
            }
        };
        let req = ScanRequest {
            cfg,
            mode,
            k0a_min: args.k0a_min,
            k0a_max: args.k0a_max,
            n_points: args.points,
        };
        (req, args.out.clone(), args.outdir.clone(), args.format)
    } else {
        return Err(Error::InvalidInput(
            "provide --figure, --v0e/--v1e/--v2e, or --config".into(),
        ));
    };
    if outputs.is_empty() {
        outputs.push(Output::TauT);
    }

    let result = match req.mode {
        ScanMode::Thickness { .. } => scan_thickness(&req)?,
        ScanMode::Energy => scan_energy(&req)?,
    };

    if format != Format::Svg {
        write_file(&outdir.join("scan.csv"), &result.to_csv())?;
        // figure 2 pairs the solid (negative-peak) curve with the dashed
        // positive-peak one from the swapped configuration
        if args.barrier.figure == Some(2) && args.config.is_none() {
            let dashed = presets::thickness_request(presets::FIG2_DASHED_RATIOS, req.n_points)?;
            write_file(&outdir.join("scan_dashed.csv"), &scan_thickness(&dashed)?.to_csv())?;
        }
    }
    if format != Format::Csv {
        emit_svg_plots(&result, &outputs, &outdir)?;
    }
    report_scan(&result);

    let all_bad = result.rows.iter().all(|r| r.flag == RowFlag::DomainError);
    Ok(if all_bad { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn emit_svg_plots(result: &ScanResult, outputs: &[Output], outdir: &Path) -> Result<()> {
    let x: Vec<f64> = result.rows.iter().map(|r| r.k0a).collect();
    let mut series: Vec<(&str, Vec<f64>)> = Vec::new();
    for out in outputs {
        for (name, pick) in out.column() {
            series.push((name, result.rows.iter().map(pick).collect()));
        }
    }
    let single = series.len() == 1;
    for (name, y) in series {
        let svg = svg::line_chart(&x, &y, "k0a", name, name);
        let file = if single {
            "scan.svg".to_string()
        } else {
            format!("scan_{}.svg", name)
        };
        write_file(&outdir.join(file), &svg)?;
    }
    Ok(())
}

fn report_scan(result: &ScanResult) {
    let flagged = result.rows.iter().filter(|r| r.flag != RowFlag::Ok).count();
    println!(
        "scan: {} rows, {} flagged ({} ok)",
        result.rows.len(),
        flagged,
        result.rows.len() - flagged
    );
}

fn cmd_resonances(args: &ResonanceArgs) -> Result<ExitCode> {
    let ratios = match (args.barrier.figure, args.barrier.ratios()) {
        (Some(1) | Some(2), _) => presets::FIG1_RATIOS,
        (Some(other), _) if other != 1 && other != 2 => {
            return Err(Error::InvalidInput(format!(
                "resonance tables need a fixed-energy (ratio) configuration; figure {other} is not one"
            )))
        }
        (_, Some(r)) => r,
        _ => return Err(Error::InvalidInput("provide --figure 1|2 or --v0e/--v1e/--v2e".into())),
    };
    let (cfg, energy) = BarrierConfig::from_ratios(ratios.0, ratios.1, ratios.2, 1.0)?;
    let mut csv = String::from("m,k0a_at_peak,tau_t_max/tau_c,tau_1_max/tau_c,T_max,delta_E\n");
    println!("m   k0a_peak      tau_t_max/tau_c  tau_1_max/tau_c  T_max      delta_E");
    for m in 1..=args.max_m {
        let s = resonance_summary(&cfg, energy, m)?;
        let a_peak = s.k0a_at_peak / (2.0 * (energy - cfg.v0)).sqrt() * cfg.hbar;
        let (_, tau_c) = classical_time(&cfg.with_thickness(a_peak)?, energy)?;
        let tt = s.tau_t_max / tau_c;
        let t1 = s.tau_1_max / tau_c;
        println!(
            "{m:<3} {:<13.9} {tt:<16.6} {t1:<16.6} {:<10.6} {:.6e}",
            s.k0a_at_peak, s.t_max, s.half_width_e
        );
        csv.push_str(&format!(
            "{m},{},{},{},{},{}\n",
            fmt_sig12(s.k0a_at_peak),
            fmt_sig12(tt),
            fmt_sig12(t1),
            fmt_sig12(s.t_max),
            fmt_sig12(s.half_width_e)
        ));
    }
    write_file(&args.outdir.join("resonances.csv"), &csv)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_packet(args: &PacketArgs) -> Result<ExitCode> {
    let ratios = match (args.barrier.figure, args.barrier.ratios()) {
        (Some(1) | Some(2), _) => presets::FIG1_RATIOS,
        (_, Some(r)) => r,
        _ => return Err(Error::InvalidInput("provide --figure 1|2 or --v0e/--v1e/--v2e".into())),
    };
    let (cfg, e0) = BarrierConfig::from_ratios(ratios.0, ratios.1, ratios.2, args.k0a)?;

    let bound_per_unit_w = packet_validity_bound(&cfg, e0, 1.0)?;
    let w = match args.w {
        Some(w) => w,
        None => args.margin * cfg.a / bound_per_unit_w,
    };
    let bound = bound_per_unit_w * w;

    if args.check_bound {
        println!("w = {}", fmt_sig12(w));
        println!("maximum admissible thickness a = {}", fmt_sig12(bound));
        println!("configured thickness          a = {}", fmt_sig12(cfg.a));
        println!("restriction {}", if cfg.a <= bound { "satisfied" } else { "VIOLATED" });
        return Ok(ExitCode::SUCCESS);
    }
    if cfg.a > bound {
        eprintln!(
            "warning: thickness {} exceeds the validity bound {}; measured delays will be marked unreliable",
            fmt_sig12(cfg.a),
            fmt_sig12(bound)
        );
    }

    let mut spec = PacketSpec::new(e0, w);
    spec.n_energy = args.n_energy;
    spec.n_time = args.n_time;
    spec.energy_span = args.energy_span;
    let m = synthesize(&cfg, &spec)?;

    let tau_t = tau_t_analytic(&cfg, e0)?;
    let tau_r_an = tau_r(&cfg, e0)?;
    println!("packet measurement (w = {}, dt = {}):", fmt_sig12(w), fmt_sig12(m.dt));
    println!("  tau_t measured {:>14}   analytic {:>14}", fmt_sig12(m.tau_t_measured), fmt_sig12(tau_t));
    match tau_r_an {
        Some(tr) => println!(
            "  tau_r measured {:>14}   analytic {:>14}",
            fmt_sig12(m.tau_r_measured),
            fmt_sig12(tr)
        ),
        None => println!("  tau_r measured {:>14}   analytic      undefined", fmt_sig12(m.tau_r_measured)),
    }
    println!(
        "  distortion: transmitted {} reflected {}",
        fmt_sig12(m.distortion_transmitted),
        fmt_sig12(m.distortion_reflected)
    );
    if !m.reliable {
        println!("  marker: UNRELIABLE (validity bound violated)");
    }

    write_file(&args.outdir.join("packet_profiles.csv"), &m.profiles.to_csv())?;
    let mut summary = String::from(
        "tau_t_measured,tau_r_measured,tau_t_analytic,tau_r_analytic,distortion_transmitted,distortion_reflected,reliable\n",
    );
    summary.push_str(&format!(
        "{},{},{},{},{},{},{}\n",
        fmt_sig12(m.tau_t_measured),
        fmt_sig12(m.tau_r_measured),
        fmt_sig12(tau_t),
        tau_r_an.map_or("nan".into(), fmt_sig12),
        fmt_sig12(m.distortion_transmitted),
        fmt_sig12(m.distortion_reflected),
        m.reliable
    ));
    write_file(&args.outdir.join("packet_summary.csv"), &summary)?;
    Ok(ExitCode::SUCCESS)
}
