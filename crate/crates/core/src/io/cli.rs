//! The `qevap` command line.
//!
//! Every command computes all of its results first and only then writes
//! them under `--out`, so a failed validation leaves no files behind.
//! Exit codes: 0 success, 1 invalid configuration, 2 convergence failure,
//! 3 internal error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use super::manifest::RunManifest;
use super::table::{config_text, sci, snapshot_table, trajectory_table, Cell, Format, Table};
use crate::analytic::{analytic_transmission_with, QuadraticFit, SpectralAmplitude, StepEigenParams, TransmissionSettings};
use crate::domain::PotentialShape;
use crate::error::{Error, Result};
use crate::experiments::figures::{default_kick_times, default_q_values, fig1_configs, fit_gaussian, Fig3Case};
use crate::experiments::helium::{helium_scenario_with, helium_sensitivity, HELIUM_SENSITIVITY};
use crate::experiments::properties::{default_ramp_widths, moving_potential_equivalence};
use crate::experiments::scenarios::{electron_arrival_time, electron_kicked, electron_packet, helium_interaction_delta_k, Geometry, ELECTRON_Q};
use crate::experiments::{compare_step_curve, run_scenarios, run_sweep, SweepAxis, SweepPoint, SweepSpec};
use crate::observables::{plateau, PLATEAU_TOLERANCE, PLATEAU_WINDOW};
use crate::propagator::{propagate, SimConfig};
use crate::units::to_ev;

#[derive(Debug, Parser)]
#[command(name = "qevap", version, about = "Wave-packet transmission after mid-flight momentum kicks")]
pub struct Cli {
    /// Output directory; nothing is written elsewhere.
    #[arg(long, global = true, default_value = "qevap-out")]
    pub out: PathBuf,
    /// Worker threads for sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    pub parallel: usize,
    /// Plateau tolerance on the relative variation of T.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Single propagation from a config file.
    Simulate { config: PathBuf },
    /// Transmission against kick time, with a Gaussian fit.
    SweepTime {
        /// Base configuration with one kick (default: step kicked at t0).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Kick times in s (default: 0 and t0 +- 1.5 fs).
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        values: Vec<f64>,
    },
    /// Transmission against kick strength q.
    SweepQ {
        #[arg(long, value_enum, default_value_t = CaseArg::B)]
        case: CaseArg,
        /// Base configuration (overrides `--case`).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Values of q in 1/m (default: 0, +-{0.25, 0.5, 1, 1.5, 2}% of k_bar).
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        values: Vec<f64>,
    },
    /// Kicked step transmission against ramp width.
    RampSweep {
        /// Ramp widths in m (default: 0 to 4 de Broglie wavelengths).
        #[arg(long, value_delimiter = ',')]
        values: Vec<f64>,
    },
    /// Kicked static step against a step set moving at t0.
    MovingStep {
        #[arg(long, default_value_t = ELECTRON_Q, allow_negative_numbers = true)]
        q: f64,
    },
    /// Cold helium on a step, kicked at its arrival time.
    Helium {
        /// Spectral width relative to k_bar (default: fixed by a 1 ms interaction).
        #[arg(long)]
        delta_k: Option<f64>,
        /// Also run the spectral-width sensitivity study.
        #[arg(long)]
        sensitivity: bool,
    },
    /// The four reference barrier and step runs.
    Fig1 {
        /// Also dump the wave function at 0, 4.5 and 15 fs.
        #[arg(long)]
        snapshots: bool,
    },
    /// Semi-analytic transmission for a kicked sharp step.
    Analytic {
        /// Step configuration whose packet and kick time are used
        /// (default: electron step kicked at t0).
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        values: Vec<f64>,
    },
    /// Simulated and semi-analytic transmission side by side (kicked step).
    Compare {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        values: Vec<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    A,
    B,
    C,
}

impl From<CaseArg> for Fig3Case {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::A => Fig3Case::A,
            CaseArg::B => Fig3Case::B,
            CaseArg::C => Fig3Case::C,
        }
    }
}

/// Largest accepted deviation of the norm from 1 during a run.
pub const NORM_DRIFT_LIMIT: f64 = 1e-6;

/// Files produced by a command, written only once everything succeeded.
struct Output {
    files: Vec<(PathBuf, String)>,
    manifest: RunManifest,
    report: String,
}

impl Output {
    fn new(command: &str) -> Self {
        Output {
            files: Vec::new(),
            manifest: RunManifest::new(command),
            report: String::new(),
        }
    }

    fn table(&mut self, stem: &str, table: &Table, format: Format) {
        self.report.push_str(&table.pretty());
        self.files
            .push((PathBuf::from(format!("{stem}.{}", format.extension())), table.render(format)));
    }
}

pub fn exit_code(err: &Error) -> i32 {
    if err.is_config() {
        1
    } else if err.is_convergence() {
        2
    } else {
        3
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(converged) => {
            if converged {
                0
            } else {
                eprintln!("qevap: not converged within tolerance (see manifest.json)");
                2
            }
        }
        Err(e) => {
            eprintln!("qevap: {e}");
            exit_code(&e)
        }
    }
}

/// Runs the command and writes its outputs. Returns whether every
/// convergence check passed.
pub fn run(cli: &Cli) -> Result<bool> {
    if cli.parallel == 0 {
        return Err(Error::invalid("parallel", "must be >= 1"));
    }
    let tol = cli.tol.unwrap_or(PLATEAU_TOLERANCE);
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::invalid("tol", "must be > 0"));
    }
    let start = Instant::now();
    let mut out = match &cli.command {
        Command::Simulate { config } => simulate(&read_config(config)?, tol, cli.format)?,
        Command::SweepTime { config, values } => {
            let base = match config {
                Some(path) => read_config(path)?,
                None => electron_kicked(Geometry::Step, ELECTRON_Q, electron_arrival_time()),
            };
            let values = or_default(values, default_kick_times);
            sweep_time(SweepSpec::new(base, SweepAxis::KickTime, values).with_parallelism(cli.parallel), tol, cli.format)?
        }
        Command::SweepQ { case, config, values } => {
            let base = match config {
                Some(path) => read_config(path)?,
                None => Fig3Case::from(*case).base(),
            };
            let values = or_default(values, default_q_values);
            let spec = SweepSpec::new(base, SweepAxis::KickQ, values).with_parallelism(cli.parallel);
            sweep_output("sweep-q", spec, tol, cli.format)?
        }
        Command::RampSweep { values } => {
            let base = electron_kicked(Geometry::Step, ELECTRON_Q, electron_arrival_time());
            let values = or_default(values, default_ramp_widths);
            let spec = SweepSpec::new(base, SweepAxis::RampWidth, values).with_parallelism(cli.parallel);
            sweep_output("ramp-sweep", spec, tol, cli.format)?
        }
        Command::MovingStep { q } => moving_step(*q, cli.format)?,
        Command::Helium { delta_k, sensitivity } => helium(*delta_k, *sensitivity, cli.format)?,
        Command::Fig1 { snapshots } => fig1(*snapshots, cli.parallel, tol, cli.format)?,
        Command::Analytic { config, values } => {
            let base = match config {
                Some(path) => read_config(path)?,
                None => electron_kicked(Geometry::Step, ELECTRON_Q, electron_arrival_time()),
            };
            let values: Vec<f64> = or_default(values, default_q_values).into_iter().filter(|&q| q != 0.0).collect();
            analytic(&base, values, tol, cli.format)?
        }
        Command::Compare { values } => {
            let values = or_default(values, default_q_values);
            compare(values, cli.parallel, cli.format)?
        }
    };
    out.manifest.parameter("format", cli.format.extension());
    out.manifest.parameter("tol", tol);
    out.manifest.wall_clock_s = start.elapsed().as_secs_f64();
    write_outputs(&cli.out, &out)?;
    print!("{}", out.report);
    for w in &out.manifest.warnings {
        eprintln!("warning: {w}");
    }
    Ok(out.manifest.all_converged())
}

/// Reads a config file; an unreadable file counts as an invalid configuration.
fn read_config(path: &Path) -> Result<SimConfig> {
    super::config::read_config(path).map_err(|e| match e {
        Error::Io(io) => Error::invalid("config", format!("{}: {io}", path.display())),
        other => other,
    })
}

fn or_default(values: &[f64], default: fn() -> Vec<f64>) -> Vec<f64> {
    if values.is_empty() {
        default()
    } else {
        values.to_vec()
    }
}

fn write_outputs(dir: &Path, out: &Output) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for (name, contents) in &out.files {
        let path = dir.join(name);
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        std::fs::write(path, contents)?;
    }
    std::fs::write(dir.join("manifest.json"), out.manifest.to_json()?)?;
    Ok(())
}

fn simulate(config: &SimConfig, tol: f64, format: Format) -> Result<Output> {
    let traj = propagate(config)?;
    let result = plateau(&traj, PLATEAU_WINDOW, tol);
    let text = config_text(config);
    let mut out = Output::new("simulate");
    let records = trajectory_table(&traj).provenance(&text);
    out.files
        .push((PathBuf::from(format!("trajectory.{}", format.extension())), records.render(format)));
    for (i, snap) in traj.snapshots.iter().enumerate() {
        let table = snapshot_table(snap.t, &snap.psi).provenance(&text);
        out.files
            .push((PathBuf::from(format!("snapshot_{i:03}.{}", format.extension())), table.render(format)));
    }
    let mut summary = Table::new(&["T", "t_evaluated_s", "plateau_residual", "converged", "norm_drift"]).provenance(&text);
    summary.push(vec![
        result.transmission.into(),
        result.t_evaluated.into(),
        result.plateau_residual.into(),
        result.converged.into(),
        traj.max_norm_drift().into(),
    ]);
    out.table("summary", &summary, format);
    out.manifest.add_config("run", config);
    out.manifest.flag("plateau", result.converged);
    out.manifest.warnings = traj.warnings;
    Ok(out)
}

fn sweep_table(spec: &SweepSpec, points: &[SweepPoint], tol: f64) -> Table {
    let mut table = Table::new(&[spec.axis.column(), "T", "plateau_residual", "converged", "norm_drift"])
        .provenance(&config_text(&spec.base));
    for p in points {
        table.push(vec![
            p.value.into(),
            p.result.transmission.into(),
            p.result.plateau_residual.into(),
            (p.result.plateau_residual < tol).into(),
            p.norm_drift.into(),
        ]);
    }
    table
}

fn record_sweep(out: &mut Output, spec: &SweepSpec, points: &[SweepPoint], tol: f64) {
    out.manifest.parameter("axis", spec.axis.column());
    out.manifest
        .parameter("values", spec.values.iter().map(|v| format!("{v:e}")).collect::<Vec<_>>().join(","));
    out.manifest.add_config("base", &spec.base);
    for (i, p) in points.iter().enumerate() {
        out.manifest.add_config(&format!("point_{i:03}"), &p.config);
        out.manifest.flag(&format!("point_{i:03}.plateau"), p.result.plateau_residual < tol);
        out.manifest.warnings.extend(p.warnings.iter().cloned());
    }
}

fn sweep_output(command: &str, spec: SweepSpec, tol: f64, format: Format) -> Result<Output> {
    let points = run_sweep(&spec)?;
    let mut out = Output::new(command);
    out.table("series", &sweep_table(&spec, &points, tol), format);
    record_sweep(&mut out, &spec, &points, tol);
    Ok(out)
}

fn sweep_time(spec: SweepSpec, tol: f64, format: Format) -> Result<Output> {
    if spec.axis != SweepAxis::KickTime {
        return Err(Error::invalid("sweep.axis", "expected kick_time"));
    }
    let points = run_sweep(&spec)?;
    let mut out = Output::new("sweep-time");
    out.table("series", &sweep_table(&spec, &points, tol), format);
    record_sweep(&mut out, &spec, &points, tol);
    let series: Vec<(f64, f64)> = points.iter().map(|p| (p.value, p.result.transmission)).collect();
    let mut fit_table = Table::new(&[
        "T_max",
        "t0_s",
        "delta_t_s",
        "two_delta_t_s",
        "rms_residual_log10",
        "core_residual_log10",
        "points_used",
        "interaction_duration_s",
    ])
    .provenance(&config_text(&spec.base));
    let duration = spec.base.packet.interaction_duration(&spec.base.particle);
    match fit_gaussian(&series) {
        Ok(fit) => {
            fit_table.push(vec![
                fit.peak.into(),
                fit.t0.into(),
                fit.delta_t.into(),
                (2.0 * fit.delta_t).into(),
                fit.rms_residual.into(),
                fit.residual_within(&series, 1.5).into(),
                fit.points_used.into(),
                duration.into(),
            ]);
            out.manifest.flag("gaussian_fit", true);
        }
        Err(e) => {
            fit_table = fit_table.meta("fit_error", e);
            out.manifest.flag("gaussian_fit", false);
        }
    }
    out.table("fit", &fit_table, format);
    Ok(out)
}

fn moving_step(q: f64, format: Format) -> Result<Output> {
    let mut out = Output::new("moving-step");
    let mut table = Table::new(&["q_per_m", "velocity_mps", "T_kick", "T_moving", "ratio"]);
    for q in [q, -q] {
        let g = moving_potential_equivalence(q)?;
        table.push(vec![g.q.into(), g.velocity.into(), g.kicked.into(), g.moving.into(), g.ratio().into()]);
        out.manifest.add_config(&format!("kicked_{q:e}"), &electron_kicked(Geometry::Step, q, electron_arrival_time()));
        out.manifest
            .add_config(&format!("moving_{q:e}"), &crate::experiments::properties::moving_step_config(q));
    }
    out.manifest.parameter("q_per_m", q);
    out.table("galilean", &table, format);
    Ok(out)
}

fn helium(delta_k: Option<f64>, sensitivity: bool, format: Format) -> Result<Output> {
    let rel = delta_k.unwrap_or_else(helium_interaction_delta_k);
    let report = helium_scenario_with(rel)?;
    let mut out = Output::new("helium");
    let mut table = Table::new(&[
        "rel_delta_k",
        "T_baseline",
        "T_kicked",
        "T_analytic",
        "energy_transfer_J",
        "energy_transfer_eV",
        "kick_time_s",
        "grid_points",
        "steps",
        "norm_drift",
    ]);
    table.push(vec![
        report.rel_delta_k.into(),
        report.baseline.into(),
        report.kicked.into(),
        report.analytic.into(),
        report.energy_transfer.into(),
        to_ev(report.energy_transfer).into(),
        report.kick_time.into(),
        report.grid_points.into(),
        report.steps.into(),
        report.max_norm_drift.into(),
    ]);
    out.table("helium", &table, format);
    out.manifest.parameter("rel_delta_k", rel);
    out.manifest.add_config("kicked", &crate::experiments::helium::helium_kicked_config(rel)?);
    out.manifest.flag("norm", report.max_norm_drift < NORM_DRIFT_LIMIT);
    out.manifest.warnings = report.warnings;
    if sensitivity {
        let mut table = Table::new(&["rel_delta_k", "T_kicked", "T_analytic"]);
        for p in helium_sensitivity(&HELIUM_SENSITIVITY)? {
            table.push(vec![p.rel_delta_k.into(), p.kicked.into(), p.analytic.map_or(Cell::Text("n/a".into()), Cell::Num)]);
        }
        out.table("sensitivity", &table, format);
    }
    Ok(out)
}

fn fig1(snapshots: bool, parallel: usize, tol: f64, format: Format) -> Result<Output> {
    let mut jobs = fig1_configs();
    if !snapshots {
        for (_, c) in &mut jobs {
            c.snapshot_times.clear();
        }
    }
    let mut out = Output::new("fig1");
    for (label, config) in &jobs {
        out.manifest.add_config(label, config);
    }
    let runs = run_scenarios(jobs, parallel)?;
    let mut table = Table::new(&["scenario", "T", "plateau_residual", "converged", "norm_drift"])
        .meta("tool", format!("{} {}", super::table::TOOL_NAME, super::table::TOOL_VERSION))
        .meta("t0_s", sci(electron_arrival_time()));
    for run in &runs {
        let converged = run.result.plateau_residual < tol;
        table.push(vec![
            run.label.as_str().into(),
            run.transmission().into(),
            run.result.plateau_residual.into(),
            converged.into(),
            run.norm_drift.into(),
        ]);
        out.manifest.flag(&format!("{}.plateau", run.label), converged);
        out.manifest.warnings.extend(run.warnings.iter().cloned());
        for snap in &run.snapshots {
            let name = format!("snapshots/{}_{:.1}fs.{}", run.label, snap.t * 1e15, format.extension());
            out.files
                .push((PathBuf::from(name), snapshot_table(snap.t, &snap.psi).render(format)));
        }
    }
    out.table("fig1", &table, format);
    Ok(out)
}

fn analytic(base: &SimConfig, q_values: Vec<f64>, tol: f64, format: Format) -> Result<Output> {
    let v0 = match base.potential.shape {
        PotentialShape::Step { v0, edge } if edge == 0.0 && base.potential.is_static() => v0,
        _ => return Err(Error::invalid("potential.kind", "the analytic model needs a static step at x = 0")),
    };
    let t_kick = base.kicks.first().map_or(0.0, |k| k.time);
    let params = StepEigenParams::new(v0, base.particle)?;
    let f = SpectralAmplitude::gaussian(&base.packet, &base.particle, t_kick);
    let settings = TransmissionSettings {
        plateau_tol: tol,
        ..TransmissionSettings::default()
    };
    let mut out = Output::new("analytic");
    let mut table = Table::new(&[
        "q_per_m",
        "T",
        "T_asymptotic",
        "supra_barrier_population",
        "t_evaluated_s",
        "plateau_residual",
        "tail_fraction",
    ])
    .provenance(&config_text(base))
    .meta("t_kick_s", sci(t_kick));
    let mut samples = Vec::new();
    for &q in &q_values {
        let a = analytic_transmission_with(&f, q, &params, &settings)?;
        samples.push((q, a.transmission));
        table.push(vec![
            q.into(),
            a.transmission.into(),
            a.asymptotic.into(),
            a.supra_barrier_population.into(),
            a.t_evaluated.into(),
            a.plateau_residual.into(),
            a.tail_fraction.into(),
        ]);
    }
    if let Ok(fit) = QuadraticFit::from_samples(samples) {
        table = table
            .meta("alpha_m2", sci(fit.alpha))
            .meta("max_quadratic_deviation", sci(fit.max_deviation));
    }
    out.table("analytic", &table, format);
    out.manifest.add_config("base", base);
    out.manifest
        .parameter("values", q_values.iter().map(|v| format!("{v:e}")).collect::<Vec<_>>().join(","));
    out.manifest.flag("analytic", true);
    Ok(out)
}

fn compare(q_values: Vec<f64>, parallel: usize, format: Format) -> Result<Output> {
    let rows = compare_step_curve(q_values.clone(), parallel)?;
    let mut out = Output::new("compare");
    let k_bar = electron_packet().k_bar;
    let mut table = Table::new(&["q_per_m", "q_over_k_bar", "T_tdse", "T_analytic", "ratio"]);
    for r in &rows {
        table.push(vec![r.q.into(), (r.q / k_bar).into(), r.simulated.into(), r.analytic.into(), r.ratio().into()]);
    }
    out.table("compare", &table, format);
    out.manifest.add_config("base", &Fig3Case::C.base());
    out.manifest
        .parameter("values", q_values.iter().map(|v| format!("{v:e}")).collect::<Vec<_>>().join(","));
    Ok(out)
}
