use serde::{Deserialize, Serialize};

use super::runs::{run_scenarios, ScenarioRun};
use super::scenarios::*;
use super::sweep::{run_sweep, SweepAxis, SweepPoint, SweepSpec};
use crate::analytic::QuadraticFit;
use crate::domain::ParticleSpec;
use crate::error::{Error, Result};
use crate::propagator::SimConfig;
use crate::units::FEMTOSECOND;

/// Snapshot times of the reference runs, s.
pub const FIG1_SNAPSHOT_TIMES: [f64; 3] = [0.0, 4.5 * FEMTOSECOND, 15.0 * FEMTOSECOND];

#[derive(Debug, Clone)]
pub struct Fig1Report {
    /// Centroid arrival time at the potential, s.
    pub t0: f64,
    pub runs: Vec<ScenarioRun>,
}

impl Fig1Report {
    pub fn get(&self, label: &str) -> Option<&ScenarioRun> {
        self.runs.iter().find(|r| r.label == label)
    }
}

/// The four reference runs: barrier without kick, barrier kicked at `t = 0`,
/// barrier kicked at `t0`, and step kicked at `t0`, all with `q = 1e8 1/m`.
pub fn fig1_configs() -> Vec<(String, SimConfig)> {
    let t0 = electron_arrival_time();
    let mut jobs = vec![
        ("barrier_no_kick".to_string(), electron_config(Geometry::Barrier)),
        ("barrier_kick_0".to_string(), electron_kicked(Geometry::Barrier, ELECTRON_Q, 0.0)),
        ("barrier_kick_t0".to_string(), electron_kicked(Geometry::Barrier, ELECTRON_Q, t0)),
        ("step_kick_t0".to_string(), electron_kicked(Geometry::Step, ELECTRON_Q, t0)),
    ];
    for (_, config) in &mut jobs {
        config.snapshot_times = FIG1_SNAPSHOT_TIMES.to_vec();
    }
    jobs
}

pub fn run_fig1_scenarios(parallelism: usize) -> Result<Fig1Report> {
    Ok(Fig1Report {
        t0: electron_arrival_time(),
        runs: run_scenarios(fig1_configs(), parallelism)?,
    })
}

/// `T_max exp(-(t - t0)^2 / (2 delta_t^2))` fitted to `log T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianFit {
    /// Peak transmission `T_max`.
    pub peak: f64,
    pub t0: f64,
    pub delta_t: f64,
    /// Root mean square of `log10 T` residuals over the fitted points.
    pub rms_residual: f64,
    pub points_used: usize,
}

/// Largest accepted log10 residual of the kick-time fit.
pub const GAUSSIAN_FIT_TOLERANCE: f64 = 0.5;
/// Half-width of the fit window, in units of `delta_t`.
pub const GAUSSIAN_FIT_WINDOW: f64 = 2.0;

impl GaussianFit {
    pub fn eval(&self, t: f64) -> f64 {
        let u = (t - self.t0) / self.delta_t;
        self.peak * (-0.5 * u * u).exp()
    }

    /// Root mean square log10 residual over points within `half_width * delta_t` of `t0`.
    pub fn residual_within(&self, series: &[(f64, f64)], half_width: f64) -> f64 {
        let r: Vec<f64> = series
            .iter()
            .filter(|(t, y)| *y > 0.0 && (t - self.t0).abs() <= half_width * self.delta_t)
            .map(|&(t, y)| (y / self.eval(t)).log10())
            .collect();
        if r.is_empty() {
            return 0.0;
        }
        (r.iter().map(|v| v * v).sum::<f64>() / r.len() as f64).sqrt()
    }
}

/// Fits a Gaussian in `t` to `log T`, iterating the window `|t - t0| <= 2 delta_t`
/// so that the tunnelling floor far from the peak does not enter the fit.
pub fn fit_gaussian(series: &[(f64, f64)]) -> Result<GaussianFit> {
    let positive: Vec<(f64, f64)> = series.iter().copied().filter(|p| p.1 > 0.0).collect();
    let &(t_peak, y_peak) = positive
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or_else(|| Error::FitRejected {
            reason: "no positive transmissions".into(),
        })?;
    let mut window: Vec<(f64, f64)> = positive
        .iter()
        .copied()
        .filter(|p| p.1 >= y_peak * (-0.5 * GAUSSIAN_FIT_WINDOW * GAUSSIAN_FIT_WINDOW).exp())
        .collect();
    let mut fit = None;
    for _ in 0..20 {
        let (t0, delta_t, peak) = parabola_in_log(&window, t_peak)?;
        let next: Vec<(f64, f64)> = positive
            .iter()
            .copied()
            .filter(|p| (p.0 - t0).abs() <= GAUSSIAN_FIT_WINDOW * delta_t * (1.0 + 1e-9))
            .collect();
        fit = Some(GaussianFit {
            peak,
            t0,
            delta_t,
            rms_residual: 0.0,
            points_used: window.len(),
        });
        if next == window {
            break;
        }
        if next.len() < 3 {
            return Err(Error::FitRejected {
                reason: format!("only {} points within the fit window", next.len()),
            });
        }
        window = next;
    }
    let mut fit = fit.expect("at least one iteration");
    fit.rms_residual = fit.residual_within(&window, f64::INFINITY);
    fit.points_used = window.len();
    if fit.rms_residual > GAUSSIAN_FIT_TOLERANCE {
        return Err(Error::FitRejected {
            reason: format!(
                "log10 residual {:.3} exceeds {GAUSSIAN_FIT_TOLERANCE}",
                fit.rms_residual
            ),
        });
    }
    Ok(fit)
}

/// Least squares `ln T = c0 + c1 u + c2 u^2` with `u = (t - t_ref)/scale`.
fn parabola_in_log(points: &[(f64, f64)], t_ref: f64) -> Result<(f64, f64, f64)> {
    if points.len() < 3 {
        return Err(Error::FitRejected {
            reason: format!("need three points, have {}", points.len()),
        });
    }
    let scale = points
        .iter()
        .map(|p| (p.0 - t_ref).abs())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut m = [[0.0; 3]; 3];
    let mut v = [0.0; 3];
    for &(t, y) in points {
        let u = (t - t_ref) / scale;
        let basis = [1.0, u, u * u];
        for i in 0..3 {
            v[i] += basis[i] * y.ln();
            for j in 0..3 {
                m[i][j] += basis[i] * basis[j];
            }
        }
    }
    let c = solve3(m, v).ok_or_else(|| Error::FitRejected {
        reason: "degenerate kick times".into(),
    })?;
    if !(c[2] < 0.0) {
        return Err(Error::FitRejected {
            reason: "log T is not concave around the peak".into(),
        });
    }
    let u0 = -c[1] / (2.0 * c[2]);
    let delta_u = (-0.5 / c[2]).sqrt();
    let peak = (c[0] + c[1] * u0 + c[2] * u0 * u0).exp();
    Ok((t_ref + u0 * scale, delta_u * scale, peak))
}

fn solve3(m: [[f64; 3]; 3], v: [f64; 3]) -> Option<[f64; 3]> {
    let det = |a: [[f64; 3]; 3]| {
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    };
    let d = det(m);
    if d.abs() < 1e-300 {
        return None;
    }
    let mut out = [0.0; 3];
    for (col, slot) in out.iter_mut().enumerate() {
        let mut a = m;
        for row in 0..3 {
            a[row][col] = v[row];
        }
        *slot = det(a) / d;
    }
    Some(out)
}

#[derive(Debug, Clone)]
pub struct KickTimeSweep {
    pub points: Vec<SweepPoint>,
    pub fit: GaussianFit,
}

impl KickTimeSweep {
    pub fn series(&self) -> Vec<(f64, f64)> {
        self.points.iter().map(|p| (p.value, p.result.transmission)).collect()
    }
}

/// Kick times for the step sweep: `t = 0` followed by `t0 +- 1.5 fs` in 0.25 fs steps.
pub fn default_kick_times() -> Vec<f64> {
    let t0 = electron_arrival_time();
    std::iter::once(0.0)
        .chain((-6..=6).map(|j| t0 + j as f64 * 0.25 * FEMTOSECOND))
        .collect()
}

pub fn kick_time_spec(times: Vec<f64>, parallelism: usize) -> SweepSpec {
    SweepSpec::new(electron_kicked(Geometry::Step, ELECTRON_Q, electron_arrival_time()), SweepAxis::KickTime, times)
        .with_parallelism(parallelism)
}

pub fn sweep_kick_time(spec: &SweepSpec) -> Result<KickTimeSweep> {
    if spec.axis != SweepAxis::KickTime {
        return Err(Error::invalid("sweep.axis", "expected kick_time"));
    }
    let points = run_sweep(spec)?;
    let series: Vec<(f64, f64)> = points.iter().map(|p| (p.value, p.result.transmission)).collect();
    let fit = fit_gaussian(&series)?;
    Ok(KickTimeSweep { points, fit })
}

/// Duration `2 m sigma / (hbar k_bar)` of appreciable interaction.
pub fn interaction_duration(particle: &ParticleSpec, sigma: f64, k_bar: f64) -> f64 {
    2.0 * particle.mass * sigma / (particle.hbar * k_bar)
}

/// The three kick-strength scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fig3Case {
    /// Barrier, kick at `t = 0` before the interaction.
    A,
    /// Barrier, kick at `t0` during the interaction.
    B,
    /// Step, kick at `t0`.
    C,
}

impl Fig3Case {
    pub fn base(&self) -> SimConfig {
        let t0 = electron_arrival_time();
        match self {
            Fig3Case::A => electron_kicked(Geometry::Barrier, ELECTRON_Q, 0.0),
            Fig3Case::B => electron_kicked(Geometry::Barrier, ELECTRON_Q, t0),
            Fig3Case::C => electron_kicked(Geometry::Step, ELECTRON_Q, t0),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Fig3Case::A => "a",
            Fig3Case::B => "b",
            Fig3Case::C => "c",
        }
    }
}

/// `q` values `0, +-{0.0025, 0.005, 0.01, 0.015, 0.02} k_bar` in increasing order.
pub fn default_q_values() -> Vec<f64> {
    let k_bar = electron_packet().k_bar;
    let magnitudes = [0.0025, 0.005, 0.01, 0.015, 0.02];
    let mut q: Vec<f64> = magnitudes.iter().rev().map(|m| -m * k_bar).collect();
    q.push(0.0);
    q.extend(magnitudes.iter().map(|m| m * k_bar));
    q
}

pub fn sweep_q(case: Fig3Case, q_values: Vec<f64>, parallelism: usize) -> Result<Vec<SweepPoint>> {
    run_sweep(&SweepSpec::new(case.base(), SweepAxis::KickQ, q_values).with_parallelism(parallelism))
}

/// `(|q|, T(q)/T(-q))` for every `q > 0` whose mirror value is in the sweep.
pub fn sign_ratios(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    points
        .iter()
        .filter(|p| p.0 > 0.0)
        .filter_map(|&(q, t)| {
            points
                .iter()
                .find(|m| (m.0 + q).abs() <= 1e-9 * q)
                .map(|m| (q, t / m.1))
        })
        .collect()
}

/// Quadratic fit of `T(q)` over the points with `0 < |q| <= q_max`.
pub fn quadratic_law(points: &[(f64, f64)], q_max: f64) -> Result<QuadraticFit> {
    QuadraticFit::from_samples(
        points
            .iter()
            .copied()
            .filter(|p| p.0 != 0.0 && p.0.abs() <= q_max * (1.0 + 1e-9))
            .collect(),
    )
}
