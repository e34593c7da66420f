use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::coefficients::raw_coefficients;
use super::eigen::StepEigenParams;
use super::spectral::SpectralAmplitude;
use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;

/// Numerical parameters of the transmission model. Lengths and wave numbers
/// are in units of `1/kappa0` and `kappa0`, times in units of `m/(hbar kappa0^2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransmissionSettings {
    pub k_prime_max: f64,
    /// Midpoint nodes, uniform in the transmitted wave number `p`.
    pub p_nodes: usize,
    pub k_order: usize,
    /// Width of a `k` panel in units of the spectral resolution of `f`.
    pub k_panel: f64,
    pub t_start: f64,
    pub growth: f64,
    pub max_times: usize,
    pub plateau_tol: f64,
    pub tail_tol: f64,
}

impl Default for TransmissionSettings {
    fn default() -> Self {
        TransmissionSettings {
            k_prime_max: 8.0,
            p_nodes: 1 << 14,
            k_order: 16,
            k_panel: 2.0,
            t_start: 20.0,
            growth: 1.5,
            max_times: 40,
            plateau_tol: 1e-2,
            tail_tol: 1e-2,
        }
    }
}

/// Transmission predicted from the supra-barrier expansion of the kicked packet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyticTransmission {
    /// `int_0^inf |psi|^2 dx` of the supra-barrier field at `t_evaluated`.
    pub transmission: f64,
    /// Outgoing-flux limit of the same field.
    pub asymptotic: f64,
    /// Time after the kick, in seconds.
    pub t_evaluated: f64,
    pub plateau_residual: f64,
    /// Estimated weight beyond `k'_max` relative to `asymptotic`.
    pub tail_fraction: f64,
    /// Log-log slope of the transmitted density near `k'_max`.
    pub tail_slope: f64,
    /// Total weight of the kicked packet on states above the step.
    pub supra_barrier_population: f64,
}

/// Transmission past a sharp step after a kick `exp(iqx)` applied to the
/// packet with sub-barrier amplitude `f`.
pub fn analytic_transmission(
    f: &SpectralAmplitude,
    q: f64,
    params: &StepEigenParams,
) -> Result<AnalyticTransmission> {
    analytic_transmission_with(f, q, params, &TransmissionSettings::default())
}

pub fn analytic_transmission_with(
    f: &SpectralAmplitude,
    q: f64,
    params: &StepEigenParams,
    settings: &TransmissionSettings,
) -> Result<AnalyticTransmission> {
    if !q.is_finite() {
        return Err(Error::invalid("q", "must be finite"));
    }
    let kappa0 = params.kappa0;
    let (m0, m1, m2) = f.moments(kappa0);
    if (m0 - 1.0).abs() > 1e-4 {
        return Err(Error::invalid("f", format!("norm on [0, kappa0) is {m0}, expected 1")));
    }
    let shifted = m2 + 2.0 * q * m1 + q * q * m0;
    if shifted >= kappa0 * kappa0 {
        return Err(Error::OutOfBranch {
            energy: params.particle.energy(shifted.sqrt()),
            v0: params.v0,
        });
    }

    let time_unit = params.particle.mass / (params.particle.hbar * kappa0 * kappa0);
    let qs = q / kappa0;
    let (a, b) = f.support(kappa0);
    let (a, b) = (a / kappa0, (b / kappa0).min(1.0 - 1e-12));
    let panel = settings.k_panel * f.resolution() / kappa0;
    let gl = GaussLegendre::new(settings.k_order);
    let root = kappa0.sqrt();
    let weighted = |k: f64, w: f64| (k, w * root * f.eval(k * kappa0));

    let mut base = Vec::new();
    push_panels(&gl, a, b, panel, &mut base);
    let base: Vec<(f64, Complex64)> = base.into_iter().map(|(k, w)| weighted(k, w)).collect();

    let n = settings.p_nodes;
    let p_max = (settings.k_prime_max * settings.k_prime_max - 1.0).sqrt();
    let dp = p_max / n as f64;
    let p_grid: Vec<f64> = (0..n).map(|j| (j as f64 + 0.5) * dp).collect();

    // (outgoing amplitude, incoming amplitude, population density) per p node
    let columns: Vec<(Complex64, Complex64, f64)> = p_grid
        .par_iter()
        .map(|&p| {
            let kp = (p * p + 1.0).sqrt();
            let poles: Vec<f64> = [kp - qs, kp + qs]
                .into_iter()
                .filter(|&c| qs != 0.0 && c > a && c < b)
                .collect();
            let mut cp = Complex64::new(0.0, 0.0);
            let mut cm = Complex64::new(0.0, 0.0);
            let mut add = |k: f64, wf: Complex64| {
                let c = raw_coefficients(k, kp, qs, 1.0);
                cp += c.c_plus * wf;
                cm += c.c_minus * wf;
            };
            if poles.is_empty() {
                for &(k, wf) in &base {
                    add(k, wf);
                }
            } else {
                let mut nodes = Vec::new();
                principal_value_nodes(&gl, a, b, panel, &poles, &mut nodes);
                for (k, w) in nodes {
                    let (k, wf) = weighted(k, w);
                    add(k, wf);
                }
            }
            let t_left = 2.0 * kp / (kp + p);
            let r_right = (p - kp) / (p + kp);
            let out = cp * (t_left * p / kp) + cm * r_right;
            let population = cp.norm_sqr() * p / kp + cm.norm_sqr();
            (out, cm, population)
        })
        .collect();

    let asymptotic: f64 = columns.iter().map(|c| c.0.norm_sqr()).sum::<f64>() * dp;
    let population: f64 = columns.iter().map(|c| c.2).sum::<f64>() * dp;
    if asymptotic == 0.0 {
        return Ok(AnalyticTransmission {
            transmission: 0.0,
            asymptotic: 0.0,
            t_evaluated: 0.0,
            plateau_residual: 0.0,
            tail_fraction: 0.0,
            tail_slope: 0.0,
            supra_barrier_population: population,
        });
    }

    let (tail_slope, tail) = tail_estimate(&p_grid, &columns, settings.k_prime_max);
    let tail_fraction = tail / asymptotic;
    if !(tail_fraction <= settings.tail_tol) {
        return Err(Error::NotConverged {
            quantity: "k' tail",
            residual: tail_fraction,
            tolerance: settings.tail_tol,
        });
    }

    let m = 2 * n;
    let dx = 2.0 * PI / (m as f64 * dp);
    let period = m as f64 * dx;
    let mut planner = FftPlanner::new();
    let inverse = planner.plan_fft_inverse(m);
    let forward = planner.plan_fft_forward(m);
    let prefactor = dp / (2.0 * PI).sqrt();
    let mut out_buf = vec![Complex64::new(0.0, 0.0); m];
    let mut in_buf = vec![Complex64::new(0.0, 0.0); m];

    let mut previous: Option<f64> = None;
    let mut tau = settings.t_start;
    for _ in 0..settings.max_times {
        let wrapped: f64 = p_grid
            .iter()
            .zip(&columns)
            .filter(|(&p, _)| p * tau > 0.45 * period)
            .map(|(_, c)| c.0.norm_sqr())
            .sum::<f64>()
            * dp;
        if wrapped > 0.5 * settings.plateau_tol * asymptotic {
            break;
        }
        for (j, (&p, c)) in p_grid.iter().zip(&columns).enumerate() {
            let phase = Complex64::cis(-0.5 * (p * p + 1.0) * tau);
            out_buf[j] = c.0 * phase;
            in_buf[j] = c.1 * phase;
        }
        out_buf[n..].fill(Complex64::new(0.0, 0.0));
        in_buf[n..].fill(Complex64::new(0.0, 0.0));
        inverse.process(&mut out_buf);
        forward.process(&mut in_buf);
        let mut t = 0.0;
        for i in 0..m / 2 {
            let x = i as f64 * dx;
            let shift = Complex64::cis(0.5 * dp * x);
            let psi = (out_buf[i] * shift + in_buf[i] * shift.conj()) * prefactor;
            let w = if i == 0 { 0.5 } else { 1.0 };
            t += w * psi.norm_sqr();
        }
        t *= dx;
        if let Some(prev) = previous {
            let residual = (t - prev).abs() / t;
            if t > 0.0 && residual < settings.plateau_tol {
                return Ok(AnalyticTransmission {
                    transmission: t,
                    asymptotic,
                    t_evaluated: tau * time_unit,
                    plateau_residual: residual,
                    tail_fraction,
                    tail_slope,
                    supra_barrier_population: population,
                });
            }
        }
        previous = Some(t);
        tau *= settings.growth;
    }
    let last = previous.unwrap_or(0.0);
    Err(Error::NotConverged {
        quantity: "analytic transmission plateau",
        residual: (last - asymptotic).abs() / asymptotic,
        tolerance: settings.plateau_tol,
    })
}

/// Gauss-Legendre nodes on `[a, b]` split into panels no wider than `width`.
fn push_panels(gl: &GaussLegendre, a: f64, b: f64, width: f64, out: &mut Vec<(f64, f64)>) {
    if b <= a {
        return;
    }
    let panels = ((b - a) / width).ceil().max(1.0) as usize;
    let h = (b - a) / panels as f64;
    for i in 0..panels {
        let lo = a + i as f64 * h;
        out.extend(gl.on(lo, lo + h));
    }
}

/// Nodes on `[a, b]` placed mirror-symmetrically around each simple pole so
/// that the odd part of `1/(k - c)` cancels pairwise.
fn principal_value_nodes(
    gl: &GaussLegendre,
    a: f64,
    b: f64,
    width: f64,
    poles: &[f64],
    out: &mut Vec<(f64, f64)>,
) {
    let mut windows: Vec<(f64, f64)> = poles
        .iter()
        .map(|&c| {
            let mut h = (c - a).min(b - c);
            for &other in poles {
                if other != c {
                    h = h.min(0.5 * (other - c).abs());
                }
            }
            (c - h, c + h)
        })
        .collect();
    windows.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut cursor = a;
    for (lo, hi) in windows {
        graded_panels(gl, cursor, lo, width, poles, out);
        let c = 0.5 * (lo + hi);
        let half = hi - c;
        let panels = (half / width.min(0.5 * half)).ceil() as usize;
        let h = half / panels as f64;
        for i in 0..panels {
            let inner = i as f64 * h;
            out.extend(gl.on(c + inner, c + inner + h));
            out.extend(gl.on(c - inner - h, c - inner));
        }
        cursor = hi;
    }
    graded_panels(gl, cursor, b, width, poles, out);
}

/// Panels on `[a, b]` no wider than `width` or than their distance to the
/// nearest pole, so that the quadrature error decays geometrically towards
/// each pole window.
fn graded_panels(gl: &GaussLegendre, a: f64, b: f64, width: f64, poles: &[f64], out: &mut Vec<(f64, f64)>) {
    let distance = |lo: f64, hi: f64| {
        poles
            .iter()
            .map(|&c| if c < lo { lo - c } else if c > hi { c - hi } else { 0.0 })
            .fold(f64::INFINITY, f64::min)
    };
    let mut x = a;
    while x < b {
        let mut h = width.min(b - x);
        while h > distance(x, x + h) && h > 1e-12 * width {
            h *= 0.5;
        }
        let end = if b - (x + h) < 1e-12 * width { b } else { x + h };
        out.extend(gl.on(x, end));
        x = end;
    }
}

/// Power-law fit of the transmitted density `dT/dk'` over `[k'_max/2, k'_max]`
/// and its integral beyond `k'_max`. Returns `(slope, tail)`.
fn tail_estimate(p_grid: &[f64], columns: &[(Complex64, Complex64, f64)], k_max: f64) -> (f64, f64) {
    let points: Vec<(f64, f64)> = p_grid
        .iter()
        .zip(columns)
        .filter_map(|(&p, c)| {
            let kp = (p * p + 1.0).sqrt();
            let density = c.0.norm_sqr() * kp / p;
            (kp >= 0.5 * k_max && density > 0.0).then(|| (kp.ln(), density.ln()))
        })
        .collect();
    if points.len() < 2 {
        return (f64::NEG_INFINITY, 0.0);
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    if slope >= -1.0 {
        return (slope, f64::INFINITY);
    }
    let tail = -intercept.exp() * k_max.powf(slope + 1.0) / (slope + 1.0);
    (slope, tail)
}
