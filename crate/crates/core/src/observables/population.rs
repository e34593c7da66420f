use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::domain::WaveFunction;
use crate::error::{Error, Result};

/// Minimum number of `k'` nodes between `kappa0` and `4 kappa0`.
pub const MIN_POPULATION_NODES: usize = 512;
/// Upper end of the `k'` quadrature in units of `kappa0`.
pub const POPULATION_K_MAX: f64 = 4.0;
/// Relative change under node doubling accepted as converged.
pub const POPULATION_TOLERANCE: f64 = 1e-2;
/// Absolute change under node doubling that is always accepted.
pub const POPULATION_FLOOR: f64 = 1e-12;

/// Projection of a state onto the continuum above a sharp step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupraBarrierProjection {
    /// Total weight on both degenerate states for all `k' > kappa0`.
    pub population: f64,
    /// Weight that leaves through the step: the outgoing transmitted
    /// amplitude `C_+ t' + (k'/p) C_- r''` integrated with flux factor `p/k'`.
    pub transmitted: f64,
    pub nodes: usize,
}

/// Overlaps of `psi` with the supra-barrier states of a step of wave
/// number `kappa0` at `step_edge`, on `nodes` midpoints of `(kappa0, 4 kappa0)`.
pub fn project_supra_barrier(psi: &WaveFunction, kappa0: f64, step_edge: f64, nodes: usize) -> SupraBarrierProjection {
    let width = (POPULATION_K_MAX - 1.0) * kappa0 / nodes as f64;
    let grid = &psi.grid;
    let dx = grid.dx();
    let n = grid.len();
    let inv_sqrt_2pi = (2.0 * std::f64::consts::PI).sqrt().recip();

    // restrict to the support of psi
    let peak = psi.amplitudes.iter().map(|c| c.norm_sqr()).fold(0.0, f64::max);
    let floor = peak * 1e-32;
    let first = psi.amplitudes.iter().position(|c| c.norm_sqr() > floor).unwrap_or(0);
    let last = psi.amplitudes.iter().rposition(|c| c.norm_sqr() > floor).unwrap_or(n - 1);

    let mut population = 0.0;
    let mut transmitted = 0.0;
    for j in 0..nodes {
        let kp = kappa0 + (j as f64 + 0.5) * width;
        let p = (kp * kp - kappa0 * kappa0).sqrt();
        let s = kp + p;
        let (r_left, t_left) = ((kp - p) / s, 2.0 * kp / s);
        let (r_right, t_right) = ((p - kp) / s, 2.0 * p / s);

        // conj(psi_{+k'}) and conj(psi_{-k'}), advanced by recurrence along the grid
        let x0 = grid.x(first) - step_edge;
        let (mut ek, mut ep) = (Complex64::cis(-kp * x0), Complex64::cis(-p * x0));
        let (sk, sp) = (Complex64::cis(-kp * dx), Complex64::cis(-p * dx));
        let mut c_plus = Complex64::new(0.0, 0.0);
        let mut c_minus = Complex64::new(0.0, 0.0);
        for i in first..=last {
            let x = grid.x(i) - step_edge;
            let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
            let a = psi.amplitudes[i] * w;
            let (plus, minus) = if x < 0.0 {
                (ek + ek.conj() * r_left, ek.conj() * t_right)
            } else {
                (ep * t_left, ep.conj() + ep * r_right)
            };
            c_plus += plus * a;
            c_minus += minus * a;
            ek *= sk;
            ep *= sp;
        }
        c_plus *= dx * inv_sqrt_2pi;
        c_minus *= dx * inv_sqrt_2pi;
        population += (c_plus.norm_sqr() + kp / p * c_minus.norm_sqr()) * width;
        let out = c_plus * t_left + c_minus * (kp / p * r_right);
        transmitted += p / kp * out.norm_sqr() * width;
    }
    SupraBarrierProjection {
        population,
        transmitted,
        nodes,
    }
}

/// Population of the states above the step, checked by doubling the
/// number of `k'` nodes.
pub fn supra_barrier_population(psi: &WaveFunction, kappa0: f64, step_edge: f64) -> Result<SupraBarrierProjection> {
    let coarse = project_supra_barrier(psi, kappa0, step_edge, MIN_POPULATION_NODES);
    let fine = project_supra_barrier(psi, kappa0, step_edge, 2 * MIN_POPULATION_NODES);
    let change = (fine.population - coarse.population).abs();
    let residual = change / fine.population.abs().max(f64::MIN_POSITIVE);
    if residual > POPULATION_TOLERANCE && change > POPULATION_FLOOR {
        return Err(Error::NotConverged {
            quantity: "supra-barrier population quadrature",
            residual,
            tolerance: POPULATION_TOLERANCE,
        });
    }
    Ok(fine)
}
