use serde::{Deserialize, Serialize};

use super::scenarios::*;
use crate::domain::expectation_values;
use crate::error::{Error, Result};
use crate::propagator::{apply_kick_instant, propagate, SimConfig};

/// Energy gained from a kick delivered at the turning point `<p> = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TurningPointTransfer {
    /// Interpolated time of `<p> = 0`, s.
    pub t_turning: f64,
    /// Measured `E_f - E_i` at the turning point, J.
    pub transfer: f64,
    /// `hbar^2 q^2 / 2m`, J.
    pub quadratic: f64,
    /// The two bracketing measurements `(t, <p>, E_f - E_i)`.
    pub bracket: [(f64, f64, f64); 2],
}

impl TurningPointTransfer {
    pub fn relative_error(&self) -> f64 {
        (self.transfer / self.quadratic - 1.0).abs()
    }
}

/// Kicks the unkicked evolution of `config` by `q` at the two recorded times
/// bracketing the first sign change of `<p>` and interpolates the measured
/// energy transfer linearly in `<p>` to `<p> = 0`.
pub fn turning_point_transfer(config: &SimConfig, q: f64) -> Result<TurningPointTransfer> {
    let mut free = config.clone();
    free.kicks.clear();
    free.snapshot_times.clear();
    let traj = propagate(&free)?;
    let pair = traj
        .records
        .windows(2)
        .find(|w| w[0].expectation.mean_p > 0.0 && w[1].expectation.mean_p <= 0.0)
        .ok_or_else(|| Error::NotConverged {
            quantity: "turning point",
            residual: traj.last().expectation.mean_p,
            tolerance: 0.0,
        })?;
    free.snapshot_times = vec![pair[0].expectation.t, pair[1].expectation.t];
    let traj = propagate(&free)?;
    let mut bracket = [(0.0, 0.0, 0.0); 2];
    for (slot, snap) in bracket.iter_mut().zip(&traj.snapshots) {
        let before = expectation_values(&snap.psi, &config.potential, &config.particle, snap.t);
        let kicked = apply_kick_instant(&snap.psi, q)?;
        let after = expectation_values(&kicked, &config.potential, &config.particle, snap.t);
        *slot = (snap.t, before.mean_p, after.e_tot - before.e_tot);
    }
    let [(t_a, p_a, e_a), (t_b, p_b, e_b)] = bracket;
    let s = p_a / (p_a - p_b);
    Ok(TurningPointTransfer {
        t_turning: t_a + s * (t_b - t_a),
        transfer: e_a + s * (e_b - e_a),
        quadratic: config.particle.kinetic_prefactor() * q * q,
        bracket,
    })
}

/// Mean energy before and after a kick in field-free space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreeSpaceKick {
    pub initial: f64,
    pub kicked: f64,
}

/// Kicks the electron packet by `q` at `t = 0`, far from the potential.
pub fn free_space_kick(q: f64) -> Result<FreeSpaceKick> {
    let mut config = electron_kicked(Geometry::Barrier, q, 0.0);
    config.t_end = 4.0 * config.dt;
    let traj = propagate(&config)?;
    let kick = traj.kicks.first().ok_or_else(|| Error::invalid("kicks", "kick was not applied"))?;
    Ok(FreeSpaceKick {
        initial: kick.before.e_tot,
        kicked: kick.after.e_tot,
    })
}
