use serde::{Deserialize, Serialize};

use crate::domain::{PotentialShape, WaveFunction};
use crate::error::{Error, Result};
use crate::propagator::Trajectory;

/// Default trailing window for plateau detection, s.
pub const PLATEAU_WINDOW: f64 = 1e-15;
/// Default relative variation accepted over the trailing window.
pub const PLATEAU_TOLERANCE: f64 = 1e-2;
/// Minimum separation of the reflected centroid from the potential, in packet widths.
pub const REFLECTED_CLEARANCE: f64 = 4.0;
/// Decay lengths that the transmission boundary must keep from a step edge.
pub const MIN_EVANESCENT_DEPTHS: f64 = 5.0;

/// Late-time transmission of one run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransmissionResult {
    pub transmission: f64,
    pub t_evaluated: f64,
    /// `(max - min) / T` over the trailing window.
    pub plateau_residual: f64,
    pub converged: bool,
}

/// Plateau analysis of the recorded transmission without failing on a
/// missing plateau.
pub fn plateau(traj: &Trajectory, window: f64, tol: f64) -> TransmissionResult {
    let last = traj.last();
    let t_end = last.expectation.t;
    let t_final = last.transmission;
    let (lo, hi) = traj
        .records
        .iter()
        .filter(|r| r.expectation.t >= t_end - window * (1.0 + 1e-9))
        .map(|r| r.transmission)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), t| (lo.min(t), hi.max(t)));
    let spans_window = traj
        .records
        .first()
        .is_some_and(|r| r.expectation.t <= t_end - window * (1.0 - 1e-9));
    let plateau_residual = if t_final > 0.0 {
        (hi - lo) / t_final
    } else if hi == lo {
        0.0
    } else {
        f64::INFINITY
    };
    TransmissionResult {
        transmission: t_final,
        t_evaluated: t_end,
        plateau_residual,
        converged: spans_window && plateau_residual < tol,
    }
}

/// Late-time transmission beyond `x_t`, which must be the boundary the
/// trajectory was recorded with. Fails when the reflected packet has not
/// separated from the potential or the transmission has not settled.
pub fn asymptotic_transmission(traj: &Trajectory, x_t: f64, window: f64, tol: f64) -> Result<TransmissionResult> {
    let config = &traj.config;
    let recorded = config.x_transmission;
    if (x_t - recorded).abs() > 1e-12 * recorded.abs().max(config.grid.dx()) {
        return Err(Error::invalid(
            "x_T",
            format!("trajectory was recorded with x_T = {recorded:e}, not {x_t:e}"),
        ));
    }
    if let PotentialShape::Step { v0, edge } | PotentialShape::SmoothedStep { v0, edge, .. } =
        config.potential.shape
    {
        let kappa0 = config.particle.wave_number(v0);
        let k = config.packet.k_bar;
        if k < kappa0 {
            let depth = (kappa0 * kappa0 - k * k).sqrt().recip();
            let needed = edge + MIN_EVANESCENT_DEPTHS * depth;
            if x_t < needed {
                return Err(Error::invalid(
                    "x_T",
                    format!("must be at least {needed:e} to exclude the evanescent tail"),
                ));
            }
        }
    }

    let t_end = traj.last().expectation.t;
    let edge = config.potential.leading_edge(t_end);
    let clearance = REFLECTED_CLEARANCE * config.packet.sigma;
    let separation = edge - reflected_centroid(&traj.final_state, edge);
    if !(separation >= clearance) {
        return Err(Error::NotConverged {
            quantity: "reflected packet separation",
            residual: separation / clearance,
            tolerance: 1.0,
        });
    }

    let result = plateau(traj, window, tol);
    if !result.converged {
        return Err(Error::NotConverged {
            quantity: "transmission plateau",
            residual: result.plateau_residual,
            tolerance: tol,
        });
    }
    Ok(result)
}

/// Mean position of the density left of `edge`.
pub fn reflected_centroid(psi: &WaveFunction, edge: f64) -> f64 {
    let (mut mass, mut moment) = (0.0, 0.0);
    for (i, d) in psi.density().enumerate() {
        let x = psi.grid.x(i);
        if x < edge {
            mass += d;
            moment += d * x;
        }
    }
    if mass > 0.0 {
        moment / mass
    } else {
        edge
    }
}
