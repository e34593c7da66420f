use serde::{Deserialize, Serialize};

use super::runs::run_scenario;
use super::scenarios::*;
use super::sweep::{run_sweep, SweepAxis, SweepPoint, SweepSpec};
use crate::error::Result;
use crate::propagator::{KickEvent, SimConfig};

/// de Broglie wavelength `2 pi / k_bar` of the electron packet.
pub fn electron_wavelength() -> f64 {
    std::f64::consts::TAU / electron_packet().k_bar
}

/// Ramp widths `{0, 1/8, 1/4, 1/2, 1, 4}` de Broglie wavelengths; the last
/// one is the wide-ramp control.
pub fn default_ramp_widths() -> Vec<f64> {
    let lambda = electron_wavelength();
    [0.0, 0.125, 0.25, 0.5, 1.0, 4.0].iter().map(|f| f * lambda).collect()
}

/// Step kicked at `t0` with a `tanh` ramp of each width.
pub fn ramp_width_sweep(widths: Vec<f64>, parallelism: usize) -> Result<Vec<SweepPoint>> {
    let base = electron_kicked(Geometry::Step, ELECTRON_Q, electron_arrival_time());
    run_sweep(&SweepSpec::new(base, SweepAxis::RampWidth, widths).with_parallelism(parallelism))
}

/// Velocity that reproduces a kick `q` by moving the potential instead:
/// the particle gains `hbar q / m` relative to the potential either way.
pub fn equivalent_velocity(config: &SimConfig, q: f64) -> f64 {
    -config.particle.hbar * q / config.particle.mass
}

/// Static step with a kick at `t0` versus a step set moving at `t0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GalileanComparison {
    pub q: f64,
    pub velocity: f64,
    pub kicked: f64,
    pub moving: f64,
}

impl GalileanComparison {
    pub fn ratio(&self) -> f64 {
        self.moving / self.kicked
    }
}

pub fn moving_step_config(q: f64) -> SimConfig {
    let mut config = electron_config(Geometry::Step);
    let v = equivalent_velocity(&config, q);
    config.potential = config.potential.moving(v, electron_arrival_time());
    config
}

pub fn moving_potential_equivalence(q: f64) -> Result<GalileanComparison> {
    let t0 = electron_arrival_time();
    let kicked = run_scenario("kicked", electron_kicked(Geometry::Step, q, t0))?;
    let config = moving_step_config(q);
    let velocity = config.potential.velocity;
    let moving = run_scenario("moving", config)?;
    Ok(GalileanComparison {
        q,
        velocity,
        kicked: kicked.transmission(),
        moving: moving.transmission(),
    })
}

/// Moving-step transmission for each velocity (no kick).
pub fn step_velocity_sweep(velocities: Vec<f64>, parallelism: usize) -> Result<Vec<SweepPoint>> {
    let mut base = electron_config(Geometry::Step);
    base.potential = base.potential.moving(0.0, electron_arrival_time());
    run_sweep(&SweepSpec::new(base, SweepAxis::StepVelocity, velocities).with_parallelism(parallelism))
}

/// Sub-kicks used to spread a gradual transfer.
pub const GRADUAL_SUBSTEPS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GradualKickComparison {
    pub duration: f64,
    pub instantaneous: f64,
    pub gradual: f64,
}

impl GradualKickComparison {
    pub fn relative_difference(&self) -> f64 {
        (self.gradual / self.instantaneous - 1.0).abs()
    }
}

/// Barrier kick of `q` at `t0`, delivered at once and spread over `duration`
/// centred on `t0`.
pub fn gradual_kick_study(q: f64, duration: f64) -> Result<GradualKickComparison> {
    let t0 = electron_arrival_time();
    let instant = run_scenario("instant", electron_kicked(Geometry::Barrier, q, t0))?;
    let mut config = electron_config(Geometry::Barrier);
    config.kicks = vec![KickEvent::gradual(q, t0 - 0.5 * duration, duration, GRADUAL_SUBSTEPS)];
    let gradual = run_scenario("gradual", config)?;
    Ok(GradualKickComparison {
        duration,
        instantaneous: instant.transmission(),
        gradual: gradual.transmission(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equivalent_velocity_opposes_the_kick() {
        let config = electron_config(Geometry::Step);
        let v = equivalent_velocity(&config, ELECTRON_Q);
        assert!(v < 0.0);
        assert!((v.abs() - 1.1577e4).abs() < 1.0);
        assert_eq!(moving_step_config(0.0).potential.velocity, 0.0);
    }

    #[test]
    fn ramp_widths_start_sharp() {
        let w = default_ramp_widths();
        assert_eq!(w[0], 0.0);
        assert!(w.windows(2).all(|p| p[1] > p[0]));
    }
}
