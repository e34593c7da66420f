use serde::{Deserialize, Serialize};

use crate::domain::{Grid1D, PacketSpec, ParticleSpec, PotentialSpec};
use crate::error::{Error, Result};

/// A momentum transfer `hbar q` at `time`; `duration = 0` is an instantaneous jump.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KickEvent {
    /// Transferred wave number, 1/m.
    pub q: f64,
    /// Occurrence time, s.
    pub time: f64,
    /// Duration, s.
    pub duration: f64,
    /// Number of equal sub-kicks used for a gradual transfer.
    pub substeps: usize,
}

impl KickEvent {
    pub fn instant(q: f64, time: f64) -> Self {
        KickEvent {
            q,
            time,
            duration: 0.0,
            substeps: 1,
        }
    }

    pub fn gradual(q: f64, time: f64, duration: f64, substeps: usize) -> Self {
        KickEvent {
            q,
            time,
            duration,
            substeps,
        }
    }
}

/// Everything needed to reproduce one propagation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub particle: ParticleSpec,
    pub grid: Grid1D,
    pub potential: PotentialSpec,
    pub packet: PacketSpec,
    pub dt: f64,
    pub t_end: f64,
    pub kicks: Vec<KickEvent>,
    /// Left boundary of the transmission region (moves with the potential).
    pub x_transmission: f64,
    pub snapshot_times: Vec<f64>,
    pub record_every: usize,
}

impl SimConfig {
    pub fn n_steps(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }

    /// Step index closest to time `t`.
    pub fn step_at(&self, t: f64) -> usize {
        (t / self.dt).round().max(0.0) as usize
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::invalid("time.dt", "must be > 0"));
        }
        if !(self.t_end.is_finite() && self.t_end > 0.0) {
            return Err(Error::invalid("time.t_end", "must be > 0"));
        }
        if self.record_every == 0 {
            return Err(Error::invalid("output.record_every", "must be >= 1"));
        }
        if !self.grid.contains(self.x_transmission) {
            return Err(Error::invalid(
                "measure.x_transmission",
                format!("{:e} m lies outside the grid", self.x_transmission),
            ));
        }
        self.potential.validate()?;
        for pair in self.kicks.windows(2) {
            if pair[1].time < pair[0].time {
                return Err(Error::invalid("kicks", "kick events must be sorted by time"));
            }
        }
        let nyquist = self.grid.nyquist();
        for kick in &self.kicks {
            if !(0.0..=self.t_end).contains(&kick.time) {
                return Err(Error::invalid(
                    "kick.time",
                    format!("{:e} s outside [0, t_end]", kick.time),
                ));
            }
            if !(kick.duration >= 0.0) {
                return Err(Error::invalid("kick.duration", "must be >= 0"));
            }
            if kick.substeps == 0 {
                return Err(Error::invalid("kick.substeps", "must be >= 1"));
            }
            if kick.q.abs() >= nyquist {
                return Err(Error::Aliasing { q: kick.q, nyquist });
            }
        }
        Ok(())
    }
}
