//! Mapping between SI and scaled units with `hbar = m = 1`.
//!
//! With length unit `L`, the Schrodinger equation is invariant when time is
//! measured in `m L^2 / hbar` and energy in `hbar^2 / (m L^2)`, so all
//! probabilities are unchanged by the map.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{ExpectationRecord, Grid1D, PacketSpec, ParticleSpec, PotentialShape, PotentialSpec, WaveFunction};
use crate::propagator::{KickEvent, SimConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleFactors {
    /// SI metres per scaled length unit.
    pub length: f64,
    /// SI seconds per scaled time unit.
    pub time: f64,
    /// SI joules per scaled energy unit.
    pub energy: f64,
    /// SI kilograms per scaled mass unit.
    pub mass: f64,
}

impl ScaleFactors {
    pub fn new(particle: &ParticleSpec, length: f64) -> Self {
        let time = particle.mass * length * length / particle.hbar;
        ScaleFactors {
            length,
            time,
            energy: particle.hbar / time,
            mass: particle.mass,
        }
    }

    pub fn velocity(&self) -> f64 {
        self.length / self.time
    }

    pub fn momentum(&self) -> f64 {
        self.mass * self.length / self.time
    }

    pub fn record_to_si(&self, r: &ExpectationRecord) -> ExpectationRecord {
        ExpectationRecord {
            t: r.t * self.time,
            norm: r.norm,
            mean_x: r.mean_x * self.length,
            mean_p: r.mean_p * self.momentum(),
            e_kin: r.e_kin * self.energy,
            e_pot: r.e_pot * self.energy,
            e_tot: r.e_tot * self.energy,
        }
    }

    pub fn wavefunction_to_si(&self, psi: &WaveFunction) -> WaveFunction {
        let l = self.length;
        let amp = l.sqrt().recip();
        WaveFunction {
            grid: Grid1D::new(psi.grid.x_min() * l, psi.grid.x_max() * l, psi.grid.len())
                .expect("scaling preserves grid validity"),
            amplitudes: psi.amplitudes.iter().map(|a| a * Complex64::new(amp, 0.0)).collect(),
        }
    }
}

/// Scaled copy of `config` (length unit = packet width) plus the factors to map back.
pub fn to_dimensionless(config: &SimConfig) -> (SimConfig, ScaleFactors) {
    to_dimensionless_with(config, config.packet.sigma)
}

/// Scaled copy of `config` using `length` (m) as the length unit.
pub fn to_dimensionless_with(config: &SimConfig, length: f64) -> (SimConfig, ScaleFactors) {
    let scales = ScaleFactors::new(&config.particle, length);
    let unit = ScaleFactors {
        length: 1.0 / scales.length,
        time: 1.0 / scales.time,
        energy: 1.0 / scales.energy,
        mass: 1.0 / scales.mass,
    };
    let mut scaled = map_config(config, &unit);
    scaled.particle = ParticleSpec {
        mass: 1.0,
        hbar: 1.0,
    };
    (scaled, scales)
}

/// Inverse of [`to_dimensionless`].
pub fn from_dimensionless(config: &SimConfig, scales: &ScaleFactors) -> SimConfig {
    let mut si = map_config(config, scales);
    si.particle = ParticleSpec {
        mass: scales.mass,
        hbar: scales.energy * scales.time,
    };
    si
}

/// Multiplies every dimensional quantity by the matching factor.
fn map_config(c: &SimConfig, f: &ScaleFactors) -> SimConfig {
    let l = f.length;
    let t = f.time;
    let e = f.energy;
    let shape = match c.potential.shape {
        PotentialShape::Barrier { v0, x0, x1 } => PotentialShape::Barrier {
            v0: v0 * e,
            x0: x0 * l,
            x1: x1 * l,
        },
        PotentialShape::Step { v0, edge } => PotentialShape::Step {
            v0: v0 * e,
            edge: edge * l,
        },
        PotentialShape::SmoothedStep {
            v0,
            edge,
            ramp_width,
        } => PotentialShape::SmoothedStep {
            v0: v0 * e,
            edge: edge * l,
            ramp_width: ramp_width * l,
        },
    };
    SimConfig {
        particle: c.particle,
        grid: Grid1D::new(c.grid.x_min() * l, c.grid.x_max() * l, c.grid.len())
            .expect("scaling preserves grid validity"),
        potential: PotentialSpec {
            shape,
            velocity: c.potential.velocity * l / t,
            motion_start: c.potential.motion_start * t,
        },
        packet: PacketSpec {
            x_i: c.packet.x_i * l,
            sigma: c.packet.sigma * l,
            k_bar: c.packet.k_bar / l,
        },
        dt: c.dt * t,
        t_end: c.t_end * t,
        kicks: c
            .kicks
            .iter()
            .map(|k| KickEvent {
                q: k.q / l,
                time: k.time * t,
                duration: k.duration * t,
                substeps: k.substeps,
            })
            .collect(),
        x_transmission: c.x_transmission * l,
        snapshot_times: c.snapshot_times.iter().map(|s| s * t).collect(),
        record_every: c.record_every,
    }
}
