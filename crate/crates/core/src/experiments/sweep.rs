use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::scenarios::transmission_boundary;
use crate::domain::{PotentialShape, PotentialSpec};
use crate::error::{Error, Result};
use crate::observables::{plateau, TransmissionResult, PLATEAU_TOLERANCE, PLATEAU_WINDOW};
use crate::propagator::{propagate, KickEvent, SimConfig};

/// Parameter varied across a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    /// Time of the first kick, s.
    KickTime,
    /// Wave number of the first kick, 1/m.
    KickQ,
    /// Ramp width of a smoothed step, m.
    RampWidth,
    /// Drift velocity of the potential, m/s.
    StepVelocity,
}

impl SweepAxis {
    pub fn column(&self) -> &'static str {
        match self {
            SweepAxis::KickTime => "t_kick_s",
            SweepAxis::KickQ => "q_per_m",
            SweepAxis::RampWidth => "ramp_width_m",
            SweepAxis::StepVelocity => "velocity_mps",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub base: SimConfig,
    pub axis: SweepAxis,
    pub values: Vec<f64>,
    pub parallelism: usize,
}

impl SweepSpec {
    pub fn new(base: SimConfig, axis: SweepAxis, values: Vec<f64>) -> Self {
        SweepSpec {
            base,
            axis,
            values,
            parallelism: 1,
        }
    }

    pub fn with_parallelism(mut self, parallelism: usize) -> Self {
        self.parallelism = parallelism;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::invalid("sweep.values", "must not be empty"));
        }
        let increasing = self.values.windows(2).all(|w| w[1] > w[0]);
        let decreasing = self.values.windows(2).all(|w| w[1] < w[0]);
        if !(increasing || decreasing) {
            return Err(Error::invalid("sweep.values", "must be strictly monotone"));
        }
        if self.parallelism == 0 {
            return Err(Error::invalid("sweep.parallelism", "must be >= 1"));
        }
        Ok(())
    }

    /// Base configuration with the swept parameter set to `value`.
    pub fn point_config(&self, value: f64) -> Result<SimConfig> {
        let mut config = self.base.clone();
        match self.axis {
            SweepAxis::KickTime => {
                let kick = config
                    .kicks
                    .first_mut()
                    .ok_or_else(|| Error::invalid("kicks", "a kick-time sweep needs a kick in the base config"))?;
                kick.time = value;
            }
            SweepAxis::KickQ => match config.kicks.first_mut() {
                Some(kick) => kick.q = value,
                None => config.kicks.push(KickEvent::instant(value, 0.0)),
            },
            SweepAxis::RampWidth => {
                let (v0, edge) = match config.potential.shape {
                    PotentialShape::Step { v0, edge } | PotentialShape::SmoothedStep { v0, edge, .. } => (v0, edge),
                    PotentialShape::Barrier { .. } => {
                        return Err(Error::invalid("potential.kind", "a ramp sweep needs a step"));
                    }
                };
                let moved = config.potential;
                config.potential = PotentialSpec::smoothed_step(v0, edge, value)?.moving(moved.velocity, moved.motion_start);
                config.x_transmission =
                    transmission_boundary(&config.particle, &config.potential, config.packet.k_bar);
            }
            SweepAxis::StepVelocity => {
                config.potential.velocity = value;
            }
        }
        config.validate()?;
        Ok(config)
    }
}

/// Outcome of one sweep point together with the configuration that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub value: f64,
    pub config: SimConfig,
    pub result: TransmissionResult,
    pub norm_drift: f64,
    pub warnings: Vec<String>,
}

/// Runs every point of `spec` on up to `spec.parallelism` threads and
/// returns the points in input order.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepPoint>> {
    spec.validate()?;
    let configs = spec
        .values
        .iter()
        .map(|&v| spec.point_config(v))
        .collect::<Result<Vec<_>>>()?;
    let run = |(value, config): (f64, SimConfig)| -> Result<SweepPoint> {
        let traj = propagate(&config)?;
        Ok(SweepPoint {
            value,
            result: plateau(&traj, PLATEAU_WINDOW, PLATEAU_TOLERANCE),
            norm_drift: traj.max_norm_drift(),
            warnings: traj.warnings,
            config,
        })
    };
    let jobs: Vec<(f64, SimConfig)> = spec.values.iter().copied().zip(configs).collect();
    if spec.parallelism == 1 {
        return jobs.into_iter().map(run).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.parallelism)
        .build()
        .map_err(|e| Error::invalid("sweep.parallelism", e.to_string()))?;
    pool.install(|| jobs.into_par_iter().map(run).collect())
}
