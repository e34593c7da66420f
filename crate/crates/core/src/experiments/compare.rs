use serde::{Deserialize, Serialize};

use super::figures::{sweep_q, Fig3Case};
use crate::analytic::{analytic_transmission, AnalyticTransmission, SpectralAmplitude, StepEigenParams};
use crate::domain::PotentialShape;
use crate::error::{Error, Result};
use crate::propagator::SimConfig;

/// Semi-analytic transmission for a sharp static step at `x = 0` kicked
/// once. The kick is taken from `config.kicks[0]`.
pub fn analytic_for_config(config: &SimConfig) -> Result<AnalyticTransmission> {
    let v0 = match config.potential.shape {
        PotentialShape::Step { v0, edge } if edge == 0.0 && config.potential.is_static() => v0,
        _ => {
            return Err(Error::invalid(
                "potential.kind",
                "the analytic model needs a static sharp step at x = 0",
            ))
        }
    };
    let kick = match config.kicks.as_slice() {
        [kick] if kick.duration == 0.0 => *kick,
        _ => return Err(Error::invalid("kicks", "the analytic model needs exactly one instantaneous kick")),
    };
    let params = StepEigenParams::new(v0, config.particle)?;
    let f = SpectralAmplitude::gaussian(&config.packet, &config.particle, kick.time);
    analytic_transmission(&f, kick.q, &params)
}

/// Simulated and semi-analytic transmission at one kick strength.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub q: f64,
    pub simulated: f64,
    pub analytic: f64,
}

impl ComparisonRow {
    pub fn ratio(&self) -> f64 {
        self.analytic / self.simulated
    }
}

/// Step kicked at `t0` (curve c) for each `q`, simulated and from the model.
/// `q = 0` is skipped since the model describes the kicked part only.
pub fn compare_step_curve(q_values: Vec<f64>, parallelism: usize) -> Result<Vec<ComparisonRow>> {
    let q_values: Vec<f64> = q_values.into_iter().filter(|&q| q != 0.0).collect();
    let points = sweep_q(Fig3Case::C, q_values, parallelism)?;
    points
        .into_iter()
        .map(|p| {
            Ok(ComparisonRow {
                q: p.value,
                simulated: p.result.transmission,
                analytic: analytic_for_config(&p.config)?.transmission,
            })
        })
        .collect()
}
