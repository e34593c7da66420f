use serde::{Deserialize, Serialize};

use super::runs::{run_scenarios, ScenarioRun};
use super::scenarios::refined;
use crate::error::Result;
use crate::propagator::SimConfig;

/// Transmission at the base resolution and with `dt` and `dx` halved.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceCheck {
    pub label: String,
    pub coarse: f64,
    pub fine: f64,
    pub coarse_norm_drift: f64,
    pub fine_norm_drift: f64,
}

impl ConvergenceCheck {
    pub fn relative_shift(&self) -> f64 {
        (self.fine / self.coarse - 1.0).abs()
    }
}

/// Reruns each labelled configuration refined by two and compares.
pub fn refinement_study(jobs: Vec<(String, SimConfig)>, parallelism: usize) -> Result<Vec<ConvergenceCheck>> {
    let mut all = Vec::with_capacity(2 * jobs.len());
    for (label, config) in &jobs {
        all.push((label.clone(), config.clone()));
        all.push((label.clone(), refined(config, 2)));
    }
    let runs = run_scenarios(all, parallelism)?;
    Ok(runs
        .chunks(2)
        .map(|pair| {
            let [coarse, fine]: &[ScenarioRun; 2] = pair.try_into().expect("runs come in pairs");
            ConvergenceCheck {
                label: coarse.label.clone(),
                coarse: coarse.transmission(),
                fine: fine.transmission(),
                coarse_norm_drift: coarse.norm_drift,
                fine_norm_drift: fine.norm_drift,
            }
        })
        .collect())
}
