use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::observables::{plateau, TransmissionResult, PLATEAU_TOLERANCE, PLATEAU_WINDOW};
use crate::propagator::{propagate, KickRecord, SimConfig, Snapshot};

/// One labelled propagation reduced to the quantities the reports use.
#[derive(Debug, Clone)]
pub struct ScenarioRun {
    pub label: String,
    pub config: SimConfig,
    pub result: TransmissionResult,
    pub kicks: Vec<KickRecord>,
    pub snapshots: Vec<Snapshot>,
    pub norm_drift: f64,
    pub warnings: Vec<String>,
}

/// Row of a scenario summary table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSummary {
    pub label: String,
    pub transmission: f64,
    pub plateau_residual: f64,
    pub converged: bool,
    pub norm_drift: f64,
}

impl ScenarioRun {
    pub fn transmission(&self) -> f64 {
        self.result.transmission
    }

    pub fn summary(&self) -> ScenarioSummary {
        ScenarioSummary {
            label: self.label.clone(),
            transmission: self.result.transmission,
            plateau_residual: self.result.plateau_residual,
            converged: self.result.converged,
            norm_drift: self.norm_drift,
        }
    }
}

pub fn run_scenario(label: impl Into<String>, config: SimConfig) -> Result<ScenarioRun> {
    let traj = propagate(&config)?;
    Ok(ScenarioRun {
        label: label.into(),
        result: plateau(&traj, PLATEAU_WINDOW, PLATEAU_TOLERANCE),
        norm_drift: traj.max_norm_drift(),
        kicks: traj.kicks,
        snapshots: traj.snapshots,
        warnings: traj.warnings,
        config,
    })
}

/// Runs labelled configurations on up to `parallelism` threads, keeping input order.
pub fn run_scenarios(jobs: Vec<(String, SimConfig)>, parallelism: usize) -> Result<Vec<ScenarioRun>> {
    if parallelism <= 1 {
        return jobs.into_iter().map(|(l, c)| run_scenario(l, c)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .map_err(|e| Error::invalid("parallelism", e.to_string()))?;
    pool.install(|| jobs.into_par_iter().map(|(l, c)| run_scenario(l, c)).collect())
}
