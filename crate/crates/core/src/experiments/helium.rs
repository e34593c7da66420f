use serde::{Deserialize, Serialize};

use super::compare::analytic_for_config;
use super::energy::turning_point_transfer;
use super::runs::run_scenario;
use super::scenarios::*;
use crate::error::Result;
use crate::propagator::{KickEvent, SimConfig};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HeliumReport {
    /// `delta_k / k_bar` of the packet.
    pub rel_delta_k: f64,
    pub baseline: f64,
    pub kicked: f64,
    /// Semi-analytic prediction for the kicked run.
    pub analytic: f64,
    /// Energy transfer at the turning point, J.
    pub energy_transfer: f64,
    pub kick_time: f64,
    pub grid_points: usize,
    pub steps: usize,
    pub max_norm_drift: f64,
    pub warnings: Vec<String>,
}

pub fn helium_kicked_config(rel_delta_k: f64) -> Result<SimConfig> {
    let mut config = helium_config(rel_delta_k)?;
    let t_kick = config.packet.arrival_time(&config.particle, 0.0);
    config.kicks = vec![KickEvent::instant(HELIUM_Q, t_kick)];
    Ok(config)
}

/// Baseline and kicked helium runs at the given spectral width, with the
/// energy transfer measured at the turning point.
pub fn helium_scenario_with(rel_delta_k: f64) -> Result<HeliumReport> {
    let base = helium_config(rel_delta_k)?;
    let kicked_config = helium_kicked_config(rel_delta_k)?;
    let kick_time = kicked_config.kicks[0].time;
    let baseline = run_scenario("helium_baseline", base.clone())?;
    let kicked = run_scenario("helium_kicked", kicked_config.clone())?;
    let transfer = turning_point_transfer(&base, HELIUM_Q)?;
    let analytic = analytic_for_config(&kicked_config)?;
    let mut warnings = baseline.warnings.clone();
    warnings.extend(kicked.warnings.iter().cloned());
    Ok(HeliumReport {
        rel_delta_k,
        baseline: baseline.transmission(),
        kicked: kicked.transmission(),
        analytic: analytic.transmission,
        energy_transfer: transfer.transfer,
        kick_time,
        grid_points: base.grid.len(),
        steps: base.n_steps(),
        max_norm_drift: baseline.norm_drift.max(kicked.norm_drift),
        warnings,
    })
}

/// The helium prediction with the packet width fixed by a 1 ms interaction.
pub fn helium_scenario() -> Result<HeliumReport> {
    helium_scenario_with(helium_interaction_delta_k())
}

/// Spectral widths of the sensitivity study, relative to `k_bar`.
pub const HELIUM_SENSITIVITY: [f64; 3] = [0.02, 0.05, 0.1];

/// Kicked transmission (simulated and semi-analytic) for each spectral width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeliumSensitivityPoint {
    pub rel_delta_k: f64,
    pub kicked: f64,
    /// `None` when part of the packet already lies above the step, outside
    /// the model's sub-barrier expansion.
    pub analytic: Option<f64>,
}

pub fn helium_sensitivity(widths: &[f64]) -> Result<Vec<HeliumSensitivityPoint>> {
    widths
        .iter()
        .map(|&rel| {
            let config = helium_kicked_config(rel)?;
            let run = run_scenario("helium_kicked", config.clone())?;
            Ok(HeliumSensitivityPoint {
                rel_delta_k: rel,
                kicked: run.transmission(),
                analytic: analytic_for_config(&config).ok().map(|a| a.transmission),
            })
        })
        .collect()
}
