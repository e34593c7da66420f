use serde::{Deserialize, Serialize};

use super::kick::{kick_in_place, sub_kick_offsets};
use super::{CrankNicolson, KickEvent, SimConfig};
use crate::domain::scaling::{to_dimensionless, ScaleFactors};
use crate::domain::{expectation_values, make_gaussian_packet, ExpectationRecord, WaveFunction};
use crate::error::{Error, Result};
use crate::observables::{left_probability, region_probability};

/// Edge cells inspected by the boundary-contamination monitor.
pub const MONITOR_CELLS: usize = 10;
/// Probability in the monitored edge cells above which a warning is raised.
pub const MONITOR_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub expectation: ExpectationRecord,
    /// Probability beyond the transmission boundary.
    pub transmission: f64,
    /// Probability before the leading edge of the potential.
    pub reflection: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub psi: WaveFunction,
}

/// Expectation values immediately before the first and after the last
/// sub-kick of a kick event.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KickRecord {
    pub event: KickEvent,
    pub before: ExpectationRecord,
    pub after: ExpectationRecord,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub config: SimConfig,
    pub records: Vec<TrajectoryRecord>,
    pub snapshots: Vec<Snapshot>,
    pub kicks: Vec<KickRecord>,
    pub final_state: WaveFunction,
    pub warnings: Vec<String>,
}

impl Trajectory {
    pub fn last(&self) -> &TrajectoryRecord {
        self.records.last().expect("a trajectory always holds the initial record")
    }

    /// Transmission at the final time.
    pub fn final_transmission(&self) -> f64 {
        self.last().transmission
    }

    pub fn max_norm_drift(&self) -> f64 {
        self.records
            .iter()
            .map(|r| (r.expectation.norm - 1.0).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_contaminated(&self) -> bool {
        !self.warnings.is_empty()
    }

    fn rescaled(self, scales: &ScaleFactors, config: SimConfig) -> Trajectory {
        let record = |r: ExpectationRecord| scales.record_to_si(&r);
        Trajectory {
            records: self
                .records
                .into_iter()
                .map(|r| TrajectoryRecord {
                    expectation: record(r.expectation),
                    ..r
                })
                .collect(),
            snapshots: self
                .snapshots
                .into_iter()
                .map(|s| Snapshot {
                    t: s.t * scales.time,
                    psi: scales.wavefunction_to_si(&s.psi),
                })
                .collect(),
            kicks: self
                .kicks
                .iter()
                .zip(&config.kicks)
                .map(|(k, event)| KickRecord {
                    event: *event,
                    before: record(k.before),
                    after: record(k.after),
                })
                .collect(),
            final_state: scales.wavefunction_to_si(&self.final_state),
            warnings: self.warnings,
            config,
        }
    }
}

/// Runs `config` in scaled units (`hbar = m = 1`, length unit = packet width)
/// and returns the trajectory in SI.
pub fn propagate(config: &SimConfig) -> Result<Trajectory> {
    config.validate()?;
    for event in &config.kicks {
        sub_kick_offsets(event, config.dt)?;
    }
    let (scaled, scales) = to_dimensionless(config);
    let trajectory = propagate_unscaled(&scaled)?;
    Ok(trajectory.rescaled(&scales, config.clone()))
}

/// Runs `config` directly in whatever unit system it is expressed in.
pub fn propagate_unscaled(config: &SimConfig) -> Result<Trajectory> {
    config.validate()?;
    let dt = config.dt;
    let n_steps = config.n_steps();
    let mut psi = make_gaussian_packet(&config.grid, &config.packet)?;
    let mut stepper = CrankNicolson::new(config.grid, config.particle, config.potential, dt)?;

    // (step, q, kick index)
    let mut schedule = Vec::new();
    for (index, event) in config.kicks.iter().enumerate() {
        let start = config.step_at(event.time);
        for (offset, dq) in sub_kick_offsets(event, dt)? {
            let step = start + offset;
            if step > n_steps {
                return Err(Error::invalid(
                    "kick.duration",
                    "kick extends beyond t_end",
                ));
            }
            schedule.push((step, dq, index));
        }
    }
    schedule.sort_by_key(|&(step, _, index)| (step, index));

    let mut snapshot_steps: Vec<(usize, usize)> = config
        .snapshot_times
        .iter()
        .enumerate()
        .map(|(i, &t)| (config.step_at(t).min(n_steps), i))
        .collect();
    snapshot_steps.sort_unstable();

    let pot = config.potential;
    let particle = config.particle;
    let mut records = Vec::with_capacity(n_steps / config.record_every + 2);
    let mut snapshots = Vec::with_capacity(snapshot_steps.len());
    let mut kick_before: Vec<Option<ExpectationRecord>> = vec![None; config.kicks.len()];
    let mut kick_records: Vec<Option<KickRecord>> = vec![None; config.kicks.len()];
    let mut remaining_subkicks: Vec<usize> = vec![0; config.kicks.len()];
    for &(_, _, index) in &schedule {
        remaining_subkicks[index] += 1;
    }
    let mut warned = [false, false];
    let mut warnings = Vec::new();
    let mut next_kick = 0;
    let mut next_snapshot = 0;

    for step in 0..=n_steps {
        let t = step as f64 * dt;
        while next_kick < schedule.len() && schedule[next_kick].0 == step {
            let (_, dq, index) = schedule[next_kick];
            if kick_before[index].is_none() {
                kick_before[index] = Some(expectation_values(&psi, &pot, &particle, t));
            }
            kick_in_place(&mut psi, dq)?;
            remaining_subkicks[index] -= 1;
            if remaining_subkicks[index] == 0 {
                kick_records[index] = Some(KickRecord {
                    event: config.kicks[index],
                    before: kick_before[index].expect("set by first sub-kick"),
                    after: expectation_values(&psi, &pot, &particle, t),
                });
            }
            next_kick += 1;
        }
        if step % config.record_every == 0 || step == n_steps {
            let expectation = expectation_values(&psi, &pot, &particle, t);
            let shift = pot.displacement(t);
            records.push(TrajectoryRecord {
                expectation,
                transmission: region_probability(&psi, config.x_transmission + shift),
                reflection: left_probability(&psi, pot.leading_edge(t)),
            });
            let (left, right) = psi.edge_probability(MONITOR_CELLS);
            for (side, p) in [left, right].into_iter().enumerate() {
                if p > MONITOR_THRESHOLD && !warned[side] {
                    warned[side] = true;
                    let msg = format!(
                        "boundary contamination at t = {t:e}: {p:e} of the probability within {MONITOR_CELLS} cells of the {} edge",
                        if side == 0 { "left" } else { "right" }
                    );
                    log::warn!("{msg}");
                    warnings.push(msg);
                }
            }
        }
        while next_snapshot < snapshot_steps.len() && snapshot_steps[next_snapshot].0 == step {
            snapshots.push(Snapshot {
                t,
                psi: psi.clone(),
            });
            next_snapshot += 1;
        }
        if step < n_steps {
            stepper.step(&mut psi, t)?;
        }
    }

    Ok(Trajectory {
        config: config.clone(),
        records,
        snapshots,
        kicks: kick_records.into_iter().flatten().collect(),
        final_state: psi,
        warnings,
    })
}
