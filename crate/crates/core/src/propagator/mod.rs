//! Time evolution with scheduled momentum kicks.

mod config;
mod kick;
mod run;
mod stepper;
pub mod tridiag;

pub use config::{KickEvent, SimConfig};
pub use kick::{apply_kick_gradual, apply_kick_instant};
pub use run::{
    propagate, propagate_unscaled, KickRecord, Snapshot, Trajectory, TrajectoryRecord,
    MONITOR_CELLS, MONITOR_THRESHOLD,
};
pub use stepper::{cn_step, CrankNicolson};
