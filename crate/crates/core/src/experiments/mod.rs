//! Scenario runners, sweeps and the reference studies built on them.

pub mod compare;
pub mod convergence;
pub mod energy;
pub mod figures;
pub mod helium;
pub mod properties;
pub mod runs;
pub mod scenarios;
pub mod sweep;

pub use compare::{analytic_for_config, compare_step_curve, ComparisonRow};
pub use convergence::{refinement_study, ConvergenceCheck};
pub use energy::{free_space_kick, turning_point_transfer, FreeSpaceKick, TurningPointTransfer};
pub use figures::{
    fit_gaussian, run_fig1_scenarios, sweep_kick_time, sweep_q, Fig1Report, Fig3Case, GaussianFit, KickTimeSweep,
};
pub use helium::{helium_scenario, helium_scenario_with, helium_sensitivity, HeliumReport, HeliumSensitivityPoint};
pub use properties::{
    gradual_kick_study, moving_potential_equivalence, ramp_width_sweep, GalileanComparison, GradualKickComparison,
};
pub use runs::{run_scenario, run_scenarios, ScenarioRun, ScenarioSummary};
pub use sweep::{run_sweep, SweepAxis, SweepPoint, SweepSpec};
