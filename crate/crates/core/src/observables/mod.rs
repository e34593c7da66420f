//! Transmission, reflection, energy transfer and supra-barrier populations.

mod population;
mod region;
mod transmission;

pub use population::{
    project_supra_barrier, supra_barrier_population, SupraBarrierProjection, MIN_POPULATION_NODES,
    POPULATION_FLOOR, POPULATION_K_MAX, POPULATION_TOLERANCE,
};
pub use region::{left_probability, region_probability};
pub use transmission::{
    asymptotic_transmission, plateau, reflected_centroid, TransmissionResult, MIN_EVANESCENT_DEPTHS,
    PLATEAU_TOLERANCE, PLATEAU_WINDOW, REFLECTED_CLEARANCE,
};

use crate::domain::ExpectationRecord;

/// Change of the mean total energy between two records of the same run.
pub fn energy_transfer(before: &ExpectationRecord, after: &ExpectationRecord) -> f64 {
    after.e_tot - before.e_tot
}
