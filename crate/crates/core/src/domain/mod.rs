//! Units, grids, wave packets, potentials and closed-form baselines.

mod baselines;
mod grid;
mod packet;
mod particle;
mod potential;
pub mod scaling;
mod wavefunction;

pub use baselines::{classical_supra_barrier_probability, monochromatic_barrier_transmission};
pub use grid::Grid1D;
pub use packet::PacketSpec;
pub use particle::ParticleSpec;
pub use potential::{potential_at, PotentialShape, PotentialSpec};
pub use scaling::{from_dimensionless, to_dimensionless, to_dimensionless_with, ScaleFactors};
pub use wavefunction::{
    expectation_values, make_gaussian_packet, momentum_spectrum, ExpectationRecord,
    MomentumSpectrum, WaveFunction,
};
