//! Semi-analytic model of a kick applied to a packet sitting on a sharp step.
//!
//! The packet is expanded on the step eigenfunctions; the kick couples each
//! sub-barrier state to the continuum above the step through closed-form
//! amplitudes, and the transmitted probability follows from the time
//! evolution of that continuum part.

mod coefficients;
mod eigen;
mod energy;
mod oracle;
mod small_q;
mod spectral;
mod transmission;

pub use coefficients::{coefficients, CoefficientPair, POLE_TOLERANCE};
pub use eigen::*;
pub use energy::{post_kick_energy, PostKickEnergy};
pub use oracle::{overlap_oracle, overlap_oracle_with, OracleSettings};
pub use small_q::{small_q_coefficient, small_q_coefficient_with, QuadraticFit, QUADRATIC_TOLERANCE};
pub use spectral::SpectralAmplitude;
pub use transmission::{analytic_transmission, analytic_transmission_with, AnalyticTransmission, TransmissionSettings};
