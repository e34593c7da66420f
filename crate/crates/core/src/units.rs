//! Physical constants (CODATA 2018) and unit helpers. Everything public is SI.

/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Electron rest mass, kg.
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
/// Atomic mass constant, kg.
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;
/// Helium-4 atomic mass, kg.
pub const HELIUM4_MASS: f64 = 4.002_603_254 * ATOMIC_MASS_UNIT;
/// Electronvolt, J.
pub const EV: f64 = 1.602_176_634e-19;

pub const NANOMETER: f64 = 1e-9;
pub const PICOMETER: f64 = 1e-12;
pub const FEMTOSECOND: f64 = 1e-15;

pub fn ev(value: f64) -> f64 {
    value * EV
}

pub fn to_ev(joules: f64) -> f64 {
    joules / EV
}
