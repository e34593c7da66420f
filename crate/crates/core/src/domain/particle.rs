use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::{ELECTRON_MASS, HBAR, HELIUM4_MASS};

/// Particle mass together with the value of hbar in the unit system in use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParticleSpec {
    pub mass: f64,
    pub hbar: f64,
}

impl ParticleSpec {
    pub fn new(mass: f64) -> Result<Self> {
        Self::with_hbar(mass, HBAR)
    }

    pub fn with_hbar(mass: f64, hbar: f64) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::invalid("particle.mass", format!("must be > 0, got {mass:e}")));
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::invalid("particle.hbar", "must be > 0"));
        }
        Ok(ParticleSpec { mass, hbar })
    }

    pub fn electron() -> Self {
        ParticleSpec {
            mass: ELECTRON_MASS,
            hbar: HBAR,
        }
    }

    pub fn helium4() -> Self {
        ParticleSpec {
            mass: HELIUM4_MASS,
            hbar: HBAR,
        }
    }

    /// `hbar^2 / (2 m)`.
    pub fn kinetic_prefactor(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.mass)
    }

    /// Kinetic energy of a plane wave with wave number `k`.
    pub fn energy(&self, k: f64) -> f64 {
        self.kinetic_prefactor() * k * k
    }

    /// Wave number of a plane wave with kinetic energy `e >= 0`.
    pub fn wave_number(&self, e: f64) -> f64 {
        (e / self.kinetic_prefactor()).sqrt()
    }

    /// Group velocity `hbar k / m`.
    pub fn velocity(&self, k: f64) -> f64 {
        self.hbar * k / self.mass
    }
}
