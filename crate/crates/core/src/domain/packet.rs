use serde::{Deserialize, Serialize};

use super::ParticleSpec;
use crate::error::{Error, Result};

/// Gaussian wave packet parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PacketSpec {
    /// Initial centroid, m.
    pub x_i: f64,
    /// Position standard deviation, m.
    pub sigma: f64,
    /// Mean wave number, 1/m.
    pub k_bar: f64,
}

impl PacketSpec {
    pub fn new(x_i: f64, sigma: f64, k_bar: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::invalid("packet.sigma", "must be > 0"));
        }
        if !(x_i.is_finite() && k_bar.is_finite()) {
            return Err(Error::invalid("packet.k_bar", "must be finite"));
        }
        Ok(PacketSpec { x_i, sigma, k_bar })
    }

    /// Packet whose mean kinetic energy `hbar^2 <k^2> / 2m` equals `energy`,
    /// i.e. `k_bar^2 + delta_k^2 = 2 m E / hbar^2`.
    pub fn with_mean_energy(
        particle: &ParticleSpec,
        x_i: f64,
        sigma: f64,
        energy: f64,
    ) -> Result<Self> {
        let dk = 1.0 / (2.0 * sigma);
        let k2 = energy / particle.kinetic_prefactor() - dk * dk;
        if !(k2 > 0.0) {
            return Err(Error::invalid(
                "packet.sigma",
                "momentum spread exceeds the requested mean energy",
            ));
        }
        Self::new(x_i, sigma, k2.sqrt())
    }

    /// Momentum-space standard deviation `1 / (2 sigma)`.
    pub fn delta_k(&self) -> f64 {
        0.5 / self.sigma
    }

    /// `<k^2> = k_bar^2 + delta_k^2`.
    pub fn mean_k_squared(&self) -> f64 {
        self.k_bar * self.k_bar + self.delta_k() * self.delta_k()
    }

    pub fn mean_energy(&self, particle: &ParticleSpec) -> f64 {
        particle.kinetic_prefactor() * self.mean_k_squared()
    }

    /// Set when `delta_k / k_bar > 0.1`.
    pub fn is_broadband(&self) -> bool {
        self.delta_k() > 0.1 * self.k_bar.abs()
    }

    /// Time for the centroid to travel from `x_i` to `x`: `m |x - x_i| / (hbar k_bar)`.
    pub fn arrival_time(&self, particle: &ParticleSpec, x: f64) -> f64 {
        (x - self.x_i).abs() / particle.velocity(self.k_bar)
    }

    /// Duration of appreciable overlap with a sharp potential, `2 m sigma / (hbar k_bar)`.
    pub fn interaction_duration(&self, particle: &ParticleSpec) -> f64 {
        2.0 * self.sigma / particle.velocity(self.k_bar)
    }
}
