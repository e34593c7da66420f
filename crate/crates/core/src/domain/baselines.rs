//! Closed-form reference probabilities for the barrier scenarios.

use statrs::function::erf::erfc;

use super::ParticleSpec;
use crate::error::{Error, Result};

/// Probability that a Gaussian wave-number distribution (mean `k_bar`,
/// spread `delta_k`) carries kinetic energy above `v0`:
/// `0.5 erfc((sqrt(m V0)/hbar - k_bar/sqrt 2) / delta_k)`.
pub fn classical_supra_barrier_probability(
    k_bar: f64,
    delta_k: f64,
    v0: f64,
    particle: &ParticleSpec,
) -> Result<f64> {
    if !(delta_k > 0.0) {
        return Err(Error::invalid("delta_k", "must be > 0"));
    }
    let threshold = (particle.mass * v0).sqrt() / particle.hbar;
    Ok(0.5 * erfc((threshold - k_bar / std::f64::consts::SQRT_2) / delta_k))
}

/// Plane-wave transmission through a rectangular barrier below its top,
/// `[1 + V0^2 sinh^2(kappa a) / (4 E (V0 - E))]^-1`.
pub fn monochromatic_barrier_transmission(
    energy: f64,
    v0: f64,
    width: f64,
    particle: &ParticleSpec,
) -> Result<f64> {
    if !(energy > 0.0 && energy < v0) {
        return Err(Error::OutOfBranch { energy, v0 });
    }
    if !(width >= 0.0) {
        return Err(Error::invalid("width", "must be >= 0"));
    }
    let kappa = particle.wave_number(v0 - energy);
    let s = (kappa * width).sinh();
    Ok(1.0 / (1.0 + v0 * v0 * s * s / (4.0 * energy * (v0 - energy))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::{ev, NANOMETER};

    #[test]
    fn monochromatic_reference_value() {
        let e = ParticleSpec::electron();
        let t = monochromatic_barrier_transmission(ev(5.0), ev(10.0), NANOMETER, &e).unwrap();
        assert!((t / 4.5e-10 - 1.0).abs() < 0.05, "{t:e}");
        let lower = monochromatic_barrier_transmission(ev(4.0), ev(10.0), NANOMETER, &e).unwrap();
        assert!(lower < t);
        let thin = monochromatic_barrier_transmission(ev(5.0), ev(10.0), 1e-16, &e).unwrap();
        assert!((thin - 1.0).abs() < 1e-6);
        assert!(monochromatic_barrier_transmission(ev(10.0), ev(10.0), NANOMETER, &e).is_err());
    }

    #[test]
    fn classical_limits() {
        let e = ParticleSpec::electron();
        let k = 1.1455e10;
        let tiny_v0 = classical_supra_barrier_probability(k, 0.05 * k, ev(1e-9), &e).unwrap();
        assert!((tiny_v0 - 1.0).abs() < 1e-12);
        let sharp = classical_supra_barrier_probability(k, 1e-3 * k, ev(10.0), &e).unwrap();
        assert_eq!(sharp, 0.0);
        assert!(classical_supra_barrier_probability(k, 0.0, ev(10.0), &e).is_err());
    }
}
