use serde::{Deserialize, Serialize};

use super::eigen::StepEigenParams;
use super::spectral::SpectralAmplitude;

/// Mean energies of a packet before and after a kick `exp(iqx)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PostKickEnergy {
    pub initial: f64,
    /// Kick delivered while the packet sits on the step.
    pub at_step: f64,
    /// Kick delivered in field-free space.
    pub free_space: f64,
}

impl PostKickEnergy {
    pub fn transfer_at_step(&self) -> f64 {
        self.at_step - self.initial
    }

    pub fn transfer_free_space(&self) -> f64 {
        self.free_space - self.initial
    }
}

/// On the step the kick leaves the sub-barrier energies unchanged except for
/// `hbar^2 q^2/2m`. In free space the mean momentum shifts, adding `hbar^2 k q/m`.
pub fn post_kick_energy(f: &SpectralAmplitude, q: f64, params: &StepEigenParams) -> PostKickEnergy {
    let (m0, m1, m2) = f.moments(params.kappa0);
    let c = params.particle.kinetic_prefactor();
    let initial = c * m2 / m0;
    PostKickEnergy {
        initial,
        at_step: initial + c * q * q,
        free_space: c * (m2 + 2.0 * q * m1 + q * q * m0) / m0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{PacketSpec, ParticleSpec};
    use crate::units::{ev, to_ev, NANOMETER};

    #[test]
    fn electron_energies() {
        let e = ParticleSpec::electron();
        let packet = PacketSpec::with_mean_energy(&e, -6.0 * NANOMETER, 0.8 * NANOMETER, ev(5.0)).unwrap();
        let params = StepEigenParams::new(ev(10.0), e).unwrap();
        let f = SpectralAmplitude::gaussian(&packet, &e, 0.0);
        let none = post_kick_energy(&f, 0.0, &params);
        assert_eq!(none.at_step, none.initial);
        assert_eq!(none.free_space, none.initial);
        assert!((to_ev(none.initial) - 5.0).abs() < 1e-9);
        let kicked = post_kick_energy(&f, 1e8, &params);
        assert!((to_ev(kicked.transfer_at_step()) - 3.81e-4).abs() < 1e-6);
        assert!((to_ev(kicked.free_space) - 5.09).abs() < 0.005);
    }

    #[test]
    fn helium_transfer() {
        let he = ParticleSpec::helium4();
        let params = StepEigenParams::new(ev(1.5e-11), he).unwrap();
        let k_bar = he.wave_number(ev(1e-11));
        let packet = PacketSpec::new(-1e-3, 10.0 / k_bar, k_bar).unwrap();
        let f = SpectralAmplitude::gaussian(&packet, &he, 0.0);
        let e = post_kick_energy(&f, -5e5, &params);
        assert!((to_ev(e.transfer_at_step()) - 1.3e-12).abs() < 0.05 * 1.3e-12);
    }
}
