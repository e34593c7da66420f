use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::domain::ParticleSpec;
use crate::error::{Error, Result};

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Height of a sharp step at `x = 0` expressed through `kappa0 = sqrt(2 m V0) / hbar`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepEigenParams {
    pub kappa0: f64,
    pub v0: f64,
    pub particle: ParticleSpec,
}

impl StepEigenParams {
    pub fn new(v0: f64, particle: ParticleSpec) -> Result<Self> {
        if !(v0.is_finite() && v0 > 0.0) {
            return Err(Error::invalid("v0", "must be > 0"));
        }
        Ok(StepEigenParams {
            kappa0: particle.wave_number(v0),
            v0,
            particle,
        })
    }

    /// Decay constant `sqrt(kappa0^2 - k^2)` of a sub-barrier state.
    pub fn decay(&self, k: f64) -> f64 {
        (self.kappa0 * self.kappa0 - k * k).max(0.0).sqrt()
    }

    /// Transmitted wave number `sqrt(k'^2 - kappa0^2)` of a supra-barrier state.
    pub fn transmitted(&self, k_prime: f64) -> f64 {
        (k_prime * k_prime - self.kappa0 * self.kappa0).max(0.0).sqrt()
    }
}

/// Which of the two degenerate supra-barrier states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    /// `psi_{+k'}`: unit wave `exp(i k' x)` incident from the left.
    LeftIncident,
    /// `psi_{-k'}`: unit wave `exp(-i p x)` incident from the right.
    RightIncident,
}

/// Reflection and transmission amplitudes of one scattering state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringAmplitudes {
    pub reflection: Complex64,
    pub transmission: Complex64,
}

/// Amplitudes of the sub-barrier state: reflection `(k - i b)/(k + i b)` and
/// evanescent amplitude `2k/(k + i b)`, `b = sqrt(kappa0^2 - k^2)`.
pub fn below_amplitudes(k: f64, params: &StepEigenParams) -> Result<ScatteringAmplitudes> {
    if !(0.0..params.kappa0).contains(&k) {
        return Err(Error::WaveNumberOutOfRange {
            k,
            range: "0 <= k < kappa0",
        });
    }
    let b = params.decay(k);
    let denom = Complex64::new(k, b);
    Ok(ScatteringAmplitudes {
        reflection: Complex64::new(k, -b) / denom,
        transmission: Complex64::new(2.0 * k, 0.0) / denom,
    })
}

/// Amplitudes of the supra-barrier states. Left-incident:
/// `r = (k' - p)/(k' + p)`, `t = 2k'/(k' + p)`; right-incident:
/// `r = (p - k')/(p + k')`, `t = 2p/(p + k')`.
pub fn above_amplitudes(
    k_prime: f64,
    orientation: Orientation,
    params: &StepEigenParams,
) -> Result<ScatteringAmplitudes> {
    if !(k_prime > params.kappa0) {
        return Err(Error::WaveNumberOutOfRange {
            k: k_prime,
            range: "k' > kappa0",
        });
    }
    let p = params.transmitted(k_prime);
    let s = k_prime + p;
    Ok(match orientation {
        Orientation::LeftIncident => ScatteringAmplitudes {
            reflection: Complex64::new((k_prime - p) / s, 0.0),
            transmission: Complex64::new(2.0 * k_prime / s, 0.0),
        },
        Orientation::RightIncident => ScatteringAmplitudes {
            reflection: Complex64::new((p - k_prime) / s, 0.0),
            transmission: Complex64::new(2.0 * p / s, 0.0),
        },
    })
}

/// Sub-barrier step eigenfunction, normalized to `delta(k - k'')`.
pub fn eigen_below(k: f64, params: &StepEigenParams, x: f64) -> Result<Complex64> {
    let amp = below_amplitudes(k, params)?;
    Ok(eval_below(k, params.decay(k), &amp, x))
}

#[inline]
pub(crate) fn eval_below(k: f64, decay: f64, amp: &ScatteringAmplitudes, x: f64) -> Complex64 {
    let value = if x < 0.0 {
        Complex64::cis(k * x) + amp.reflection * Complex64::cis(-k * x)
    } else {
        amp.transmission * (-decay * x).exp()
    };
    value * INV_SQRT_2PI
}

/// Supra-barrier scattering state with unit incident amplitude and the
/// `1/sqrt(2 pi)` prefactor. The left-incident state is normalized to
/// `delta(k' - k'')`; the right-incident one to `delta(p - p'')`, i.e. to
/// `(p/k') delta(k' - k'')`.
pub fn eigen_above(
    k_prime: f64,
    orientation: Orientation,
    params: &StepEigenParams,
    x: f64,
) -> Result<Complex64> {
    let amp = above_amplitudes(k_prime, orientation, params)?;
    Ok(eval_above(k_prime, params.transmitted(k_prime), orientation, &amp, x))
}

#[inline]
pub(crate) fn eval_above(
    k_prime: f64,
    p: f64,
    orientation: Orientation,
    amp: &ScatteringAmplitudes,
    x: f64,
) -> Complex64 {
    let value = match orientation {
        Orientation::LeftIncident => {
            if x < 0.0 {
                Complex64::cis(k_prime * x) + amp.reflection * Complex64::cis(-k_prime * x)
            } else {
                amp.transmission * Complex64::cis(p * x)
            }
        }
        Orientation::RightIncident => {
            if x < 0.0 {
                amp.transmission * Complex64::cis(-k_prime * x)
            } else {
                Complex64::cis(-p * x) + amp.reflection * Complex64::cis(p * x)
            }
        }
    };
    value * INV_SQRT_2PI
}

/// Factor turning `|<psi_{+-k'}|phi>|^2` into a density in `k'`: 1 for the
/// left-incident state, `k'/p` for the right-incident one.
pub fn completeness_weight(k_prime: f64, orientation: Orientation, params: &StepEigenParams) -> f64 {
    match orientation {
        Orientation::LeftIncident => 1.0,
        Orientation::RightIncident => k_prime / params.transmitted(k_prime),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> StepEigenParams {
        StepEigenParams::new(0.5, ParticleSpec::with_hbar(1.0, 1.0).unwrap()).unwrap()
    }

    fn derivative(f: impl Fn(f64) -> Complex64, x: f64) -> Complex64 {
        let h = 1e-6;
        (f(x + h) - f(x - h)) / (2.0 * h)
    }

    #[test]
    fn below_state_is_continuous_at_the_edge() {
        let p = unit();
        assert!((p.kappa0 - 1.0).abs() < 1e-15);
        for &k in &[0.05, 0.3, 0.7071, 0.99] {
            let amp = below_amplitudes(k, &p).unwrap();
            assert!((amp.reflection.norm() - 1.0).abs() < 1e-15);
            // matching conditions in closed form
            let left = Complex64::new(1.0, 0.0) + amp.reflection;
            assert!((left - amp.transmission).norm() < 1e-15);
            let dleft = Complex64::new(0.0, k) * (Complex64::new(1.0, 0.0) - amp.reflection);
            let dright = -p.decay(k) * amp.transmission;
            assert!((dleft - dright).norm() < 1e-15);
            // and from evaluation on both sides
            let f = |x| eigen_below(k, &p, x).unwrap();
            assert!((f(-1e-13) - f(0.0)).norm() < 1e-12);
            let dl = derivative(f, -1e-3);
            let dr = derivative(f, 1e-3);
            assert!((dl - dr).norm() < 1e-2 * dl.norm().max(1e-3));
        }
        assert!(eigen_below(1.0, &p, 0.0).is_err());
    }

    #[test]
    fn above_states_conserve_flux() {
        let p = unit();
        for &kp in &[1.0001, 1.3, 2.0, 8.0] {
            let q = p.transmitted(kp);
            let l = above_amplitudes(kp, Orientation::LeftIncident, &p).unwrap();
            assert!((l.reflection.norm_sqr() + q / kp * l.transmission.norm_sqr() - 1.0).abs() < 1e-14);
            let r = above_amplitudes(kp, Orientation::RightIncident, &p).unwrap();
            assert!((r.reflection.norm_sqr() + kp / q * r.transmission.norm_sqr() - 1.0).abs() < 1e-12);
            for o in [Orientation::LeftIncident, Orientation::RightIncident] {
                let amp = above_amplitudes(kp, o, &p).unwrap();
                // value and slope continuity at the edge
                let (vl, vr, dl, dr) = match o {
                    Orientation::LeftIncident => (
                        Complex64::new(1.0, 0.0) + amp.reflection,
                        amp.transmission,
                        Complex64::new(0.0, kp) * (Complex64::new(1.0, 0.0) - amp.reflection),
                        Complex64::new(0.0, q) * amp.transmission,
                    ),
                    Orientation::RightIncident => (
                        amp.transmission,
                        Complex64::new(1.0, 0.0) + amp.reflection,
                        Complex64::new(0.0, -kp) * amp.transmission,
                        Complex64::new(0.0, q) * (amp.reflection - Complex64::new(1.0, 0.0)),
                    ),
                };
                assert!((vl - vr).norm() < 1e-14);
                assert!((dl - dr).norm() < 1e-13 * kp);
            }
        }
        assert!(above_amplitudes(1.0, Orientation::LeftIncident, &p).is_err());
    }

    #[test]
    fn free_limit_is_a_plane_wave() {
        let p = StepEigenParams::new(1e-14, ParticleSpec::with_hbar(1.0, 1.0).unwrap()).unwrap();
        for &x in &[-3.0, -0.2, 0.4, 5.0] {
            let plus = eigen_above(1.5, Orientation::LeftIncident, &p, x).unwrap();
            let minus = eigen_above(1.5, Orientation::RightIncident, &p, x).unwrap();
            assert!((plus - Complex64::cis(1.5 * x) * INV_SQRT_2PI).norm() < 1e-12);
            assert!((minus - Complex64::cis(-1.5 * x) * INV_SQRT_2PI).norm() < 1e-12);
        }
    }
}
