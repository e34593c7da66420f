use std::f64::consts::PI;

use num_complex::Complex64;

use super::eigen::StepEigenParams;
use crate::error::{Error, Result};

/// Denominators smaller than this fraction of their natural scale are
/// reported as pole hits.
pub const POLE_TOLERANCE: f64 = 1e-8;

/// Expansion amplitudes of a kicked sub-barrier state `exp(iqx) psi_k` onto
/// the two supra-barrier states of wave number `k'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientPair {
    /// Amplitude onto the right-incident state `psi_{-k'}`.
    pub c_minus: Complex64,
    /// Amplitude onto the left-incident state `psi_{+k'}`.
    pub c_plus: Complex64,
    pub k: f64,
    pub k_prime: f64,
    pub q: f64,
}

/// Closed-form overlaps `<psi_{-k'}| exp(iqx) |psi_k>` and
/// `<psi_{+k'}| exp(iqx) |psi_k>` for `0 <= k < kappa0 < k'`.
///
/// Only the principal part is returned; the delta terms at `k' = |k +- q|`
/// are excluded, so the caller must keep quadrature nodes off the poles.
pub fn coefficients(k: f64, k_prime: f64, q: f64, params: &StepEigenParams) -> Result<CoefficientPair> {
    let kappa0 = params.kappa0;
    if !(0.0..kappa0).contains(&k) {
        return Err(Error::WaveNumberOutOfRange {
            k,
            range: "0 <= k < kappa0",
        });
    }
    if !(k_prime > kappa0 && k_prime.is_finite()) {
        return Err(Error::WaveNumberOutOfRange {
            k: k_prime,
            range: "k' > kappa0",
        });
    }
    if !q.is_finite() || q == 0.0 {
        return Err(Error::invalid("q", "must be finite and non-zero"));
    }
    let raw = raw_coefficients(k, k_prime, q, kappa0);
    if raw.proximity < POLE_TOLERANCE {
        return Err(Error::PoleProximity { k, k_prime, q });
    }
    Ok(CoefficientPair {
        c_minus: raw.c_minus,
        c_plus: raw.c_plus,
        k,
        k_prime,
        q,
    })
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct RawCoefficients {
    pub c_minus: Complex64,
    pub c_plus: Complex64,
    /// Smallest denominator relative to its scale.
    pub proximity: f64,
}

#[inline]
pub(crate) fn raw_coefficients(k: f64, kp: f64, q: f64, kappa0: f64) -> RawCoefficients {
    let k02 = kappa0 * kappa0;
    let b = (k02 - k * k).max(0.0).sqrt();
    let p = (kp * kp - k02).max(0.0).sqrt();
    let common = Complex64::new(0.0, 4.0 * k02 * k * q) / (Complex64::new(k, b) * (PI * (kp + p)));

    let d1 = (kp + q) * (kp + q) - k * k;
    let d2 = Complex64::new(b * b - q * q + p * p, -2.0 * b * q);
    let d3 = kp * kp - (k + q) * (k + q);
    let d4 = kp * kp - (k - q) * (k - q);
    let d5 = Complex64::new(b, p - q);

    let c_minus = common * p / (d2 * d1);
    let c_plus = common * kp / (d3 * d4) * Complex64::new(b, p + q) / d5;

    let scale = kp * kp;
    let proximity = [d1.abs() / scale, d2.norm() / scale, d3.abs() / scale, d4.abs() / scale, d5.norm() / kappa0]
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    RawCoefficients {
        c_minus,
        c_plus,
        proximity,
    }
}
