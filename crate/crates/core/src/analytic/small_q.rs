use serde::{Deserialize, Serialize};

use super::eigen::StepEigenParams;
use super::spectral::SpectralAmplitude;
use super::transmission::{analytic_transmission_with, TransmissionSettings};
use crate::error::{Error, Result};

/// Largest relative deviation from `alpha q^2` accepted by [`small_q_coefficient`].
pub const QUADRATIC_TOLERANCE: f64 = 0.1;

/// Result of fitting `T(q) = alpha q^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadraticFit {
    /// m^2 when `q` is in 1/m.
    pub alpha: f64,
    pub max_deviation: f64,
    pub samples: Vec<(f64, f64)>,
}

impl QuadraticFit {
    /// Fit in relative least squares, which weights every sample equally.
    pub fn from_samples(samples: Vec<(f64, f64)>) -> Result<Self> {
        let ratios: Vec<f64> = samples
            .iter()
            .filter(|(q, _)| *q != 0.0)
            .map(|&(q, t)| t / (q * q))
            .collect();
        if ratios.is_empty() {
            return Err(Error::FitRejected {
                reason: "no non-zero q samples".into(),
            });
        }
        let alpha = ratios.iter().sum::<f64>() / ratios.len() as f64;
        let max_deviation = ratios.iter().map(|r| (r / alpha - 1.0).abs()).fold(0.0, f64::max);
        Ok(QuadraticFit {
            alpha,
            max_deviation,
            samples,
        })
    }
}

/// Fits `alpha` over `q_values` and rejects the fit when any point deviates
/// from `alpha q^2` by more than [`QUADRATIC_TOLERANCE`].
pub fn small_q_coefficient(
    f: &SpectralAmplitude,
    params: &StepEigenParams,
    q_values: &[f64],
) -> Result<QuadraticFit> {
    small_q_coefficient_with(f, params, q_values, &TransmissionSettings::default())
}

pub fn small_q_coefficient_with(
    f: &SpectralAmplitude,
    params: &StepEigenParams,
    q_values: &[f64],
    settings: &TransmissionSettings,
) -> Result<QuadraticFit> {
    let samples = q_values
        .iter()
        .map(|&q| analytic_transmission_with(f, q, params, settings).map(|t| (q, t.transmission)))
        .collect::<Result<Vec<_>>>()?;
    let fit = QuadraticFit::from_samples(samples)?;
    if fit.max_deviation > QUADRATIC_TOLERANCE {
        return Err(Error::FitRejected {
            reason: format!(
                "T deviates from alpha q^2 by {:.1}% (limit {:.0}%)",
                100.0 * fit.max_deviation,
                100.0 * QUADRATIC_TOLERANCE
            ),
        });
    }
    Ok(fit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_parabola_has_no_deviation() {
        let fit = QuadraticFit::from_samples(vec![(-2.0, 12.0), (1.0, 3.0), (3.0, 27.0)]).unwrap();
        assert!((fit.alpha - 3.0).abs() < 1e-15);
        assert!(fit.max_deviation < 1e-15);
        assert!(QuadraticFit::from_samples(vec![(0.0, 1.0)]).is_err());
    }
}
