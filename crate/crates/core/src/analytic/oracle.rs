use num_complex::Complex64;

use super::eigen::{above_amplitudes, below_amplitudes, eval_above, eval_below, Orientation, StepEigenParams};
use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;

/// Parameters of the damped brute-force overlap.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleSettings {
    /// Convergence factors in units of `kappa0`, each half the previous one.
    pub epsilons: Vec<f64>,
    /// The integral is cut where `exp(-eps |x|)` falls below `exp(-cutoff)`.
    pub cutoff: f64,
    pub nodes_per_panel: usize,
    /// Relative disagreement allowed between the two highest extrapolation orders.
    pub tolerance: f64,
}

impl Default for OracleSettings {
    fn default() -> Self {
        OracleSettings {
            epsilons: vec![0.04, 0.02, 0.01, 0.005, 0.0025],
            cutoff: 36.0,
            nodes_per_panel: 16,
            tolerance: 1e-3,
        }
    }
}

/// `<psi_{+-k'}| exp(iqx) |psi_k>` by direct quadrature of the damped integrand
/// `exp(-eps|x|)` over `[-L, L]`, extrapolated to `eps -> 0`.
pub fn overlap_oracle(
    k: f64,
    k_prime: f64,
    orientation: Orientation,
    q: f64,
    params: &StepEigenParams,
) -> Result<Complex64> {
    overlap_oracle_with(k, k_prime, orientation, q, params, &OracleSettings::default())
}

pub fn overlap_oracle_with(
    k: f64,
    k_prime: f64,
    orientation: Orientation,
    q: f64,
    params: &StepEigenParams,
    settings: &OracleSettings,
) -> Result<Complex64> {
    if settings.epsilons.len() < 2 {
        return Err(Error::invalid("epsilons", "need at least two levels"));
    }
    let below = below_amplitudes(k, params)?;
    let above = above_amplitudes(k_prime, orientation, params)?;
    let decay = params.decay(k);
    let p = params.transmitted(k_prime);
    let integrand = |x: f64| {
        eval_above(k_prime, p, orientation, &above, x).conj() * Complex64::cis(q * x) * eval_below(k, decay, &below, x)
    };

    let kappa0 = params.kappa0;
    let fastest = k_prime + k + q.abs() + kappa0;
    let panel = 2.0 * std::f64::consts::PI / fastest;
    let gl = GaussLegendre::new(settings.nodes_per_panel);

    let levels: Vec<Complex64> = settings
        .epsilons
        .iter()
        .map(|&e| {
            let eps = e * kappa0;
            let reach = settings.cutoff / eps;
            let panels = (reach / panel).ceil() as usize;
            let mut sum = Complex64::new(0.0, 0.0);
            for i in 0..panels {
                let a = i as f64 * panel;
                let b = a + panel;
                sum += gl.integrate(a, b, |x| (integrand(x) + integrand(-x)) * (-eps * x).exp());
            }
            sum
        })
        .collect();

    let (best, previous) = richardson(&levels);
    let scale = best.norm().max(previous.norm());
    let residual = (best - previous).norm();
    let floor = 1e-12 / kappa0;
    if residual > settings.tolerance * scale + floor {
        return Err(Error::NotConverged {
            quantity: "overlap extrapolation",
            residual: residual / scale.max(floor),
            tolerance: settings.tolerance,
        });
    }
    Ok(best)
}

/// Richardson table for a sequence with halving step and a power series
/// error in the step. Returns the top entry and the best one of lower order.
fn richardson(levels: &[Complex64]) -> (Complex64, Complex64) {
    let n = levels.len();
    let mut table = vec![levels.to_vec()];
    for order in 1..n {
        let factor = 2f64.powi(order as i32);
        let prev = &table[order - 1];
        let next: Vec<Complex64> = (1..prev.len())
            .map(|j| (prev[j] * factor - prev[j - 1]) / (factor - 1.0))
            .collect();
        table.push(next);
    }
    let best = table[n - 1][0];
    let previous = *table[n - 2].last().expect("non-empty level");
    (best, previous)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn richardson_removes_polynomial_bias() {
        let f = |e: f64| Complex64::new(3.0 + 2.0 * e - 5.0 * e * e + e * e * e, -1.0 + e);
        let levels: Vec<_> = [0.4, 0.2, 0.1, 0.05].iter().map(|&e| f(e)).collect();
        let (best, _) = richardson(&levels);
        assert!((best - Complex64::new(3.0, -1.0)).norm() < 1e-12);
    }
}
