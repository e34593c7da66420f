//! Closed-form overlap coefficients against brute-force regularized
//! overlap integrals of the step eigenfunctions.

use qevap::analytic::{coefficients, overlap_oracle, Orientation, StepEigenParams};
use qevap::domain::ParticleSpec;
use qevap::units::ev;

fn main() -> qevap::Result<()> {
    let params = StepEigenParams::new(ev(10.0), ParticleSpec::electron())?;
    let kappa0 = params.kappa0;
    for (k, kp, q) in [(0.7, 1.3, 0.01), (0.5, 2.0, 0.05), (0.3, 1.1, -0.02), (0.9, 1.05, 0.03)] {
        let (k, kp, q) = (k * kappa0, kp * kappa0, q * kappa0);
        let c = coefficients(k, kp, q, &params)?;
        let plus = overlap_oracle(k, kp, Orientation::LeftIncident, q, &params)?;
        let minus = overlap_oracle(k, kp, Orientation::RightIncident, q, &params)?;
        println!(
            "k = {:.2} k' = {:.2} q = {:+.2} (kappa0): |dC+|/|C+| = {:.1e}, |dC-|/|C-| = {:.1e}",
            k / kappa0,
            kp / kappa0,
            q / kappa0,
            (plus - c.c_plus).norm() / c.c_plus.norm(),
            (minus - c.c_minus).norm() / c.c_minus.norm()
        );
    }
    Ok(())
}
