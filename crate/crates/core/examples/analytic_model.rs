//! The semi-analytic route: overlap coefficients of the kicked sub-barrier
//! states with the supra-barrier continuum, and the transmission they imply.

use qevap::analytic::{analytic_transmission, coefficients, small_q_coefficient, SpectralAmplitude, StepEigenParams};
use qevap::domain::ParticleSpec;
use qevap::experiments::scenarios::{electron_arrival_time, electron_packet, ELECTRON_V0_EV};
use qevap::units::ev;

fn main() -> qevap::Result<()> {
    let electron = ParticleSpec::electron();
    let params = StepEigenParams::new(ev(ELECTRON_V0_EV), electron)?;
    let packet = electron_packet();
    let kappa0 = params.kappa0;

    let c = coefficients(packet.k_bar, 1.2 * kappa0, 1e8, &params)?;
    println!("k = k_bar, k' = 1.2 kappa0, q = 1e8 1/m: C- = {:.4e}, C+ = {:.4e}", c.c_minus, c.c_plus);

    let f = SpectralAmplitude::gaussian(&packet, &electron, electron_arrival_time());
    for q in [-2e8, -1e8, 5e7, 1e8, 2e8] {
        let t = analytic_transmission(&f, q, &params)?;
        println!(
            "q = {q:+.1e} 1/m: T = {:.4e} (flux limit {:.4e}), population above V0 {:.4e}",
            t.transmission, t.asymptotic, t.supra_barrier_population
        );
    }
    let q_values: Vec<f64> = [0.0025, 0.005, 0.01].iter().flat_map(|s| [-s * packet.k_bar, s * packet.k_bar]).collect();
    let fit = small_q_coefficient(&f, &params, &q_values)?;
    println!("T = alpha q^2 with alpha = {:.4e} m^2 (worst deviation {:.1}%)", fit.alpha, 100.0 * fit.max_deviation);
    Ok(())
}
