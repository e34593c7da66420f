use qevap::analytic::{
    analytic_transmission, coefficients, overlap_oracle, overlap_oracle_with, post_kick_energy, OracleSettings, small_q_coefficient, Orientation,
    SpectralAmplitude, StepEigenParams,
};
use qevap::domain::ParticleSpec;
use qevap::experiments::scenarios::{electron_arrival_time, electron_packet, ELECTRON_V0_EV};
use qevap::units::ev;
use rand::{Rng, SeedableRng};

/// `hbar = m = 1` with `kappa0 = 1`.
fn unit() -> StepEigenParams {
    StepEigenParams::new(0.5, ParticleSpec::with_hbar(1.0, 1.0).unwrap()).unwrap()
}

/// Random `(k, k', q)` with every pole at least 0.05 away.
fn off_pole_samples(n: usize, seed: u64) -> Vec<(f64, f64, f64)> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let k: f64 = rng.gen_range(0.05..0.95);
        let kp: f64 = rng.gen_range(1.05..3.0);
        let q: f64 = rng.gen_range(0.005..0.1) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let p = (kp * kp - 1.0_f64).sqrt();
        let gaps = [kp - (k + q).abs(), kp - (k - q).abs(), (kp + q).abs() - k, p - q.abs()];
        if gaps.iter().all(|g| g.abs() > 0.05) {
            out.push((k, kp, q));
        }
    }
    out
}

#[test]
fn closed_forms_match_the_oracle() {
    let params = unit();
    for (k, kp, q) in off_pole_samples(10, 7) {
        let c = coefficients(k, kp, q, &params).unwrap();
        let plus = overlap_oracle(k, kp, Orientation::LeftIncident, q, &params).unwrap();
        let minus = overlap_oracle(k, kp, Orientation::RightIncident, q, &params).unwrap();
        assert!((plus - c.c_plus).norm() < 1e-4 * c.c_plus.norm(), "C+ at {k} {kp} {q}");
        assert!((minus - c.c_minus).norm() < 1e-4 * c.c_minus.norm(), "C- at {k} {kp} {q}");
    }
}

#[test]
fn unkicked_states_are_orthogonal() {
    let params = unit();
    // the relative convergence check is meaningless for a vanishing overlap
    let settings = OracleSettings {
        tolerance: f64::INFINITY,
        ..OracleSettings::default()
    };
    for (k, kp) in [(0.4, 1.3), (0.8, 2.2)] {
        let reference = coefficients(k, kp, 0.01, &params).unwrap();
        for orientation in [Orientation::LeftIncident, Orientation::RightIncident] {
            let overlap = overlap_oracle_with(k, kp, orientation, 0.0, &params, &settings).unwrap();
            assert!(overlap.norm() < 1e-3 * reference.c_plus.norm(), "{overlap}");
        }
    }
}

#[test]
fn small_kicks_are_linear() {
    let params = unit();
    let (k, kp) = (0.6, 1.4);
    let a = coefficients(k, kp, 1e-3, &params).unwrap();
    let b = coefficients(k, kp, 2e-3, &params).unwrap();
    let oracle = overlap_oracle(k, kp, Orientation::LeftIncident, 2e-3, &params).unwrap();
    assert!((b.c_plus / a.c_plus - 2.0).norm() < 1e-2);
    assert!((oracle / a.c_plus - 2.0).norm() < 1e-2);
}

#[test]
fn electron_transmission_is_quadratic_in_q() {
    let e = ParticleSpec::electron();
    let params = StepEigenParams::new(ev(ELECTRON_V0_EV), e).unwrap();
    let packet = electron_packet();
    let f = SpectralAmplitude::gaussian(&packet, &e, electron_arrival_time());
    let t1 = analytic_transmission(&f, 5e7, &params).unwrap();
    let t2 = analytic_transmission(&f, 1e8, &params).unwrap();
    let ratio = t2.transmission / t1.transmission;
    assert!((ratio / 4.0 - 1.0).abs() < 0.1, "{ratio}");
    assert!(t2.supra_barrier_population > t2.transmission);
    assert!(t2.tail_fraction < 1e-3);
    let q: Vec<f64> = [0.0025, 0.005].iter().flat_map(|s| [-s * packet.k_bar, s * packet.k_bar]).collect();
    let fit = small_q_coefficient(&f, &params, &q).unwrap();
    assert!(fit.max_deviation < 0.1);
}

#[test]
fn kick_energy_on_the_step_is_quadratic() {
    let e = ParticleSpec::electron();
    let params = StepEigenParams::new(ev(ELECTRON_V0_EV), e).unwrap();
    let f = SpectralAmplitude::gaussian(&electron_packet(), &e, 0.0);
    let energy = post_kick_energy(&f, 1e8, &params);
    let expected = e.kinetic_prefactor() * 1e16;
    assert!((energy.transfer_at_step() / expected - 1.0).abs() < 1e-12);
    assert!(energy.transfer_free_space() > 100.0 * expected);
}

#[test]
fn out_of_branch_packets_are_rejected() {
    let e = ParticleSpec::electron();
    let params = StepEigenParams::new(ev(ELECTRON_V0_EV), e).unwrap();
    let f = SpectralAmplitude::gaussian(&electron_packet(), &e, 0.0);
    assert!(analytic_transmission(&f, 0.8 * electron_packet().k_bar, &params).is_err());
}
