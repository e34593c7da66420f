use approx::assert_relative_eq;
use qevap::domain::{
    expectation_values, make_gaussian_packet, to_dimensionless, Grid1D, PacketSpec, ParticleSpec, PotentialSpec,
};
use qevap::experiments::scenarios::{electron_config, electron_kicked, Geometry};
use qevap::propagator::{apply_kick_instant, cn_step, propagate, propagate_unscaled, KickEvent, SimConfig};

fn natural() -> ParticleSpec {
    ParticleSpec::with_hbar(1.0, 1.0).unwrap()
}

/// Packet in natural units far from a barrier it never reaches.
fn free_config() -> SimConfig {
    let particle = natural();
    let potential = PotentialSpec::barrier(50.0, 55.0, 56.0).unwrap();
    SimConfig {
        particle,
        grid: Grid1D::with_spacing(-60.0, 60.0, 0.02).unwrap(),
        potential,
        packet: PacketSpec::new(-20.0, 1.0, 2.0).unwrap(),
        dt: 0.002,
        t_end: 6.0,
        kicks: Vec::new(),
        x_transmission: 55.0,
        snapshot_times: vec![6.0],
        record_every: 100,
    }
}

#[test]
fn free_centroid_follows_ehrenfest() {
    let traj = propagate_unscaled(&free_config()).unwrap();
    for r in &traj.records {
        let e = r.expectation;
        // lattice dispersion slows the group velocity by about (k dx)^2 / 6
        assert_relative_eq!(e.mean_x, -20.0 + 2.0 * e.t, epsilon = 1e-3 * 2.0 * e.t + 1e-9);
        assert_relative_eq!(e.mean_p, 2.0, epsilon = 2e-3);
    }
}

#[test]
fn free_packet_spreads() {
    let config = free_config();
    let traj = propagate_unscaled(&config).unwrap();
    let snap = &traj.snapshots[0];
    let rec = expectation_values(&snap.psi, &config.potential, &config.particle, snap.t);
    let var: f64 = snap
        .psi
        .grid
        .points()
        .zip(snap.psi.density())
        .map(|(x, rho)| (x - rec.mean_x).powi(2) * rho)
        .sum::<f64>()
        * snap.psi.grid.dx();
    // sigma(t)^2 = sigma^2 (1 + (t / 2 sigma^2)^2)
    let expected = 1.0 + (snap.t / 2.0).powi(2);
    assert_relative_eq!(var, expected, max_relative = 5e-3);
}

#[test]
fn norm_and_energy_are_conserved_on_a_barrier() {
    let mut config = free_config();
    config.potential = PotentialSpec::barrier(1.5, 0.0, 0.5).unwrap();
    config.x_transmission = 0.5;
    config.t_end = 15.0;
    let traj = propagate_unscaled(&config).unwrap();
    assert!(traj.max_norm_drift() < 1e-10);
    let e0 = traj.records[0].expectation.e_tot;
    for r in &traj.records {
        assert_relative_eq!(r.expectation.e_tot, e0, max_relative = 1e-6);
    }
    let last = traj.last();
    assert!(last.transmission > 0.05 && last.reflection > 0.05);
    let outside = last.transmission + last.reflection;
    assert!(outside <= 1.0 && outside > 0.95, "{outside}");
}

#[test]
fn single_step_matches_the_stepper() {
    let config = free_config();
    let psi = make_gaussian_packet(&config.grid, &config.packet).unwrap();
    let a = cn_step(&psi, &config.potential, 0.0, config.dt, &config.particle).unwrap();
    let b = cn_step(&psi, &config.potential, 0.0, config.dt, &config.particle).unwrap();
    assert_eq!(a, b);
    assert_relative_eq!(a.norm(), 1.0, epsilon = 1e-12);
}

#[test]
fn kick_shifts_momentum_and_keeps_norm() {
    let config = free_config();
    let psi = make_gaussian_packet(&config.grid, &config.packet).unwrap();
    let kicked = apply_kick_instant(&psi, 0.5).unwrap();
    let before = expectation_values(&psi, &config.potential, &config.particle, 0.0);
    let after = expectation_values(&kicked, &config.potential, &config.particle, 0.0);
    assert_relative_eq!(after.norm, before.norm, epsilon = 1e-14);
    assert_relative_eq!(after.mean_p - before.mean_p, 0.5, epsilon = 1e-3);
    assert!(apply_kick_instant(&psi, 1e3).is_err());
}

#[test]
fn scheduled_kick_is_recorded() {
    let mut config = free_config();
    config.t_end = 1.0;
    config.kicks = vec![KickEvent::instant(0.25, 0.5)];
    let traj = propagate_unscaled(&config).unwrap();
    let k = traj.kicks[0];
    assert_relative_eq!(k.before.t, 0.5, epsilon = 1e-12);
    assert_relative_eq!(k.after.mean_p - k.before.mean_p, 0.25, epsilon = 1e-3);
}

#[test]
fn gradual_kick_rejects_unresolved_durations() {
    let mut config = free_config();
    config.kicks = vec![KickEvent::gradual(0.25, 0.5, config.dt, 10)];
    assert!(propagate_unscaled(&config).is_err());
}

#[test]
fn scaled_and_si_runs_agree() {
    let mut config = electron_kicked(Geometry::Step, 1e8, 2e-15);
    config.t_end = 3e-15;
    let si = propagate_unscaled(&config).unwrap();
    let scaled = propagate(&config).unwrap();
    assert_relative_eq!(si.final_transmission(), scaled.final_transmission(), max_relative = 1e-8, epsilon = 1e-20);
    let (a, b) = (si.last().expectation, scaled.last().expectation);
    assert_relative_eq!(a.mean_x, b.mean_x, max_relative = 1e-9);
    assert_relative_eq!(a.e_tot, b.e_tot, max_relative = 1e-9);
    let (dimensionless, scales) = to_dimensionless(&config);
    assert_eq!(dimensionless.particle, natural());
    assert_relative_eq!(scales.length, config.packet.sigma);
}

#[test]
fn runs_are_deterministic() {
    let mut config = electron_config(Geometry::Barrier);
    config.t_end = 2e-15;
    let a = propagate(&config).unwrap();
    let b = propagate(&config).unwrap();
    assert_eq!(a.records, b.records);
    assert_eq!(a.final_state, b.final_state);
}

#[test]
fn invalid_configs_are_rejected() {
    let mut config = free_config();
    config.dt = 0.0;
    assert!(propagate_unscaled(&config).unwrap_err().is_config());
    let mut config = free_config();
    config.packet = PacketSpec::new(-58.0, 1.0, 2.0).unwrap();
    assert!(propagate_unscaled(&config).unwrap_err().is_config());
    let mut config = free_config();
    config.kicks = vec![KickEvent::instant(1e3, 0.5)];
    assert!(propagate_unscaled(&config).unwrap_err().is_config());
}
