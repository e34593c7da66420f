//! Electron and helium reference scenarios.

use crate::domain::{Grid1D, PacketSpec, ParticleSpec, PotentialSpec};
use crate::error::Result;
use crate::propagator::{KickEvent, SimConfig};
use crate::units::{ev, FEMTOSECOND, NANOMETER, PICOMETER};

pub const ELECTRON_ENERGY_EV: f64 = 5.0;
pub const ELECTRON_V0_EV: f64 = 10.0;
pub const ELECTRON_X_I: f64 = -6.0 * NANOMETER;
pub const ELECTRON_SIGMA: f64 = 0.8 * NANOMETER;
pub const BARRIER_WIDTH: f64 = 1.0 * NANOMETER;
pub const ELECTRON_DT: f64 = 2.5e-18;
pub const ELECTRON_DX: f64 = 1.5 * PICOMETER;
pub const ELECTRON_T_END: f64 = 15.0 * FEMTOSECOND;
pub const ELECTRON_HALF_WIDTH: f64 = 24.0 * NANOMETER;
/// Reference kick, 1/m.
pub const ELECTRON_Q: f64 = 1e8;

pub const HELIUM_ENERGY_EV: f64 = 1e-11;
pub const HELIUM_V0_EV: f64 = 1.5e-11;
/// Helium recoil, 1/m.
pub const HELIUM_Q: f64 = -5e5;
/// Interaction duration `2 m sigma / (hbar k_bar)` that fixes the helium packet width, s.
pub const HELIUM_INTERACTION_TIME: f64 = 1e-3;

/// Number of evanescent decay lengths excluded behind a step edge.
pub const EVANESCENT_DEPTHS: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry {
    Barrier,
    Step,
}

/// Evanescent decay length `1 / sqrt(kappa0^2 - k^2)` below a step of height `v0`.
pub fn penetration_depth(particle: &ParticleSpec, v0: f64, k: f64) -> f64 {
    let kappa0 = particle.wave_number(v0);
    (kappa0 * kappa0 - k * k).sqrt().recip()
}

/// Ramp widths added behind a smoothed step edge, where the profile has
/// reached 99.75% of its height.
pub const RAMP_WIDTHS: f64 = 3.0;

/// Transmission boundary for `pot`: barrier exit, or step edge plus
/// [`EVANESCENT_DEPTHS`] decay lengths at the packet's mean wave number
/// (and [`RAMP_WIDTHS`] ramp widths for a smoothed step).
pub fn transmission_boundary(particle: &ParticleSpec, pot: &PotentialSpec, k_bar: f64) -> f64 {
    use crate::domain::PotentialShape::*;
    match pot.shape {
        Barrier { x1, .. } => x1,
        Step { v0, edge } => edge + EVANESCENT_DEPTHS * penetration_depth(particle, v0, k_bar),
        SmoothedStep { v0, edge, ramp_width } => {
            edge + RAMP_WIDTHS * ramp_width + EVANESCENT_DEPTHS * penetration_depth(particle, v0, k_bar)
        }
    }
}

/// The 5 eV electron packet of the reference scenarios.
pub fn electron_packet() -> PacketSpec {
    PacketSpec::with_mean_energy(
        &ParticleSpec::electron(),
        ELECTRON_X_I,
        ELECTRON_SIGMA,
        ev(ELECTRON_ENERGY_EV),
    )
    .expect("reference packet is valid")
}

pub fn electron_potential(geometry: Geometry) -> PotentialSpec {
    let v0 = ev(ELECTRON_V0_EV);
    match geometry {
        Geometry::Barrier => PotentialSpec::barrier(v0, 0.0, BARRIER_WIDTH),
        Geometry::Step => PotentialSpec::step(v0, 0.0),
    }
    .expect("reference potential is valid")
}

/// Centroid arrival time at `x = 0`, `m |x_i| / (hbar k_bar)`.
pub fn electron_arrival_time() -> f64 {
    electron_packet().arrival_time(&ParticleSpec::electron(), 0.0)
}

/// The reference electron run: 5 eV packet, 10 eV barrier or step, no kick.
pub fn electron_config(geometry: Geometry) -> SimConfig {
    let particle = ParticleSpec::electron();
    let packet = electron_packet();
    let potential = electron_potential(geometry);
    SimConfig {
        particle,
        grid: Grid1D::with_spacing(-ELECTRON_HALF_WIDTH, ELECTRON_HALF_WIDTH, ELECTRON_DX)
            .expect("reference grid is valid"),
        potential,
        packet,
        dt: ELECTRON_DT,
        t_end: ELECTRON_T_END,
        kicks: Vec::new(),
        x_transmission: transmission_boundary(&particle, &potential, packet.k_bar),
        snapshot_times: Vec::new(),
        record_every: 20,
    }
}

/// Reference run with one instantaneous kick.
pub fn electron_kicked(geometry: Geometry, q: f64, time: f64) -> SimConfig {
    let mut config = electron_config(geometry);
    config.kicks = vec![KickEvent::instant(q, time)];
    config
}

/// Same physical setup with `dt` and `dx` divided by `factor`.
pub fn refined(config: &SimConfig, factor: usize) -> SimConfig {
    SimConfig {
        grid: config.grid.refined(factor),
        dt: config.dt / factor as f64,
        record_every: config.record_every * factor,
        ..config.clone()
    }
}

/// Helium packet of mean energy [`HELIUM_ENERGY_EV`] whose spectral width
/// is `rel_delta_k` times its mean wave number.
pub fn helium_packet(rel_delta_k: f64) -> Result<PacketSpec> {
    let he = ParticleSpec::helium4();
    let energy = ev(HELIUM_ENERGY_EV);
    if !(rel_delta_k > 0.0 && rel_delta_k < 1.0) {
        return Err(crate::Error::invalid("rel_delta_k", "must lie in (0, 1)"));
    }
    let k0 = he.wave_number(energy);
    let k_bar = k0 / (1.0 + rel_delta_k * rel_delta_k).sqrt();
    let sigma = 0.5 / (rel_delta_k * k_bar);
    PacketSpec::with_mean_energy(&he, -HELIUM_START_WIDTHS * sigma, sigma, energy)
}

/// Spectral width, relative to `k_bar`, of the helium packet whose
/// interaction duration `2 m sigma / (hbar k_bar)` is [`HELIUM_INTERACTION_TIME`].
pub fn helium_interaction_delta_k() -> f64 {
    let he = ParticleSpec::helium4();
    let energy = ev(HELIUM_ENERGY_EV);
    let mut k_bar = he.wave_number(energy);
    let mut rel = 0.05;
    for _ in 0..50 {
        let sigma = HELIUM_INTERACTION_TIME * he.hbar * k_bar / (2.0 * he.mass);
        let dk = 0.5 / sigma;
        rel = dk / k_bar;
        k_bar = (he.wave_number(energy).powi(2) - dk * dk).sqrt();
    }
    rel
}

/// Initial centroid of the helium packet, in packet widths left of the step.
pub const HELIUM_START_WIDTHS: f64 = 7.5;
/// Half-width of the helium grid, in packet widths.
pub const HELIUM_HALF_WIDTHS: f64 = 32.0;

/// Helium run with the electron geometry expressed in packet widths: the
/// grid spans [`HELIUM_HALF_WIDTHS`] widths each side, `k_bar dx` and the phase advance per step
/// match the electron reference, and the run lasts as many arrival times.
pub fn helium_config(rel_delta_k: f64) -> Result<SimConfig> {
    let he = ParticleSpec::helium4();
    let packet = helium_packet(rel_delta_k)?;
    let potential = PotentialSpec::step(ev(HELIUM_V0_EV), 0.0)?;
    let electron = electron_packet();
    let e = ParticleSpec::electron();
    let sigma = packet.sigma;
    let half_width = HELIUM_HALF_WIDTHS * sigma;
    let dx = electron.k_bar * ELECTRON_DX / packet.k_bar;
    let phase_per_step = electron.mean_energy(&e) * ELECTRON_DT / e.hbar;
    let dt = phase_per_step * he.hbar / packet.mean_energy(&he);
    let t_end = ELECTRON_T_END / electron_arrival_time() * packet.arrival_time(&he, 0.0);
    Ok(SimConfig {
        particle: he,
        grid: Grid1D::with_spacing(-half_width, half_width, dx)?,
        potential,
        packet,
        dt,
        t_end,
        kicks: Vec::new(),
        x_transmission: transmission_boundary(&he, &potential, packet.k_bar),
        snapshot_times: Vec::new(),
        record_every: 20,
    })
}
