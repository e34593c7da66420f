//! Weight of the simulated state on the supra-barrier step eigenstates just
//! after a kick at t0, and the part of it that is transmitted.

use qevap::domain::{make_gaussian_packet, ParticleSpec};
use qevap::experiments::scenarios::{electron_arrival_time, electron_config, Geometry, ELECTRON_Q, ELECTRON_V0_EV};
use qevap::observables::supra_barrier_population;
use qevap::propagator::{apply_kick_instant, propagate};
use qevap::units::ev;

fn main() -> qevap::Result<()> {
    let kappa0 = ParticleSpec::electron().wave_number(ev(ELECTRON_V0_EV));
    let mut config = electron_config(Geometry::Step);
    let initial = make_gaussian_packet(&config.grid, &config.packet)?;
    println!("initial packet: {:?}", supra_barrier_population(&initial, kappa0, 0.0)?);

    let t0 = electron_arrival_time();
    config.snapshot_times = vec![t0];
    let traj = propagate(&config)?;
    let kicked = apply_kick_instant(&traj.snapshots[0].psi, ELECTRON_Q)?;
    let p = supra_barrier_population(&kicked, kappa0, 0.0)?;
    println!("after the kick at t0: population {:.4e}, transmitted part {:.4e}", p.population, p.transmitted);
    Ok(())
}
