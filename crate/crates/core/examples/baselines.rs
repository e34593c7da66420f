//! Closed-form references for the unkicked barrier: plane-wave tunnelling at
//! the mean energy and the classical over-barrier fraction of the packet.

use qevap::domain::{classical_supra_barrier_probability, monochromatic_barrier_transmission, ParticleSpec};
use qevap::experiments::scenarios::{electron_packet, BARRIER_WIDTH, ELECTRON_ENERGY_EV, ELECTRON_V0_EV};
use qevap::units::ev;

fn main() -> qevap::Result<()> {
    let e = ParticleSpec::electron();
    let packet = electron_packet();
    let mono = monochromatic_barrier_transmission(ev(ELECTRON_ENERGY_EV), ev(ELECTRON_V0_EV), BARRIER_WIDTH, &e)?;
    let classical = classical_supra_barrier_probability(packet.k_bar, packet.delta_k(), ev(ELECTRON_V0_EV), &e)?;
    println!("plane wave at 5 eV through 1 nm of 10 eV: T = {mono:.4e}");
    println!("classical fraction above 10 eV: {classical:.4e}");
    Ok(())
}
