//! Kicked step with a tanh ramp: the steeper the edge, the larger the transmission.

use qevap::experiments::properties::{default_ramp_widths, electron_wavelength};
use qevap::experiments::ramp_width_sweep;

fn main() -> qevap::Result<()> {
    let lambda = electron_wavelength();
    for p in ramp_width_sweep(default_ramp_widths(), 1)? {
        println!("w = {:5.3} lambda: T = {:.4e}", p.value / lambda, p.result.transmission);
    }
    Ok(())
}
