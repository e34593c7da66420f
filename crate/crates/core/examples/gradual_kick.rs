//! A kick spread over a finite duration against the instantaneous one.

use qevap::experiments::gradual_kick_study;
use qevap::experiments::scenarios::ELECTRON_Q;

fn main() -> qevap::Result<()> {
    for duration in [2.5e-17, 5e-17, 1e-16, 2e-16] {
        let g = gradual_kick_study(ELECTRON_Q, duration)?;
        println!(
            "duration {:.0e} s: T = {:.4e} against {:.4e} ({:+.1}%)",
            duration,
            g.gradual,
            g.instantaneous,
            100.0 * (g.gradual / g.instantaneous - 1.0)
        );
    }
    Ok(())
}
