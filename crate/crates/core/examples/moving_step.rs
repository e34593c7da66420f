//! A kick to the particle against setting the step in motion.

use qevap::experiments::moving_potential_equivalence;
use qevap::experiments::scenarios::ELECTRON_Q;

fn main() -> qevap::Result<()> {
    for q in [ELECTRON_Q, -ELECTRON_Q] {
        let g = moving_potential_equivalence(q)?;
        println!(
            "q = {:+.0e} 1/m, v = {:+.4e} m/s: kicked T = {:.4e}, moving T = {:.4e}, ratio {:.3}",
            g.q,
            g.velocity,
            g.kicked,
            g.moving,
            g.ratio()
        );
    }
    Ok(())
}
