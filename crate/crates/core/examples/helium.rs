//! Cold metastable helium on a 1.5e-11 eV step, kicked by a photon recoil.

use qevap::experiments::helium::HELIUM_SENSITIVITY;
use qevap::experiments::{helium_scenario, helium_sensitivity};
use qevap::units::to_ev;

fn main() -> qevap::Result<()> {
    let r = helium_scenario()?;
    println!("delta_k / k_bar = {:.4}", r.rel_delta_k);
    println!("grid {} points, {} steps", r.grid_points, r.steps);
    println!("T without kick {:.3e}", r.baseline);
    println!("T with kick    {:.3e} (model {:.3e})", r.kicked, r.analytic);
    println!("energy transfer {:.4e} eV", to_ev(r.energy_transfer));
    for w in &r.warnings {
        println!("warning: {w}");
    }
    if std::env::args().any(|a| a == "--sensitivity") {
        for p in helium_sensitivity(&HELIUM_SENSITIVITY)? {
            println!("delta_k / k_bar = {:.2}: T = {:.3e}, model {:?}", p.rel_delta_k, p.kicked, p.analytic);
        }
    }
    Ok(())
}
