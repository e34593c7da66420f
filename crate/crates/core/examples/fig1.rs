//! The four reference runs: barrier without kick, barrier kicked before the
//! interaction, barrier kicked at the arrival time t0, and step kicked at t0.
//!
//! ```text
//! cargo run --release --example fig1
//! ```

use qevap::experiments::run_fig1_scenarios;

fn main() -> qevap::Result<()> {
    let report = run_fig1_scenarios(1)?;
    println!("t0 = {:.3} fs", report.t0 * 1e15);
    println!("{:<18} {:>12} {:>10} {:>10}", "scenario", "T", "residual", "drift");
    for run in &report.runs {
        let s = run.summary();
        println!("{:<18} {:>12.4e} {:>10.2e} {:>10.1e}", s.label, s.transmission, s.plateau_residual, s.norm_drift);
    }
    let barrier = report.get("barrier_kick_t0").unwrap().transmission();
    let step = report.get("step_kick_t0").unwrap().transmission();
    println!("step / barrier at t0: {:.3}", step / barrier);
    for snap in &report.get("step_kick_t0").unwrap().snapshots {
        let peak = snap.psi.density().fold(0.0, f64::max);
        println!("snapshot t = {:5.2} fs, peak density {:.3e} 1/m", snap.t * 1e15, peak);
    }
    Ok(())
}
