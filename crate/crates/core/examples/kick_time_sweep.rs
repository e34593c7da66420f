//! Transmission past the step against the time of the kick, with the
//! Gaussian fit around the peak.

use qevap::experiments::figures::{default_kick_times, kick_time_spec};
use qevap::experiments::sweep_kick_time;

fn main() -> qevap::Result<()> {
    let parallelism = std::thread::available_parallelism().map_or(1, |n| n.get());
    let sweep = sweep_kick_time(&kick_time_spec(default_kick_times(), parallelism))?;
    for (t, y) in sweep.series() {
        println!("t_kick = {:6.3} fs   T = {:.4e}   fit = {:.4e}", t * 1e15, y, sweep.fit.eval(t));
    }
    let fit = sweep.fit;
    println!(
        "T_max = {:.3e}, t0 = {:.3} fs, 2 dt = {:.3} fs, log10 rms residual = {:.3} over {} points",
        fit.peak,
        fit.t0 * 1e15,
        2.0 * fit.delta_t * 1e15,
        fit.rms_residual,
        fit.points_used
    );
    Ok(())
}
