//! Reads a run configuration (or writes the reference one), runs it and
//! prints the trajectory table.
//!
//! ```text
//! cargo run --release --example simulate_config -- my_run.cfg
//! ```

use qevap::io::table::trajectory_table;
use qevap::io::{read_config, write_config, Format};
use qevap::observables::{plateau, PLATEAU_TOLERANCE, PLATEAU_WINDOW};
use qevap::propagator::propagate;

fn main() -> qevap::Result<()> {
    let config = match std::env::args().nth(1) {
        Some(path) => read_config(path.as_ref())?,
        None => qevap::io::parse_config("")?,
    };
    print!("{}", write_config(&config));
    let traj = propagate(&config)?;
    print!("{}", trajectory_table(&traj).render(Format::Csv));
    let result = plateau(&traj, PLATEAU_WINDOW, PLATEAU_TOLERANCE);
    println!("# T = {:.4e}, plateau residual {:.2e}", result.transmission, result.plateau_residual);
    Ok(())
}
