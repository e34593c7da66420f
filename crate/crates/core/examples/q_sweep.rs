//! Transmission against kick strength for the three kick scenarios.
//!
//! ```text
//! cargo run --release --example q_sweep -- b
//! ```

use qevap::experiments::figures::{default_q_values, quadratic_law, sign_ratios};
use qevap::experiments::scenarios::electron_packet;
use qevap::experiments::{sweep_q, Fig3Case};

fn main() -> qevap::Result<()> {
    let case = match std::env::args().nth(1).as_deref() {
        Some("a") => Fig3Case::A,
        Some("c") => Fig3Case::C,
        _ => Fig3Case::B,
    };
    let k_bar = electron_packet().k_bar;
    let points = sweep_q(case, default_q_values(), 1)?;
    let series: Vec<(f64, f64)> = points.iter().map(|p| (p.value, p.result.transmission)).collect();
    println!("case ({})", case.label());
    for (q, t) in &series {
        println!("q/k_bar = {:+.4}   T = {:.4e}", q / k_bar, t);
    }
    for (q, r) in sign_ratios(&series) {
        println!("T(q)/T(-q) at q/k_bar = {:.4}: {:.4}", q / k_bar, r);
    }
    if case != Fig3Case::A {
        let fit = quadratic_law(&series, 0.02 * k_bar)?;
        println!("T ~ alpha q^2 with alpha = {:.4e} m^2, worst deviation {:.1}%", fit.alpha, 100.0 * fit.max_deviation);
    }
    Ok(())
}
