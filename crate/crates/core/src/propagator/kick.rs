use num_complex::Complex64;

use super::{CrankNicolson, KickEvent};
use crate::domain::{ParticleSpec, PotentialSpec, WaveFunction};
use crate::error::{Error, Result};

/// Multiplies `psi` pointwise by `exp(i q x)`.
pub fn apply_kick_instant(psi: &WaveFunction, q: f64) -> Result<WaveFunction> {
    let mut out = psi.clone();
    kick_in_place(&mut out, q)?;
    Ok(out)
}

pub(crate) fn kick_in_place(psi: &mut WaveFunction, q: f64) -> Result<()> {
    let nyquist = psi.grid.nyquist();
    if !(q.abs() < nyquist) {
        return Err(Error::Aliasing { q, nyquist });
    }
    if q == 0.0 {
        return Ok(());
    }
    let grid = psi.grid;
    for (j, a) in psi.amplitudes.iter_mut().enumerate() {
        *a *= Complex64::cis(q * grid.x(j));
    }
    Ok(())
}

/// Step offsets (relative to the kick start) and wave numbers of the
/// sub-kicks that make up `event`.
pub(crate) fn sub_kick_offsets(event: &KickEvent, dt: f64) -> Result<Vec<(usize, f64)>> {
    if event.duration == 0.0 {
        return Ok(vec![(0, event.q)]);
    }
    let n = event.substeps.max(1);
    if n > 1 && event.duration / (n as f64) < dt * (1.0 - 1e-9) {
        return Err(Error::UnresolvedKick {
            duration: event.duration,
            dt,
            substeps: n,
        });
    }
    let spacing = event.duration / n as f64;
    Ok((0..n)
        .map(|j| {
            let offset = ((j as f64 + 0.5) * spacing / dt).round() as usize;
            (offset, event.q / n as f64)
        })
        .collect())
}

/// Momentum transfer spread over `duration`: `substeps` sub-kicks of
/// `q / substeps`, centred in equal sub-intervals, interleaved with
/// Crank-Nicolson evolution. Returns the state at `t + duration` rounded to
/// whole steps (at least the last sub-kick time).
#[allow(clippy::too_many_arguments)]
pub fn apply_kick_gradual(
    psi: &WaveFunction,
    q: f64,
    duration: f64,
    substeps: usize,
    pot: &PotentialSpec,
    t: f64,
    dt: f64,
    particle: &ParticleSpec,
) -> Result<WaveFunction> {
    if !(duration > 0.0) {
        return Err(Error::invalid("duration", "gradual kick needs duration > 0"));
    }
    let event = KickEvent::gradual(q, t, duration, substeps);
    let schedule = sub_kick_offsets(&event, dt)?;
    let total = ((duration / dt).round() as usize).max(schedule.last().map_or(0, |s| s.0));
    let mut stepper = CrankNicolson::new(psi.grid, *particle, *pot, dt)?;
    let mut out = psi.clone();
    let mut next = schedule.iter().peekable();
    for step in 0..=total {
        while let Some(&&(offset, dq)) = next.peek() {
            if offset != step {
                break;
            }
            kick_in_place(&mut out, dq)?;
            next.next();
        }
        if step < total {
            stepper.step(&mut out, t + step as f64 * dt)?;
        }
    }
    Ok(out)
}
