use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Geometry of the static potential profile, before any drift is applied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PotentialShape {
    /// `V0` on `[x0, x1]`, zero elsewhere.
    Barrier { v0: f64, x0: f64, x1: f64 },
    /// `V0 H(x - edge)`.
    Step { v0: f64, edge: f64 },
    /// `V0 (1 + tanh((x - edge) / w)) / 2`; `w = 0` is the sharp step.
    SmoothedStep { v0: f64, edge: f64, ramp_width: f64 },
}

/// A potential profile that may translate rigidly with constant velocity
/// once `motion_start` has passed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialSpec {
    pub shape: PotentialShape,
    /// Drift velocity, m/s.
    pub velocity: f64,
    /// Time at which the drift starts, s.
    pub motion_start: f64,
}

impl PotentialSpec {
    pub fn barrier(v0: f64, x0: f64, x1: f64) -> Result<Self> {
        Self::new(PotentialShape::Barrier { v0, x0, x1 })
    }

    pub fn step(v0: f64, edge: f64) -> Result<Self> {
        Self::new(PotentialShape::Step { v0, edge })
    }

    pub fn smoothed_step(v0: f64, edge: f64, ramp_width: f64) -> Result<Self> {
        Self::new(PotentialShape::SmoothedStep {
            v0,
            edge,
            ramp_width,
        })
    }

    pub fn new(shape: PotentialShape) -> Result<Self> {
        let spec = PotentialSpec {
            shape,
            velocity: 0.0,
            motion_start: 0.0,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Sets the potential in motion with velocity `v` from time `start` onward.
    pub fn moving(mut self, velocity: f64, start: f64) -> Self {
        self.velocity = velocity;
        self.motion_start = start;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let v0 = self.height();
        if !(v0.is_finite() && v0 > 0.0) {
            return Err(Error::invalid("potential.v0", format!("must be > 0, got {v0:e}")));
        }
        match self.shape {
            PotentialShape::Barrier { x0, x1, .. } if !(x0 < x1) => Err(Error::invalid(
                "potential.x1",
                format!("barrier needs x0 < x1, got [{x0:e}, {x1:e}]"),
            )),
            PotentialShape::SmoothedStep { ramp_width, .. } if !(ramp_width >= 0.0) => Err(
                Error::invalid("potential.ramp_width", "must be >= 0"),
            ),
            _ if !self.velocity.is_finite() => {
                Err(Error::invalid("potential.velocity", "must be finite"))
            }
            _ => Ok(()),
        }
    }

    pub fn height(&self) -> f64 {
        match self.shape {
            PotentialShape::Barrier { v0, .. }
            | PotentialShape::Step { v0, .. }
            | PotentialShape::SmoothedStep { v0, .. } => v0,
        }
    }

    pub fn is_static(&self) -> bool {
        self.velocity == 0.0
    }

    /// Rigid displacement of the profile at time `t`.
    pub fn displacement(&self, t: f64) -> f64 {
        self.velocity * (t - self.motion_start).max(0.0)
    }

    /// Position of the side the particle arrives on (barrier entrance or step edge).
    pub fn leading_edge(&self, t: f64) -> f64 {
        self.displacement(t)
            + match self.shape {
                PotentialShape::Barrier { x0, .. } => x0,
                PotentialShape::Step { edge, .. } | PotentialShape::SmoothedStep { edge, .. } => {
                    edge
                }
            }
    }

    /// Position where the potential region ends (barrier exit or step edge).
    pub fn trailing_edge(&self, t: f64) -> f64 {
        self.displacement(t)
            + match self.shape {
                PotentialShape::Barrier { x1, .. } => x1,
                PotentialShape::Step { edge, .. } | PotentialShape::SmoothedStep { edge, .. } => {
                    edge
                }
            }
    }

    /// Pointwise value `V(x, t)`.
    pub fn at(&self, x: f64, t: f64) -> f64 {
        let x = x - self.displacement(t);
        match self.shape {
            PotentialShape::Barrier { v0, x0, x1 } => {
                if x0 <= x && x <= x1 {
                    v0
                } else {
                    0.0
                }
            }
            PotentialShape::Step { v0, edge } => heaviside(v0, x - edge),
            PotentialShape::SmoothedStep {
                v0,
                edge,
                ramp_width,
            } => {
                if ramp_width == 0.0 {
                    heaviside(v0, x - edge)
                } else {
                    0.5 * v0 * (1.0 + ((x - edge) / ramp_width).tanh())
                }
            }
        }
    }

    /// Average of `V(., t)` over the cell `[x - dx/2, x + dx/2]`.
    ///
    /// Used by the propagator so that edge positions enter the discrete
    /// Hamiltonian continuously instead of snapping to grid points.
    pub fn cell_average(&self, x: f64, dx: f64, t: f64) -> f64 {
        let x = x - self.displacement(t);
        let (lo, hi) = (x - 0.5 * dx, x + 0.5 * dx);
        let overlap = |a: f64, b: f64| (hi.min(b) - lo.max(a)).max(0.0) / dx;
        match self.shape {
            PotentialShape::Barrier { v0, x0, x1 } => v0 * overlap(x0, x1),
            PotentialShape::Step { v0, edge } => v0 * overlap(edge, f64::INFINITY),
            PotentialShape::SmoothedStep {
                v0,
                edge,
                ramp_width,
            } => {
                if ramp_width == 0.0 {
                    v0 * overlap(edge, f64::INFINITY)
                } else {
                    let w = ramp_width;
                    let integral = w * (log_cosh((hi - edge) / w) - log_cosh((lo - edge) / w));
                    0.5 * v0 * (1.0 + integral / dx)
                }
            }
        }
    }
}

/// Free-function form of [`PotentialSpec::at`].
pub fn potential_at(pot: &PotentialSpec, x: f64, t: f64) -> f64 {
    pot.at(x, t)
}

fn heaviside(v0: f64, u: f64) -> f64 {
    if u >= 0.0 {
        v0
    } else {
        0.0
    }
}

fn log_cosh(z: f64) -> f64 {
    let a = z.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::{ev, FEMTOSECOND, PICOMETER};

    #[test]
    fn step_is_heaviside() {
        let step = PotentialSpec::step(ev(10.0), 0.0).unwrap();
        assert_eq!(step.at(-PICOMETER, 0.0), 0.0);
        assert_eq!(step.at(PICOMETER, 0.0), ev(10.0));
    }

    #[test]
    fn moving_step_translates() {
        let step = PotentialSpec::step(ev(10.0), 0.0).unwrap().moving(1000.0, 0.0);
        let t = FEMTOSECOND;
        assert!((step.leading_edge(t) - 1e-12).abs() < 1e-24);
        assert_eq!(step.at(0.999e-12, t), 0.0);
        assert_eq!(step.at(1.001e-12, t), ev(10.0));
    }

    #[test]
    fn smoothed_step_limits() {
        let v0 = ev(10.0);
        let sharp = PotentialSpec::step(v0, 0.0).unwrap();
        let zero = PotentialSpec::smoothed_step(v0, 0.0, 0.0).unwrap();
        let tiny = PotentialSpec::smoothed_step(v0, 0.0, 1e-15).unwrap();
        for &x in &[-3e-12, -1e-12, 1e-12, 2e-12, 1e-9] {
            assert_eq!(zero.at(x, 0.0), sharp.at(x, 0.0));
            assert!((tiny.at(x, 0.0) - sharp.at(x, 0.0)).abs() < 1e-12 * v0);
        }
        let dx = 1.5e-12;
        for &x in &[-3e-12, -0.5e-12, 0.2e-12, 4e-12] {
            assert_eq!(zero.cell_average(x, dx, 0.0), sharp.cell_average(x, dx, 0.0));
        }
    }

    #[test]
    fn cell_average_matches_quadrature() {
        let pot = PotentialSpec::smoothed_step(1.0, 0.3, 0.7).unwrap();
        let dx = 0.9;
        for &x in &[-2.0, -0.1, 0.3, 0.75, 2.5] {
            let n = 20_000;
            let h = dx / n as f64;
            let brute: f64 = (0..n)
                .map(|i| pot.at(x - 0.5 * dx + (i as f64 + 0.5) * h, 0.0))
                .sum::<f64>()
                * h
                / dx;
            assert!((pot.cell_average(x, dx, 0.0) - brute).abs() < 1e-8);
        }
        let barrier = PotentialSpec::barrier(2.0, 0.0, 1.0).unwrap();
        assert!((barrier.cell_average(0.1, 0.4, 0.0) - 2.0 * 0.3 / 0.4).abs() < 1e-14);
        assert!((barrier.cell_average(1.0, 0.4, 0.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_geometry() {
        assert!(PotentialSpec::barrier(1.0, 1.0, 0.0).is_err());
        assert!(PotentialSpec::step(-1.0, 0.0).is_err());
        assert!(PotentialSpec::smoothed_step(1.0, 0.0, -1.0).is_err());
    }
}
