use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform 1D mesh including both end points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    n_points: usize,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
            return Err(Error::invalid(
                "grid.x_max",
                format!("need x_min < x_max, got [{x_min:e}, {x_max:e}]"),
            ));
        }
        if n_points < 3 {
            return Err(Error::invalid("grid.n_points", "need at least 3 points"));
        }
        Ok(Grid1D {
            x_min,
            x_max,
            n_points,
        })
    }

    /// Grid on `[x_min, x_max]` whose spacing is as close as possible to `dx`.
    pub fn with_spacing(x_min: f64, x_max: f64, dx: f64) -> Result<Self> {
        if !(dx > 0.0) {
            return Err(Error::invalid("grid.dx", "must be > 0"));
        }
        let intervals = ((x_max - x_min) / dx).round().max(2.0) as usize;
        Self::new(x_min, x_max, intervals + 1)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx()
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        let dx = self.dx();
        (0..self.n_points).map(move |i| self.x_min + i as f64 * dx)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.x_min <= x && x <= self.x_max
    }

    /// Same extent with the spacing divided by `factor`.
    pub fn refined(&self, factor: usize) -> Self {
        Grid1D {
            n_points: (self.n_points - 1) * factor + 1,
            ..*self
        }
    }

    /// Largest wave number representable without aliasing.
    pub fn nyquist(&self) -> f64 {
        std::f64::consts::PI / self.dx()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacing_is_derived() {
        let g = Grid1D::new(-24e-9, 24e-9, 32_001).unwrap();
        assert!((g.dx() - 1.5e-12).abs() < 1e-24);
        assert_eq!(g.x(0), -24e-9);
        assert!((g.x(32_000) - 24e-9).abs() < 1e-21);
        assert_eq!(g.points().len(), 32_001);
    }

    #[test]
    fn with_spacing_rounds() {
        let g = Grid1D::with_spacing(-1.0, 1.0, 0.1).unwrap();
        assert_eq!(g.len(), 21);
        assert_eq!(g.refined(2).len(), 41);
    }

    #[test]
    fn rejects_degenerate() {
        assert!(Grid1D::new(1.0, 1.0, 10).is_err());
        assert!(Grid1D::new(0.0, 1.0, 2).is_err());
    }
}
