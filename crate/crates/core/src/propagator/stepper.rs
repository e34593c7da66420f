use num_complex::Complex64;

use super::tridiag::SymmetricTridiagonalLu;
use crate::domain::{Grid1D, ParticleSpec, PotentialSpec, WaveFunction};
use crate::error::{Error, Result};

/// Crank-Nicolson integrator for `i hbar dpsi/dt = -(hbar^2/2m) psi'' + V(x, t) psi`
/// with a 3-point Laplacian and `psi = 0` on both boundary samples.
///
/// The implicit system couples the interior points only. For a static
/// potential the LU factors are computed once and reused.
#[derive(Debug, Clone)]
pub struct CrankNicolson {
    grid: Grid1D,
    particle: ParticleSpec,
    potential: PotentialSpec,
    dt: f64,
    /// `dt/(2 hbar) * H_jj` for the interior points at the last factorization time.
    half_diag: Vec<f64>,
    /// `dt/(2 hbar) * hbar^2/(2 m dx^2)`.
    coupling: f64,
    lu: Option<SymmetricTridiagonalLu>,
    scratch: Vec<Complex64>,
}

impl CrankNicolson {
    pub fn new(grid: Grid1D, particle: ParticleSpec, potential: PotentialSpec, dt: f64) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::invalid("dt", "must be > 0"));
        }
        let dx = grid.dx();
        let lambda = dt / (2.0 * particle.hbar);
        let coupling = lambda * particle.kinetic_prefactor() / (dx * dx);
        let interior = grid.len() - 2;
        Ok(CrankNicolson {
            grid,
            particle,
            potential,
            dt,
            half_diag: vec![0.0; interior],
            coupling,
            lu: None,
            scratch: vec![Complex64::new(0.0, 0.0); interior],
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn potential(&self) -> &PotentialSpec {
        &self.potential
    }

    fn refactor(&mut self, t_mid: f64) -> Result<()> {
        let dx = self.grid.dx();
        let lambda = self.dt / (2.0 * self.particle.hbar);
        let kin = 2.0 * self.coupling;
        for (j, h) in self.half_diag.iter_mut().enumerate() {
            let x = self.grid.x(j + 1);
            *h = kin + lambda * self.potential.cell_average(x, dx, t_mid);
        }
        let off = Complex64::new(0.0, -self.coupling);
        let diag = self.half_diag.iter().map(|&h| Complex64::new(1.0, h));
        self.lu = Some(SymmetricTridiagonalLu::factor(off, diag)?);
        Ok(())
    }

    /// Advances `psi` from `t` to `t + dt`. The potential is sampled at `t + dt/2`.
    pub fn step(&mut self, psi: &mut WaveFunction, t: f64) -> Result<()> {
        debug_assert_eq!(psi.grid, self.grid);
        let t_mid = t + 0.5 * self.dt;
        let moving = !self.potential.is_static() && self.potential.displacement(t_mid + self.dt) != 0.0;
        if self.lu.is_none() || moving {
            self.refactor(t_mid)?;
        }
        let lu = self.lu.as_ref().expect("factorized above");
        let inv = lu.inv_denom();
        let gain = lu.carry();
        let upper = lu.upper();
        let s = self.coupling;
        let a = &mut psi.amplitudes;
        let n = a.len();
        let d = &mut self.scratch;

        // forward sweep with the explicit half step fused in:
        // rhs_j = (1 - i h_j) a_j + i s (a_{j-1} + a_{j+1}), and
        // d_j = (rhs_j + i s d_{j-1}) / denom_j, so only one complex fma is carried
        let mut prev = Complex64::new(0.0, 0.0);
        for j in 1..n - 1 {
            let h = self.half_diag[j - 1];
            let c = a[j];
            let nb = a[j - 1] + a[j + 1];
            let r = Complex64::new(c.re + h * c.im - s * nb.im, c.im - h * c.re + s * nb.re);
            let u = r * inv[j - 1];
            let g = gain[j - 1];
            prev = Complex64::new(
                u.re + g.re * prev.re - g.im * prev.im,
                u.im + g.re * prev.im + g.im * prev.re,
            );
            d[j - 1] = prev;
        }
        // back substitution
        let m = n - 2;
        a[m] = d[m - 1];
        for j in (1..m).rev() {
            a[j] = d[j - 1] - upper[j - 1] * a[j + 1];
        }
        a[0] = Complex64::new(0.0, 0.0);
        a[n - 1] = Complex64::new(0.0, 0.0);
        Ok(())
    }
}

/// One Crank-Nicolson step of `psi` from `t` to `t + dt`.
pub fn cn_step(
    psi: &WaveFunction,
    pot: &PotentialSpec,
    t: f64,
    dt: f64,
    particle: &ParticleSpec,
) -> Result<WaveFunction> {
    let mut stepper = CrankNicolson::new(psi.grid, *particle, *pot, dt)?;
    let mut out = psi.clone();
    stepper.step(&mut out, t)?;
    Ok(out)
}
