use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::{Grid1D, PacketSpec, ParticleSpec, PotentialSpec};
use crate::error::{Error, Result};

/// Complex amplitudes sampled on a [`Grid1D`], in m^(-1/2).
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction {
    pub grid: Grid1D,
    pub amplitudes: Vec<Complex64>,
}

impl WaveFunction {
    pub fn new(grid: Grid1D, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != grid.len() {
            return Err(Error::invalid(
                "amplitudes",
                format!("{} values for {} grid points", amplitudes.len(), grid.len()),
            ));
        }
        Ok(WaveFunction { grid, amplitudes })
    }

    pub fn density(&self) -> impl Iterator<Item = f64> + '_ {
        self.amplitudes.iter().map(|a| a.norm_sqr())
    }

    /// `integral |psi|^2 dx` by the trapezoid rule.
    pub fn norm(&self) -> f64 {
        let n = self.amplitudes.len();
        let sum: f64 = self.density().sum();
        let ends = 0.5 * (self.amplitudes[0].norm_sqr() + self.amplitudes[n - 1].norm_sqr());
        (sum - ends) * self.grid.dx()
    }

    pub fn normalize(&mut self) {
        let scale = self.norm().sqrt().recip();
        for a in &mut self.amplitudes {
            *a *= scale;
        }
    }

    /// Probability in `[x_min, x_min + width]` plus `[x_max - width, x_max]`.
    pub fn edge_probability(&self, cells: usize) -> (f64, f64) {
        let dx = self.grid.dx();
        let n = self.amplitudes.len();
        let cells = cells.min(n / 2);
        let left: f64 = self.amplitudes[..=cells].iter().map(|a| a.norm_sqr()).sum();
        let right: f64 = self.amplitudes[n - 1 - cells..].iter().map(|a| a.norm_sqr()).sum();
        (left * dx, right * dx)
    }
}

/// Expectation values of a state at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpectationRecord {
    pub t: f64,
    pub norm: f64,
    pub mean_x: f64,
    pub mean_p: f64,
    pub e_kin: f64,
    pub e_pot: f64,
    pub e_tot: f64,
}

/// Normalized Gaussian `exp(-(x - x_i)^2 / (4 sigma^2)) exp(i k_bar x)` on `grid`,
/// with the two boundary samples pinned to zero.
pub fn make_gaussian_packet(grid: &Grid1D, packet: &PacketSpec) -> Result<WaveFunction> {
    let clearance = 4.0 * packet.sigma;
    if packet.x_i - grid.x_min() < clearance || grid.x_max() - packet.x_i < clearance {
        return Err(Error::PacketTooCloseToBoundary {
            centroid: packet.x_i,
            needed: clearance,
        });
    }
    if packet.sigma < 4.0 * grid.dx() {
        return Err(Error::UnderResolved {
            sigma: packet.sigma,
            dx: grid.dx(),
        });
    }
    let inv4s2 = 0.25 / (packet.sigma * packet.sigma);
    let mut amplitudes: Vec<Complex64> = grid
        .points()
        .map(|x| {
            let u = x - packet.x_i;
            Complex64::from_polar((-u * u * inv4s2).exp(), packet.k_bar * x)
        })
        .collect();
    let n = amplitudes.len();
    amplitudes[0] = Complex64::new(0.0, 0.0);
    amplitudes[n - 1] = Complex64::new(0.0, 0.0);
    let mut psi = WaveFunction {
        grid: *grid,
        amplitudes,
    };
    psi.normalize();
    Ok(psi)
}

/// Sampled momentum distribution: `density[j] = |f(k[j])|^2` with `k` ascending
/// and uniform spacing `dk`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumSpectrum {
    pub dk: f64,
    pub k: Vec<f64>,
    pub density: Vec<f64>,
}

impl MomentumSpectrum {
    /// Riemann sum of the density; equals the discrete norm by Parseval.
    pub fn total(&self) -> f64 {
        self.density.iter().sum::<f64>() * self.dk
    }

    pub fn peak(&self) -> f64 {
        let (i, _) = self
            .density
            .iter()
            .enumerate()
            .fold((0, f64::MIN), |acc, (i, &d)| if d > acc.1 { (i, d) } else { acc });
        self.k[i]
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.k.iter().copied().zip(self.density.iter().copied())
    }
}

/// Discrete Fourier transform of the amplitudes mapped to physical wave numbers.
pub fn momentum_spectrum(psi: &WaveFunction) -> MomentumSpectrum {
    let n = psi.amplitudes.len();
    let dx = psi.grid.dx();
    let mut buffer = psi.amplitudes.clone();
    FftPlanner::new().plan_fft_forward(n).process(&mut buffer);
    let dk = 2.0 * std::f64::consts::PI / (n as f64 * dx);
    let scale = dx * dx / (2.0 * std::f64::consts::PI);
    let half = n / 2;
    let mut k = Vec::with_capacity(n);
    let mut density = Vec::with_capacity(n);
    // fftshift: bins n - half .. n are the negative wave numbers
    for j in (half + (n % 2)..n).chain(0..half + (n % 2)) {
        let signed = if j >= half + (n % 2) {
            j as f64 - n as f64
        } else {
            j as f64
        };
        k.push(signed * dk);
        density.push(buffer[j].norm_sqr() * scale);
    }
    MomentumSpectrum { dk, k, density }
}

/// Norm, position, momentum and energies from second-order finite differences.
pub fn expectation_values(
    psi: &WaveFunction,
    pot: &PotentialSpec,
    particle: &ParticleSpec,
    t: f64,
) -> ExpectationRecord {
    let grid = &psi.grid;
    let dx = grid.dx();
    let a = &psi.amplitudes;
    let n = a.len();
    let zero = Complex64::new(0.0, 0.0);

    let mut mx = 0.0;
    let mut grad = 0.0;
    let mut lap = 0.0;
    let mut pot_sum = 0.0;
    for j in 0..n {
        let left = if j > 0 { a[j - 1] } else { zero };
        let right = if j + 1 < n { a[j + 1] } else { zero };
        let c = a[j].conj();
        let rho = a[j].norm_sqr();
        let x = grid.x(j);
        mx += x * rho;
        grad += (c * (right - left)).im;
        lap += (c * (right - 2.0 * a[j] + left)).re;
        pot_sum += pot.cell_average(x, dx, t) * rho;
    }
    let norm = psi.norm();
    let mean_x = mx * dx / norm;
    let mean_p = particle.hbar * 0.5 * grad / norm;
    let e_kin = -particle.kinetic_prefactor() * lap / (dx * norm);
    let e_pot = pot_sum * dx / norm;
    ExpectationRecord {
        t,
        norm,
        mean_x,
        mean_p,
        e_kin,
        e_pot,
        e_tot: e_kin + e_pot,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::{ev, NANOMETER};

    fn electron_packet_on_grid() -> (Grid1D, PacketSpec, ParticleSpec) {
        let particle = ParticleSpec::electron();
        let grid = Grid1D::new(-24.0 * NANOMETER, 24.0 * NANOMETER, 32_001).unwrap();
        let packet =
            PacketSpec::with_mean_energy(&particle, -6.0 * NANOMETER, 0.8 * NANOMETER, ev(5.0))
                .unwrap();
        (grid, packet, particle)
    }

    #[test]
    fn gaussian_is_normalized_and_centred() {
        let (grid, packet, particle) = electron_packet_on_grid();
        let psi = make_gaussian_packet(&grid, &packet).unwrap();
        assert!((psi.norm() - 1.0).abs() < 1e-12);
        let far = PotentialSpec::step(ev(10.0), 20.0 * NANOMETER).unwrap();
        let rec = expectation_values(&psi, &far, &particle, 0.0);
        assert!((rec.mean_x + 6.0 * NANOMETER).abs() < 1e-6 * NANOMETER);
        // position variance
        let var: f64 = grid
            .points()
            .zip(psi.density())
            .map(|(x, r)| (x - rec.mean_x).powi(2) * r)
            .sum::<f64>()
            * grid.dx();
        assert!((var / packet.sigma.powi(2) - 1.0).abs() < 0.01);
        assert!((packet.delta_k() - 6.25e8).abs() < 1e-3);
        assert!(!packet.is_broadband());
    }

    #[test]
    fn kinetic_energy_is_five_ev() {
        let (grid, packet, particle) = electron_packet_on_grid();
        let psi = make_gaussian_packet(&grid, &packet).unwrap();
        let far = PotentialSpec::step(ev(10.0), 20.0 * NANOMETER).unwrap();
        let rec = expectation_values(&psi, &far, &particle, 0.0);
        assert!((rec.e_kin / ev(5.0) - 1.0).abs() < 0.01);
        assert!(rec.e_pot.abs() < 1e-9 * ev(10.0));
        assert_eq!(rec.e_tot, rec.e_kin + rec.e_pot);
    }

    #[test]
    fn resting_packet_has_zero_momentum() {
        let grid = Grid1D::new(-10.0, 10.0, 2001).unwrap();
        let packet = PacketSpec::new(0.0, 1.0, 0.0).unwrap();
        let psi = make_gaussian_packet(&grid, &packet).unwrap();
        let pot = PotentialSpec::step(1.0, 100.0).unwrap();
        let particle = ParticleSpec::with_hbar(1.0, 1.0).unwrap();
        let rec = expectation_values(&psi, &pot, &particle, 0.0);
        assert!(rec.mean_p.abs() < 1e-14);
    }

    #[test]
    fn spectrum_peaks_at_mean_wave_number() {
        let (grid, packet, _) = electron_packet_on_grid();
        let psi = make_gaussian_packet(&grid, &packet).unwrap();
        let spec = momentum_spectrum(&psi);
        assert!((spec.total() - 1.0).abs() < 1e-6);
        assert!((spec.peak() - packet.k_bar).abs() <= spec.dk);
        assert!(spec.k.windows(2).all(|w| (w[1] - w[0] - spec.dk).abs() < 1e-6 * spec.dk));
    }

    #[test]
    fn boundary_and_resolution_checks() {
        let grid = Grid1D::new(-10.0, 10.0, 2001).unwrap();
        let near_edge = PacketSpec::new(-7.0, 1.0, 0.0).unwrap();
        assert!(matches!(
            make_gaussian_packet(&grid, &near_edge),
            Err(Error::PacketTooCloseToBoundary { .. })
        ));
        let narrow = PacketSpec::new(0.0, 0.03, 0.0).unwrap();
        assert!(matches!(
            make_gaussian_packet(&grid, &narrow),
            Err(Error::UnderResolved { .. })
        ));
    }
}
