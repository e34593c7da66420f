use num_complex::Complex64;

use crate::domain::{PacketSpec, ParticleSpec};
use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;

/// Half-width of the Gaussian support in units of `delta_k`.
const GAUSSIAN_REACH: f64 = 12.0;

/// Amplitude `f(k)` of a packet on the sub-barrier eigenbasis at the moment of the kick.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectralAmplitude {
    /// Free Gaussian packet started at `x_i` and evolved for `t_kick`:
    /// `f(k) = (2 sigma^2/pi)^(1/4) exp(-(k - k_bar)^2 sigma^2 - i k x_i - i hbar k^2 t_kick / 2m)`.
    Gaussian {
        k_bar: f64,
        sigma: f64,
        x_i: f64,
        t_kick: f64,
        hbar_over_m: f64,
    },
    /// Samples on a uniform, increasing `k` grid, linearly interpolated and zero outside.
    Sampled { k: Vec<f64>, f: Vec<Complex64> },
}

impl SpectralAmplitude {
    pub fn gaussian(packet: &PacketSpec, particle: &ParticleSpec, t_kick: f64) -> Self {
        SpectralAmplitude::Gaussian {
            k_bar: packet.k_bar,
            sigma: packet.sigma,
            x_i: packet.x_i,
            t_kick,
            hbar_over_m: particle.hbar / particle.mass,
        }
    }

    pub fn sampled(k: Vec<f64>, f: Vec<Complex64>) -> Result<Self> {
        if k.len() != f.len() || k.len() < 2 {
            return Err(Error::invalid("f", "need at least two samples with matching lengths"));
        }
        if k.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::invalid("k", "must be strictly increasing"));
        }
        Ok(SpectralAmplitude::Sampled { k, f })
    }

    pub fn eval(&self, k: f64) -> Complex64 {
        match self {
            SpectralAmplitude::Gaussian {
                k_bar,
                sigma,
                x_i,
                t_kick,
                hbar_over_m,
            } => {
                let norm = (2.0 * sigma * sigma / std::f64::consts::PI).powf(0.25);
                let d = (k - k_bar) * sigma;
                let phase = -k * x_i - 0.5 * hbar_over_m * k * k * t_kick;
                Complex64::from_polar(norm * (-d * d).exp(), phase)
            }
            SpectralAmplitude::Sampled { k: ks, f } => {
                let n = ks.len();
                if k < ks[0] || k > ks[n - 1] {
                    return Complex64::new(0.0, 0.0);
                }
                let i = ks.partition_point(|&v| v <= k).clamp(1, n - 1);
                let t = (k - ks[i - 1]) / (ks[i] - ks[i - 1]);
                f[i - 1] * (1.0 - t) + f[i] * t
            }
        }
    }

    /// Interval outside which `f` is negligible, clipped to `[0, upper)`.
    pub fn support(&self, upper: f64) -> (f64, f64) {
        let (a, b) = match self {
            SpectralAmplitude::Gaussian { k_bar, sigma, .. } => {
                let dk = 0.5 / sigma;
                (k_bar - GAUSSIAN_REACH * dk, k_bar + GAUSSIAN_REACH * dk)
            }
            SpectralAmplitude::Sampled { k, .. } => (k[0], k[k.len() - 1]),
        };
        (a.max(0.0), b.min(upper))
    }

    /// Typical scale on which `f` varies.
    pub fn resolution(&self) -> f64 {
        match self {
            SpectralAmplitude::Gaussian { sigma, .. } => 0.5 / sigma,
            SpectralAmplitude::Sampled { k, .. } => 8.0 * (k[1] - k[0]),
        }
    }

    /// `(int |f|^2, int k |f|^2, int k^2 |f|^2)` over `[0, upper)`.
    pub fn moments(&self, upper: f64) -> (f64, f64, f64) {
        let (a, b) = self.support(upper);
        if b <= a {
            return (0.0, 0.0, 0.0);
        }
        let gl = GaussLegendre::new(16);
        let panels = ((b - a) / (0.5 * self.resolution())).ceil().max(1.0) as usize;
        let h = (b - a) / panels as f64;
        let mut m = (0.0, 0.0, 0.0);
        for i in 0..panels {
            let lo = a + i as f64 * h;
            for (k, w) in gl.on(lo, lo + h) {
                let d = self.eval(k).norm_sqr() * w;
                m.0 += d;
                m.1 += d * k;
                m.2 += d * k * k;
            }
        }
        m
    }

    pub fn norm_sqr(&self, upper: f64) -> f64 {
        self.moments(upper).0
    }
}
