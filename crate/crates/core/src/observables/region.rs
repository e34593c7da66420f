use crate::domain::WaveFunction;

/// Trapezoid integral of `|psi|^2` over `x > x_t`, with the cell containing
/// `x_t` split by linear interpolation of the density.
pub fn region_probability(psi: &WaveFunction, x_t: f64) -> f64 {
    let grid = &psi.grid;
    if x_t <= grid.x_min() {
        return psi.norm();
    }
    if x_t >= grid.x_max() {
        return 0.0;
    }
    let dx = grid.dx();
    let pos = (x_t - grid.x_min()) / dx;
    let i = (pos.floor() as usize).min(grid.len() - 2);
    let frac = pos - i as f64;
    let a = &psi.amplitudes;
    let (r0, r1) = (a[i].norm_sqr(), a[i + 1].norm_sqr());
    let r_cut = r0 + frac * (r1 - r0);
    let partial = 0.5 * (r_cut + r1) * (1.0 - frac) * dx;
    let n = a.len();
    let tail: f64 = a[i + 1..].iter().map(|c| c.norm_sqr()).sum::<f64>()
        - 0.5 * (r1 + a[n - 1].norm_sqr());
    partial + tail * dx
}

/// Trapezoid integral of `|psi|^2` over `x < x_r`.
pub fn left_probability(psi: &WaveFunction, x_r: f64) -> f64 {
    psi.norm() - region_probability(psi, x_r)
}
