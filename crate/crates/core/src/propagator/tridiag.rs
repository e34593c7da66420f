//! Complex tridiagonal elimination (Thomas algorithm).

use num_complex::Complex64;

use crate::error::{Error, Result};

const BREAKDOWN: f64 = 1e-300;

/// Solves `sub[i] x[i-1] + diag[i] x[i] + sup[i] x[i+1] = rhs[i]` in place.
///
/// `sub[0]` and `sup[n-1]` are ignored.
pub fn solve_tridiagonal(
    sub: &[Complex64],
    diag: &[Complex64],
    sup: &[Complex64],
    rhs: &mut [Complex64],
) -> Result<()> {
    let n = rhs.len();
    assert!(sub.len() == n && diag.len() == n && sup.len() == n, "band length mismatch");
    if n == 0 {
        return Ok(());
    }
    let mut cp = vec![Complex64::new(0.0, 0.0); n];
    let mut denom = diag[0];
    if denom.norm() < BREAKDOWN {
        return Err(Error::SolverBreakdown { row: 0 });
    }
    cp[0] = sup[0] / denom;
    rhs[0] /= denom;
    for i in 1..n {
        denom = diag[i] - sub[i] * cp[i - 1];
        if denom.norm() < BREAKDOWN {
            return Err(Error::SolverBreakdown { row: i });
        }
        cp[i] = sup[i] / denom;
        let prev = rhs[i - 1];
        rhs[i] = (rhs[i] - sub[i] * prev) / denom;
    }
    for i in (0..n - 1).rev() {
        let next = rhs[i + 1];
        rhs[i] -= cp[i] * next;
    }
    Ok(())
}

/// LU factors of a tridiagonal matrix with constant off-diagonals `off`
/// and arbitrary diagonal, kept for repeated solves.
#[derive(Debug, Clone)]
pub struct SymmetricTridiagonalLu {
    off: Complex64,
    inv_denom: Vec<Complex64>,
    carry: Vec<Complex64>,
    cp: Vec<Complex64>,
}

impl SymmetricTridiagonalLu {
    pub fn factor(off: Complex64, diag: impl ExactSizeIterator<Item = Complex64>) -> Result<Self> {
        let n = diag.len();
        let mut inv_denom = Vec::with_capacity(n);
        let mut cp = Vec::with_capacity(n);
        let mut carry = Vec::with_capacity(n);
        let mut prev_cp = Complex64::new(0.0, 0.0);
        for (row, d) in diag.enumerate() {
            let denom = d - off * prev_cp;
            if denom.norm() < BREAKDOWN {
                return Err(Error::SolverBreakdown { row });
            }
            let inv = denom.inv();
            prev_cp = off * inv;
            inv_denom.push(inv);
            carry.push(-prev_cp);
            cp.push(prev_cp);
        }
        Ok(SymmetricTridiagonalLu { off, inv_denom, carry, cp })
    }

    pub fn len(&self) -> usize {
        self.cp.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cp.is_empty()
    }

    pub fn off_diagonal(&self) -> Complex64 {
        self.off
    }

    pub(crate) fn inv_denom(&self) -> &[Complex64] {
        &self.inv_denom
    }

    /// `-off / denom_i`, the factor multiplying the previous forward-sweep value.
    pub(crate) fn carry(&self) -> &[Complex64] {
        &self.carry
    }

    pub(crate) fn upper(&self) -> &[Complex64] {
        &self.cp
    }

    pub fn solve(&self, rhs: &mut [Complex64]) {
        let n = rhs.len();
        assert_eq!(n, self.len());
        let mut prev = Complex64::new(0.0, 0.0);
        for i in 0..n {
            prev = (rhs[i] - self.off * prev) * self.inv_denom[i];
            rhs[i] = prev;
        }
        for i in (0..n.saturating_sub(1)).rev() {
            let next = rhs[i + 1];
            rhs[i] -= self.cp[i] * next;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn multiply(sub: &[Complex64], diag: &[Complex64], sup: &[Complex64], x: &[Complex64]) -> Vec<Complex64> {
        let n = x.len();
        (0..n)
            .map(|i| {
                let mut acc = diag[i] * x[i];
                if i > 0 {
                    acc += sub[i] * x[i - 1];
                }
                if i + 1 < n {
                    acc += sup[i] * x[i + 1];
                }
                acc
            })
            .collect()
    }

    proptest! {
        #[test]
        fn recovers_solution_of_dominant_system(
            vals in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0), 3..40)
        ) {
            let n = vals.len();
            let sub: Vec<_> = vals.iter().map(|v| c(v.0, v.1) * 0.4).collect();
            let sup: Vec<_> = vals.iter().map(|v| c(v.1, -v.0) * 0.4).collect();
            let diag: Vec<_> = vals.iter().map(|v| c(1.0 + v.2.abs(), v.3)).collect();
            let x: Vec<_> = (0..n).map(|i| c(i as f64 * 0.1, 1.0 - i as f64 * 0.05)).collect();
            let mut rhs = multiply(&sub, &diag, &sup, &x);
            solve_tridiagonal(&sub, &diag, &sup, &mut rhs).unwrap();
            for (a, b) in rhs.iter().zip(&x) {
                prop_assert!((a - b).norm() < 1e-10);
            }
        }

        #[test]
        fn factored_solve_matches_direct(
            diag_im in prop::collection::vec(-5.0f64..5.0, 3..40), off_im in -2.0f64..2.0
        ) {
            let n = diag_im.len();
            let off = c(0.0, off_im);
            let diag: Vec<_> = diag_im.iter().map(|&d| c(1.0, d)).collect();
            let rhs: Vec<_> = (0..n).map(|i| c((i as f64).sin(), (i as f64).cos())).collect();
            let mut direct = rhs.clone();
            solve_tridiagonal(&vec![off; n], &diag, &vec![off; n], &mut direct).unwrap();
            let lu = SymmetricTridiagonalLu::factor(off, diag.iter().copied()).unwrap();
            let mut factored = rhs;
            lu.solve(&mut factored);
            for (a, b) in factored.iter().zip(&direct) {
                prop_assert!((a - b).norm() < 1e-9 * (1.0 + b.norm()));
            }
        }
    }

    #[test]
    fn singular_pivot_is_reported() {
        let z = c(0.0, 0.0);
        let mut rhs = vec![c(1.0, 0.0); 3];
        let err = solve_tridiagonal(&[z, z, z], &[z, c(1.0, 0.0), c(1.0, 0.0)], &[z, z, z], &mut rhs);
        assert!(matches!(err, Err(Error::SolverBreakdown { row: 0 })));
    }
}
