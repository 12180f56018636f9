//! Single-step propagators `exp(−i H δt)`.

use nalgebra::{DMatrix, Matrix2};

use crate::models::BandedHamiltonian;
use crate::numerics::bessel_j_sequence;
use crate::C64;

const I: C64 = C64::new(0.0, 1.0);

/// `exp(−i δt (z σz + x σx))` as a matrix.
pub fn two_level_propagator(z: f64, x: f64, dt: f64) -> Matrix2<C64> {
    let r = z.hypot(x);
    if r == 0.0 {
        return Matrix2::identity();
    }
    let (sin, cos) = (r * dt).sin_cos();
    let k = sin / r;
    Matrix2::new(
        C64::new(cos, -k * z),
        C64::new(0.0, -k * x),
        C64::new(0.0, -k * x),
        C64::new(cos, k * z),
    )
}

/// Apply `exp(−i δt (z σz + x σx))` in place.
#[inline]
pub(crate) fn two_level_step(z: f64, x: f64, dt: f64, psi: &mut [C64; 2]) {
    let r = z.hypot(x);
    if r == 0.0 {
        return;
    }
    let (sin, cos) = (r * dt).sin_cos();
    let k = sin / r;
    let [a, b] = *psi;
    let diag_a = C64::new(cos, -k * z);
    let diag_b = C64::new(cos, k * z);
    let off = C64::new(0.0, -k * x);
    psi[0] = diag_a * a + off * b;
    psi[1] = off * a + diag_b * b;
}

/// Chebyshev expansion of `exp(−i H δt)` applied to a vector, for a banded
/// real-symmetric `H`. Scratch buffers are reused across steps.
#[derive(Debug, Default)]
pub struct ChebyshevStepper {
    prev: Vec<C64>,
    curr: Vec<C64>,
    next: Vec<C64>,
    acc: Vec<C64>,
}

impl ChebyshevStepper {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn step(&mut self, h: &BandedHamiltonian, dt: f64, psi: &mut [C64]) {
        let n = psi.len();
        let (lo, hi) = h.spectral_bounds();
        let center = 0.5 * (lo + hi);
        let radius = (0.5 * (hi - lo)).max(1e-300) * (1.0 + 1e-12);
        let x = radius * dt;
        let order = (x + 12.0 * x.cbrt() + 20.0).ceil() as usize;
        let coeffs = bessel_j_sequence(x, order);
        let cutoff = coeffs
            .iter()
            .enumerate()
            .position(|(k, c)| k as f64 > x && c.abs() < 1e-17)
            .unwrap_or(coeffs.len());

        for buf in [
            &mut self.prev,
            &mut self.curr,
            &mut self.next,
            &mut self.acc,
        ] {
            buf.clear();
            buf.resize(n, C64::new(0.0, 0.0));
        }
        // T0 ψ and T1 ψ with H̃ = (H − c)/r
        self.prev.copy_from_slice(psi);
        h.apply(&self.prev, &mut self.curr);
        for (c, p) in self.curr.iter_mut().zip(&self.prev) {
            *c = (*c - p * center) / radius;
        }
        let mut phase = -I;
        for i in 0..n {
            self.acc[i] = self.prev[i] * coeffs[0] + self.curr[i] * (phase * 2.0 * coeffs[1]);
        }
        for &jk in coeffs.iter().take(cutoff).skip(2) {
            phase *= -I;
            h.apply(&self.curr, &mut self.next);
            let w = phase * 2.0 * jk;
            for i in 0..n {
                let t = 2.0 * (self.next[i] - self.curr[i] * center) / radius - self.prev[i];
                self.next[i] = t;
                self.acc[i] += t * w;
            }
            std::mem::swap(&mut self.prev, &mut self.curr);
            std::mem::swap(&mut self.curr, &mut self.next);
        }
        let global = C64::from_polar(1.0, -center * dt);
        for (p, a) in psi.iter_mut().zip(&self.acc) {
            *p = a * global;
        }
    }
}

/// Exact `exp(−i H δt) ψ` through a full eigendecomposition of a real
/// symmetric `H`.
pub fn dense_eigen_step(h: &DMatrix<f64>, dt: f64, psi: &mut [C64]) {
    let eig = h.clone().symmetric_eigen();
    let v = &eig.eigenvectors;
    let n = psi.len();
    let mut coeff = vec![C64::new(0.0, 0.0); n];
    for (k, c) in coeff.iter_mut().enumerate() {
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            acc += psi[i] * v[(i, k)];
        }
        *c = acc * C64::from_polar(1.0, -eig.eigenvalues[k] * dt);
    }
    for (i, p) in psi.iter_mut().enumerate() {
        *p = (0..n).map(|k| coeff[k] * v[(i, k)]).sum();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::FullyConnectedModel;

    #[test]
    fn two_level_propagator_is_unitary() {
        for &(z, x, dt) in &[
            (1.0, 0.5, 0.1),
            (-20.0, 1.0, 0.37),
            (0.0, 3.0, 2.0),
            (5.0, 0.0, 1e-9),
        ] {
            let u = two_level_propagator(z, x, dt);
            let defect = (u.adjoint() * u - Matrix2::identity()).norm();
            assert!(defect < 1e-12, "{defect}");
        }
    }

    #[test]
    fn two_level_matches_dense_exponential() {
        let (z, x, dt) = (0.8, -1.7, 0.45);
        let h = DMatrix::from_row_slice(2, 2, &[z, x, x, -z]);
        let mut a = [C64::new(0.6, 0.0), C64::new(0.0, 0.8)];
        let mut b = a;
        two_level_step(z, x, dt, &mut a);
        dense_eigen_step(&h, dt, &mut b);
        assert!((a[0] - b[0]).norm() < 1e-14 && (a[1] - b[1]).norm() < 1e-14);
    }

    #[test]
    fn chebyshev_matches_dense_eigen() {
        let m = FullyConnectedModel::with_n_max(10.0, 1.0, 80).unwrap();
        let h = m.banded(0.85);
        let dense = h.to_dense();
        let (_, gs) = m.ground_state(0.3).unwrap();
        let mut stepper = ChebyshevStepper::new();
        for &dt in &[1e-6, 2.5e-3, 0.05, 0.5] {
            let mut a: Vec<C64> = gs.amplitudes().iter().copied().collect();
            let mut b = a.clone();
            stepper.step(&h, dt, &mut a);
            dense_eigen_step(&dense, dt, &mut b);
            let err: f64 = a
                .iter()
                .zip(&b)
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max);
            assert!(err < 1e-12, "dt={dt}: {err}");
            let norm: f64 = a.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-13);
        }
    }
}
