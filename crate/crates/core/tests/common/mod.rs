//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use minaction::C64;
use nalgebra::{DMatrix, DVector, SymmetricEigen};

/// Periodic chain `H = −ω Σ [g σˣᵢ + σᶻᵢ σᶻᵢ₊₁]` on the full `2^N` space.
pub fn chain_hamiltonian(n: usize, omega: f64, g: f64) -> DMatrix<f64> {
    let dim = 1usize << n;
    let mut h = DMatrix::zeros(dim, dim);
    for b in 0..dim {
        let spin = |i: usize| if b >> (i % n) & 1 == 0 { 1.0 } else { -1.0 };
        h[(b, b)] = -omega * (0..n).map(|i| spin(i) * spin(i + 1)).sum::<f64>();
        for i in 0..n {
            h[(b ^ (1 << i), b)] -= omega * g;
        }
    }
    h
}

pub fn lowest_eigenvector(h: &DMatrix<f64>) -> DVector<C64> {
    let eig = SymmetricEigen::new(h.clone());
    let i = eig.eigenvalues.imin();
    eig.eigenvectors.column(i).map(|x| C64::new(x, 0.0))
}

/// Apply `exp(−i h dt)` through a full eigendecomposition.
pub fn exp_step(h: &DMatrix<f64>, dt: f64, psi: &DVector<C64>) -> DVector<C64> {
    let eig = SymmetricEigen::new(h.clone());
    let v = eig.eigenvectors.map(|x| C64::new(x, 0.0));
    let mut c = v.adjoint() * psi;
    for (ci, e) in c.iter_mut().zip(eig.eigenvalues.iter()) {
        *ci *= C64::from_polar(1.0, -e * dt);
    }
    v * c
}

/// Midpoint-rule evolution of the whole chain under `g(s)`, returning the
/// fidelity with the ground state at `g(1)`.
pub fn chain_fidelity(n: usize, omega: f64, g: impl Fn(f64) -> f64, tau: f64, steps: usize) -> f64 {
    let mut psi = lowest_eigenvector(&chain_hamiltonian(n, omega, g(0.0)));
    let dt = tau / steps as f64;
    for i in 0..steps {
        let s = (i as f64 + 0.5) / steps as f64;
        psi = exp_step(&chain_hamiltonian(n, omega, g(s)), dt, &psi);
    }
    let target = lowest_eigenvector(&chain_hamiltonian(n, omega, g(1.0)));
    target.dotc(&psi).norm_sqr()
}

/// Eigenvalue splitting of a 2×2 Hermitian matrix, from its characteristic
/// polynomial.
pub fn splitting(h: &nalgebra::Matrix2<C64>) -> f64 {
    let tr = (h[(0, 0)] + h[(1, 1)]).re;
    let det = (h[(0, 0)] * h[(1, 1)] - h[(0, 1)] * h[(1, 0)]).re;
    (tr * tr - 4.0 * det).max(0.0).sqrt()
}
