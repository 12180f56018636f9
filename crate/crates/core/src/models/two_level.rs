use std::f64::consts::PI;

use nalgebra::Matrix2;
use serde::{Deserialize, Serialize};

use crate::{Error, Result, C64};

fn pauli(z: f64, x: f64) -> Matrix2<C64> {
    Matrix2::new(
        C64::new(z, 0.0),
        C64::new(x, 0.0),
        C64::new(x, 0.0),
        C64::new(-z, 0.0),
    )
}

/// Landau-Zener crossing `H = Δσx + gσz` with minimum gap `2Δ` at `g = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LandauZener {
    pub delta: f64,
}

impl LandauZener {
    pub fn new(delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::invalid(format!("Δ must be positive, got {delta}")));
        }
        Ok(Self { delta })
    }
}

pub fn lz_hamiltonian(g: f64, delta: f64) -> Matrix2<C64> {
    pauli(g, delta)
}

/// `Γ = 2√(g² + Δ²)`.
pub fn lz_gap(g: f64, delta: f64) -> f64 {
    2.0 * g.hypot(delta)
}

/// One effective two-level problem: either the Landau-Zener model or a single
/// momentum pair `(k, −k)` of the Ising chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TwoLevelSystem {
    LandauZener { delta: f64 },
    Momentum { k: f64, omega: f64 },
}

impl TwoLevelSystem {
    /// Coefficients `(z, x)` of `H = z σz + x σx`.
    pub fn bloch(&self, g: f64) -> (f64, f64) {
        match *self {
            TwoLevelSystem::LandauZener { delta } => (g, delta),
            TwoLevelSystem::Momentum { k, omega } => {
                (2.0 * omega * (g - k.cos()), 2.0 * omega * k.sin())
            }
        }
    }

    pub fn hamiltonian(&self, g: f64) -> Matrix2<C64> {
        let (z, x) = self.bloch(g);
        pauli(z, x)
    }

    pub fn gap(&self, g: f64) -> f64 {
        match *self {
            TwoLevelSystem::LandauZener { delta } => lz_gap(g, delta),
            TwoLevelSystem::Momentum { k, omega } => {
                4.0 * omega * (g * g - 2.0 * g * k.cos() + 1.0).sqrt()
            }
        }
    }

    /// Frobenius norm squared of `∂H/∂g`.
    pub fn drive_weight(&self) -> f64 {
        match *self {
            TwoLevelSystem::LandauZener { .. } => 2.0,
            TwoLevelSystem::Momentum { omega, .. } => 8.0 * omega * omega,
        }
    }
}

/// Periodic transverse-field Ising chain
/// `H = −ω Σᵢ [g σᵢˣ + σᵢᶻ σᵢ₊₁ᶻ]` with an even number of sites.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsingChain {
    pub n: usize,
    pub omega: f64,
}

impl IsingChain {
    pub fn new(n: usize, omega: f64) -> Result<Self> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "chain length must be even and ≥ 4, got {n}"
            )));
        }
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::invalid(format!("ω must be positive, got {omega}")));
        }
        Ok(Self { n, omega })
    }

    /// Momenta `k_m = (2m − 1)π/N`, `m = 1..=N/2`, lowest first.
    pub fn momenta(&self) -> Vec<f64> {
        (1..=self.n / 2)
            .map(|m| (2 * m - 1) as f64 * PI / self.n as f64)
            .collect()
    }

    pub fn subspaces(&self) -> Vec<TwoLevelSystem> {
        self.momenta()
            .into_iter()
            .map(|k| TwoLevelSystem::Momentum {
                k,
                omega: self.omega,
            })
            .collect()
    }
}

/// The `N/2` decoupled momentum subspaces of `chain`.
pub fn tfim_subspaces(chain: &IsingChain) -> Vec<TwoLevelSystem> {
    chain.subspaces()
}

/// `H_k = 2ω[(g − cos k)σz + sin k σx]` in the `{|0⟩, |k, −k⟩}` pair basis.
pub fn subspace_hamiltonian(k: f64, g: f64, omega: f64) -> Matrix2<C64> {
    TwoLevelSystem::Momentum { k, omega }.hamiltonian(g)
}
