//! Hamiltonians, gaps, ground states and timescales of the three case-study
//! systems.

mod fully_connected;
mod state;
mod two_level;

use serde::{Deserialize, Serialize};

pub use fully_connected::{
    fc_hamiltonian, vacuum, BandedHamiltonian, FcBands, FullyConnectedModel, DEFAULT_N_MAX,
};
pub(crate) use state::two_level_ground;
pub use state::{ground_state, ground_state_real, hermiticity_defect, StateVector};
pub use two_level::{
    lz_gap, lz_hamiltonian, subspace_hamiltonian, tfim_subspaces, IsingChain, LandauZener,
    TwoLevelSystem,
};

use crate::ramp::ActionModel;
use crate::{Error, Result};

/// Characteristic durations of a model: the adiabatic timescale `τ_a` and,
/// for the Ising chain, the light-cone timescale `τ_l`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timescales {
    pub tau_a: f64,
    pub tau_l: Option<f64>,
}

impl Timescales {
    /// `τ_a = 1/Δ`.
    pub fn landau_zener(delta: f64) -> Self {
        Self {
            tau_a: 1.0 / delta,
            tau_l: None,
        }
    }

    /// `τ_a = 1/(4ω sin(π/N))`, `τ_l = N/(4ω)`.
    pub fn ising(n: usize, omega: f64) -> Self {
        Self {
            tau_a: 1.0 / (4.0 * omega * (std::f64::consts::PI / n as f64).sin()),
            tau_l: Some(n as f64 / (4.0 * omega)),
        }
    }

    /// `τ_a = 1/(2ω√(1 − g_max))`.
    pub fn fully_connected(omega: f64, g_max: f64) -> Self {
        Self {
            tau_a: 1.0 / (2.0 * omega * (1.0 - g_max).sqrt()),
            tau_l: None,
        }
    }
}

/// One of the three built-in systems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelSystem {
    LandauZener(LandauZener),
    Ising(IsingChain),
    FullyConnected(FullyConnectedModel),
}

impl ModelSystem {
    pub fn name(&self) -> &'static str {
        match self {
            ModelSystem::LandauZener(_) => "lz",
            ModelSystem::Ising(_) => "ising",
            ModelSystem::FullyConnected(_) => "fc",
        }
    }

    /// Endpoints used in the reference sweeps: `−10Δ → 10Δ`, `0 → 2`,
    /// `0.1 → 0.9`.
    pub fn default_endpoints(&self) -> (f64, f64) {
        match self {
            ModelSystem::LandauZener(m) => (-10.0 * m.delta, 10.0 * m.delta),
            ModelSystem::Ising(_) => (0.0, 2.0),
            ModelSystem::FullyConnected(_) => (0.1, 0.9),
        }
    }

    /// Gap estimate that the minimal-action ramp is built from.
    pub fn action_model(&self) -> Result<ActionModel> {
        match self {
            ModelSystem::LandauZener(m) => ActionModel::landau_zener(m.delta),
            ModelSystem::Ising(c) => ActionModel::ising(c.n, c.omega),
            ModelSystem::FullyConnected(m) => ActionModel::fully_connected(m.omega),
        }
    }

    pub fn timescales(&self, g0: f64, g_tau: f64) -> Timescales {
        match self {
            ModelSystem::LandauZener(m) => Timescales::landau_zener(m.delta),
            ModelSystem::Ising(c) => Timescales::ising(c.n, c.omega),
            ModelSystem::FullyConnected(m) => Timescales::fully_connected(m.omega, g0.max(g_tau)),
        }
    }

    /// Largest instantaneous gap at coupling `g` among the relevant
    /// excitations; sets the default step count of the propagator.
    pub fn gap_scale(&self, g: f64) -> f64 {
        match self {
            ModelSystem::LandauZener(m) => lz_gap(g, m.delta),
            ModelSystem::Ising(c) => c.subspaces().iter().map(|s| s.gap(g)).fold(0.0, f64::max),
            ModelSystem::FullyConnected(m) => m
                .thermodynamic_gap(g.clamp(0.0, 1.0))
                .max(2.0 * m.omega * 0.1),
        }
    }

    pub fn params(&self) -> ModelConfig {
        match *self {
            ModelSystem::LandauZener(m) => ModelConfig::Lz { delta: m.delta },
            ModelSystem::Ising(c) => ModelConfig::Ising {
                n: c.n,
                omega: c.omega,
            },
            ModelSystem::FullyConnected(m) => ModelConfig::Fc {
                eta: m.eta,
                omega: m.omega,
                n_max: Some(m.n_max),
            },
        }
    }
}

fn one() -> f64 {
    1.0
}

/// Model parameters as they appear in JSON configuration files:
/// `{"model": "lz"|"ising"|"fc", "delta"|"N"|"eta", "omega", "n_max"?}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum ModelConfig {
    Lz {
        delta: f64,
    },
    Ising {
        #[serde(rename = "N")]
        n: usize,
        #[serde(default = "one")]
        omega: f64,
    },
    Fc {
        eta: f64,
        #[serde(default = "one")]
        omega: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n_max: Option<usize>,
    },
}

impl ModelConfig {
    pub fn build(&self) -> Result<ModelSystem> {
        Ok(match *self {
            ModelConfig::Lz { delta } => ModelSystem::LandauZener(LandauZener::new(delta)?),
            ModelConfig::Ising { n, omega } => ModelSystem::Ising(IsingChain::new(n, omega)?),
            ModelConfig::Fc { eta, omega, n_max } => ModelSystem::FullyConnected(
                FullyConnectedModel::with_n_max(eta, omega, n_max.unwrap_or(DEFAULT_N_MAX))?,
            ),
        })
    }
}

impl TryFrom<ModelConfig> for ModelSystem {
    type Error = Error;

    fn try_from(c: ModelConfig) -> Result<Self> {
        c.build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn timescale_examples() {
        assert_eq!(Timescales::landau_zener(1.0).tau_a, 1.0);
        let t = Timescales::ising(20, 1.0);
        assert_eq!(t.tau_l, Some(5.0));
        assert!((t.tau_a - 1.598_113_305_374_915).abs() < 1e-12);
        let t = Timescales::fully_connected(1.0, 0.9);
        assert!((t.tau_a - 1.581_138_830_084_19).abs() < 1e-12);
        assert_eq!(t.tau_l, None);
    }

    #[test]
    fn config_round_trip() {
        let c: ModelConfig =
            serde_json::from_str(r#"{"model": "ising", "N": 30, "omega": 1.0}"#).unwrap();
        assert_eq!(c, ModelConfig::Ising { n: 30, omega: 1.0 });
        let c: ModelConfig = serde_json::from_str(r#"{"model": "fc", "eta": 100}"#).unwrap();
        let m = c.build().unwrap();
        assert_eq!(
            m.params(),
            ModelConfig::Fc {
                eta: 100.0,
                omega: 1.0,
                n_max: Some(160)
            }
        );
        let c: ModelConfig = serde_json::from_str(r#"{"model": "lz", "delta": 1.0}"#).unwrap();
        assert_eq!(c.build().unwrap().name(), "lz");
        assert!(serde_json::from_str::<ModelConfig>(r#"{"model": "xy"}"#).is_err());
        let bad: ModelConfig = serde_json::from_str(r#"{"model": "ising", "N": 5}"#).unwrap();
        assert!(bad.build().is_err());
    }
}
