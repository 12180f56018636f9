//! Minimal adiabatic action control for driven quantum systems.
//!
//! The crate synthesizes ramp profiles `g(t) = G(t/τ)` that minimize the
//! adiabatic action `S = ∫ ‖∂ₜH‖² / Γ⁴ dt` for a given gap estimate `Γ(g)`,
//! and checks them by propagating the time-dependent Schrödinger equation.
//!
//! Three model systems are built in:
//!
//! * the Landau-Zener two-level crossing ([`models::LandauZener`]),
//! * the periodic transverse-field Ising chain, decomposed into its
//!   momentum subspaces ([`models::IsingChain`]),
//! * the fully connected (infinite-range) spin model in its bosonic
//!   low-energy form ([`models::FullyConnectedModel`]).
//!
//! ```
//! use minaction::ramp;
//!
//! let optimal = ramp::lz_optimal_ramp(-10.0, 1.0).unwrap();
//! let linear = ramp::linear_ramp(&ramp::RampSpec::new(-10.0, 10.0, 1.0).unwrap());
//! let model = ramp::ActionModel::landau_zener(1.0).unwrap();
//! let s_opt = ramp::evaluate_action(&model, &optimal, 1.0).unwrap();
//! let s_lin = ramp::evaluate_action(&model, &linear, 1.0).unwrap();
//! assert!(s_opt < s_lin);
//! ```
//!
//! ## Examples
//!
//! ```bash
//! cargo run --release --example ramp_profiles      # closed-form ramps G(s)
//! cargo run --release --example custom_gap         # numerical ramp for a tabulated gap
//! cargo run --release --example action_comparison  # S for every protocol and model
//! cargo run --release --example landau_zener       # fidelity vs τ, LZ formula
//! cargo run --release --example ising_chain        # peaks near the light-cone time
//! cargo run --release --example fully_connected    # bosonic model, three protocols
//! cargo run --release --example sweep_config       # JSON spec → CSV + sidecar
//! ```
//!
//! Units: `ħ = 1`, `ω = 1` unless passed explicitly, lattice spacing 1.
//! Durations are in units of `1/ω` (`1/Δ` for Landau-Zener).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod models;
pub mod numerics;
pub mod ramp;

pub use error::{Error, Result};

/// Complex scalar used for all state amplitudes.
pub type C64 = num_complex::Complex64;
