//! Ramp profiles `G(s)`, `s = t/τ ∈ [0, 1]`, and the adiabatic action that
//! ranks them.
//!
//! Closed-form minimal-action ramps exist for the three built-in models; for
//! any other [`ActionModel`] [`solve_euler_lagrange`] integrates the
//! first integral of the Euler–Lagrange equation numerically.

mod action;
mod euler_lagrange;
mod profile;

pub use action::{evaluate_action, ActionModel};
pub use euler_lagrange::solve_euler_lagrange;
pub use profile::{
    constant_ramp, family_optimal_ramp, family_ramp_between, fc_optimal_ramp, garbe_ramp,
    ising_optimal_ramp, linear_ramp, lz_optimal_ramp, RampKind, RampProfile, RampSpec,
};
