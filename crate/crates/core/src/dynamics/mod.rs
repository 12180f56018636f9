//! Time-dependent Schrödinger propagation along a ramp and final-state
//! fidelities.
//!
//! Each step applies `exp(−i H(g(t_mid)) δt)` with `g` sampled at the step
//! midpoint, `δt = τ/steps`. A run is repeated with doubled step counts until
//! the fidelity changes by less than [`EvolveOptions::tolerance`].

mod propagator;

pub use propagator::{dense_eigen_step, two_level_propagator, ChebyshevStepper};

use crate::models::{
    two_level_ground, FullyConnectedModel, IsingChain, ModelSystem, StateVector, TwoLevelSystem,
};
use crate::ramp::RampProfile;
use crate::{Error, Result, C64};
use propagator::two_level_step;

pub const MIN_STEPS: usize = 100;

/// How the bosonic (fully connected) model is stepped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FcPropagator {
    /// Chebyshev expansion on the banded Hamiltonian.
    #[default]
    Chebyshev,
    /// Full eigendecomposition at every step.
    DenseEigen,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveOptions {
    pub tolerance: f64,
    pub max_doublings: usize,
    pub fc_propagator: FcPropagator,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-6,
            max_doublings: 2,
            fc_propagator: FcPropagator::default(),
        }
    }
}

/// Outcome of one fixed-step propagation.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// One state per subspace (a single entry except for the Ising chain).
    pub final_states: Vec<StateVector>,
    pub targets: Vec<StateVector>,
    pub subspace_fidelities: Vec<f64>,
    pub fidelity: f64,
    pub norm_drift: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionResult {
    pub final_states: Vec<StateVector>,
    pub subspace_fidelities: Vec<f64>,
    pub fidelity: f64,
    /// `max |‖ψ‖ − 1|` over every step of the reported run.
    pub norm_drift: f64,
    pub steps: usize,
    pub converged: bool,
    /// Fidelity change between the last two step counts.
    pub convergence_delta: f64,
}

impl EvolutionResult {
    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NotConverged(self.convergence_delta))
        }
    }
}

/// `|⟨φ|ψ⟩|²`.
pub fn fidelity(psi: &StateVector, phi: &StateVector) -> Result<f64> {
    Ok(phi.inner(psi)?.norm_sqr())
}

/// Product of per-subspace fidelities of the Ising chain.
pub fn tfim_fidelity(chain: &IsingChain, subspace_fidelities: &[f64]) -> Result<f64> {
    let expected = chain.n / 2;
    if subspace_fidelities.len() != expected {
        return Err(Error::invalid(format!(
            "expected {expected} subspace fidelities, got {}",
            subspace_fidelities.len()
        )));
    }
    Ok(subspace_fidelities.iter().product())
}

/// Landau-Zener estimate for a linear sweep from `g0` to `−g0`:
/// `F = 1 − exp(−πΔ²τ / (2|g0|))`.
pub fn lz_formula_fidelity(delta: f64, g0: f64, tau: f64) -> Result<f64> {
    if g0 == 0.0 || !g0.is_finite() {
        return Err(Error::invalid("g0 must be non-zero"));
    }
    if !(tau >= 0.0) {
        return Err(Error::invalid(format!(
            "duration must be non-negative, got {tau}"
        )));
    }
    Ok(1.0 - (-std::f64::consts::PI * delta * delta * tau / (2.0 * g0.abs())).exp())
}

/// `max(1000, ⌈200 τ max_s Γ(G(s))⌉)`.
pub fn default_steps(model: &ModelSystem, ramp: &RampProfile, tau: f64) -> usize {
    let max_gap = (0..=100)
        .map(|i| model.gap_scale(ramp.value(i as f64 / 100.0)))
        .fold(0.0, f64::max);
    let steps = (200.0 * tau * max_gap).ceil();
    if steps.is_finite() {
        (steps as usize).max(1000)
    } else {
        1000
    }
}

fn check_run(tau: f64, steps: usize) -> Result<()> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::invalid(format!(
            "duration must be positive, got {tau}"
        )));
    }
    if steps < MIN_STEPS {
        return Err(Error::invalid(format!(
            "need at least {MIN_STEPS} steps, got {steps}"
        )));
    }
    Ok(())
}

/// Propagate from the ground state at `g(0)` and compare with the ground
/// state at `g(τ)`, doubling `steps` until converged.
pub fn evolve(
    model: &ModelSystem,
    ramp: &RampProfile,
    tau: f64,
    steps: usize,
) -> Result<EvolutionResult> {
    evolve_with(model, ramp, tau, steps, &EvolveOptions::default())
}

pub fn evolve_with(
    model: &ModelSystem,
    ramp: &RampProfile,
    tau: f64,
    steps: usize,
    opts: &EvolveOptions,
) -> Result<EvolutionResult> {
    let mut prev = propagate(model, ramp, tau, steps, opts)?;
    let mut delta = f64::INFINITY;
    for _ in 0..opts.max_doublings {
        let next = propagate(model, ramp, tau, prev.steps * 2, opts)?;
        delta = (next.fidelity - prev.fidelity).abs();
        prev = next;
        if delta < opts.tolerance {
            break;
        }
    }
    Ok(EvolutionResult {
        converged: delta < opts.tolerance,
        convergence_delta: delta,
        final_states: prev.final_states,
        subspace_fidelities: prev.subspace_fidelities,
        fidelity: prev.fidelity,
        norm_drift: prev.norm_drift,
        steps: prev.steps,
    })
}

/// One propagation at a fixed step count.
pub fn propagate(
    model: &ModelSystem,
    ramp: &RampProfile,
    tau: f64,
    steps: usize,
    opts: &EvolveOptions,
) -> Result<Trajectory> {
    check_run(tau, steps)?;
    match model {
        ModelSystem::LandauZener(m) => Ok(propagate_two_level(
            &[TwoLevelSystem::LandauZener { delta: m.delta }],
            ramp,
            tau,
            steps,
        )),
        ModelSystem::Ising(c) => Ok(propagate_two_level(&c.subspaces(), ramp, tau, steps)),
        ModelSystem::FullyConnected(m) => propagate_fc(m, ramp, tau, steps, opts.fc_propagator),
    }
}

/// Independent two-level problems driven by the same ramp.
pub fn propagate_two_level(
    systems: &[TwoLevelSystem],
    ramp: &RampProfile,
    tau: f64,
    steps: usize,
) -> Trajectory {
    let ground = |s: &TwoLevelSystem, g: f64| {
        let (z, x) = s.bloch(g);
        two_level_ground(z, x)
    };
    let g_start = ramp.value(0.0);
    let g_end = ramp.value(1.0);
    let mut states: Vec<[C64; 2]> = systems.iter().map(|s| ground(s, g_start)).collect();
    let dt = tau / steps as f64;
    let mut drift: f64 = 0.0;
    for i in 0..steps {
        let g = ramp.value((i as f64 + 0.5) / steps as f64);
        for (s, psi) in systems.iter().zip(states.iter_mut()) {
            let (z, x) = s.bloch(g);
            two_level_step(z, x, dt, psi);
        }
        if i % 64 == 63 || i + 1 == steps {
            for psi in &states {
                let n = (psi[0].norm_sqr() + psi[1].norm_sqr()).sqrt();
                drift = drift.max((n - 1.0).abs());
            }
        }
    }
    let mut final_states = Vec::with_capacity(systems.len());
    let mut targets = Vec::with_capacity(systems.len());
    let mut fids = Vec::with_capacity(systems.len());
    for (s, psi) in systems.iter().zip(states) {
        let target = StateVector::from_slice(&ground(s, g_end));
        let state = StateVector::from_slice(&psi);
        fids.push(target.inner(&state).map(|c| c.norm_sqr()).unwrap_or(0.0));
        final_states.push(state);
        targets.push(target);
    }
    Trajectory {
        fidelity: fids.iter().product(),
        subspace_fidelities: fids,
        final_states,
        targets,
        norm_drift: drift,
        steps,
    }
}

fn propagate_fc(
    model: &FullyConnectedModel,
    ramp: &RampProfile,
    tau: f64,
    steps: usize,
    method: FcPropagator,
) -> Result<Trajectory> {
    let (_, start) = model.ground_state(ramp.value(0.0))?;
    let (_, target) = model.ground_state(ramp.value(1.0))?;
    let bands = model.bands();
    let mut h = bands.hamiltonian(0.0);
    let mut psi: Vec<C64> = start.amplitudes().iter().copied().collect();
    let mut stepper = ChebyshevStepper::new();
    let dt = tau / steps as f64;
    let mut drift: f64 = 0.0;
    for i in 0..steps {
        let g = ramp.value((i as f64 + 0.5) / steps as f64);
        bands.fill(g, &mut h);
        match method {
            FcPropagator::Chebyshev => stepper.step(&h, dt, &mut psi),
            FcPropagator::DenseEigen => dense_eigen_step(&h.to_dense(), dt, &mut psi),
        }
        let n = psi.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        drift = drift.max((n - 1.0).abs());
    }
    let state = StateVector::from_slice(&psi);
    let f = fidelity(&state, &target)?;
    Ok(Trajectory {
        final_states: vec![state],
        targets: vec![target],
        subspace_fidelities: vec![f],
        fidelity: f,
        norm_drift: drift,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{ground_state, lz_hamiltonian, LandauZener};
    use crate::ramp::{constant_ramp, linear_ramp, lz_optimal_ramp, RampSpec};
    use nalgebra::DMatrix;

    fn lz() -> ModelSystem {
        ModelSystem::LandauZener(LandauZener::new(1.0).unwrap())
    }

    #[test]
    fn fidelity_examples() {
        let zero = StateVector::basis(2, 0);
        let one = StateVector::basis(2, 1);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = StateVector::from_slice(&[C64::new(s, 0.0), C64::new(s, 0.0)]);
        assert!((fidelity(&zero, &zero).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(fidelity(&zero, &one).unwrap(), 0.0);
        assert!((fidelity(&plus, &zero).unwrap() - 0.5).abs() < 1e-15);
        assert!(fidelity(&zero, &StateVector::basis(3, 0)).is_err());
        let rotated = plus.clone().with_phase(1.234);
        assert!((fidelity(&rotated, &zero).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn tfim_fidelity_product() {
        let chain = IsingChain::new(6, 1.0).unwrap();
        assert_eq!(tfim_fidelity(&chain, &[1.0, 1.0, 1.0]).unwrap(), 1.0);
        assert_eq!(tfim_fidelity(&chain, &[1.0, 0.0, 0.7]).unwrap(), 0.0);
        assert!(tfim_fidelity(&chain, &[1.0, 1.0]).is_err());
    }

    #[test]
    fn lz_formula_examples() {
        assert_eq!(lz_formula_fidelity(1.0, -10.0, 0.0).unwrap(), 0.0);
        assert!((lz_formula_fidelity(1.0, -10.0, 1e6).unwrap() - 1.0).abs() < 1e-15);
        // 1 − e^{−π}
        assert!(
            (lz_formula_fidelity(1.0, 10.0, 20.0).unwrap() - 0.956_786_081_736_227_8).abs() < 1e-14
        );
        assert!(lz_formula_fidelity(1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn constant_ramp_keeps_ground_state() {
        let r = evolve(&lz(), &constant_ramp(-3.0), 7.0, 1000).unwrap();
        assert!((r.fidelity - 1.0).abs() < 1e-12);
        assert!(r.converged);
    }

    #[test]
    fn sudden_quench_overlap() {
        let r = evolve(
            &lz(),
            &linear_ramp(&RampSpec::new(-10.0, 10.0, 1e-9).unwrap()),
            1e-9,
            1000,
        )
        .unwrap();
        let h0 = DMatrix::from_fn(2, 2, |i, j| lz_hamiltonian(-10.0, 1.0)[(i, j)]);
        let h1 = DMatrix::from_fn(2, 2, |i, j| lz_hamiltonian(10.0, 1.0)[(i, j)]);
        let (_, a) = ground_state(&h0).unwrap();
        let (_, b) = ground_state(&h1).unwrap();
        let expect = fidelity(&a, &b).unwrap();
        assert!((expect - 1.0 / 101.0).abs() < 1e-14);
        assert!((r.fidelity - expect).abs() < 1e-6);
    }

    #[test]
    fn adiabatic_limit_for_optimal_ramp() {
        let ramp = lz_optimal_ramp(-10.0, 1.0).unwrap();
        let m = lz();
        let r = evolve(&m, &ramp, 50.0, default_steps(&m, &ramp, 50.0)).unwrap();
        assert!(r.converged);
        assert!(r.fidelity >= 0.999, "{}", r.fidelity);
        assert!(r.norm_drift <= 1e-9);
    }

    #[test]
    fn rejects_bad_runs() {
        let ramp = constant_ramp(0.0);
        assert!(evolve(&lz(), &ramp, 0.0, 1000).is_err());
        assert!(evolve(&lz(), &ramp, 1.0, 10).is_err());
    }

    #[test]
    fn default_steps_resolve_gap() {
        let ramp = linear_ramp(&RampSpec::new(-10.0, 10.0, 1.0).unwrap());
        assert_eq!(default_steps(&lz(), &ramp, 0.1), 1000);
        let n = default_steps(&lz(), &ramp, 10.0);
        assert_eq!(n, (200.0 * 10.0 * 2.0 * 101f64.sqrt()).ceil() as usize);
    }
}
