//! Transverse-field Ising chain of 20 sites ramped across the critical point.
//!
//! The minimal-action ramp is built from the lowest momentum subspace only,
//! but every subspace is evolved under it.

use minaction::dynamics::evolve;
use minaction::models::{IsingChain, ModelSystem};
use minaction::ramp::{ising_optimal_ramp, linear_ramp, RampSpec};

fn main() -> minaction::Result<()> {
    let chain = IsingChain::new(20, 1.0)?;
    let model = ModelSystem::Ising(chain);
    let t = model.timescales(0.0, 2.0);
    println!(
        "τ_a = {:.3}, τ_l = {:.3}",
        t.tau_a,
        t.tau_l.unwrap_or(f64::NAN)
    );

    let optimal = ising_optimal_ramp(0.0, 20)?;
    let linear = linear_ramp(&RampSpec::new(0.0, 2.0, 1.0)?);

    println!("{:>7} {:>10} {:>10}", "tau", "linear", "action");
    for i in 0..=12 {
        let tau = 2.0 + 0.5 * i as f64;
        let fl = evolve(&model, &linear, tau, 2000)?.fidelity;
        let fa = evolve(&model, &optimal, tau, 2000)?.fidelity;
        println!("{tau:>7.2} {fl:>10.6} {fa:>10.6}");
    }

    let r = evolve(&model, &optimal, 5.75, 2000)?;
    println!("\nsubspace fidelities at τ = 5.75:");
    for (k, f) in chain.momenta().iter().zip(&r.subspace_fidelities) {
        println!("  k = {k:.4}: {f:.8}");
    }
    Ok(())
}
