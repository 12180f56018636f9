//! Fully connected spin model in its bosonic form: finite-size gaps and a
//! three-protocol comparison from `g = 0.1` to `0.9`.

use minaction::dynamics::{default_steps, evolve};
use minaction::experiments::{build_ramp, Protocol};
use minaction::models::{FullyConnectedModel, ModelSystem};

fn main() -> minaction::Result<()> {
    for eta in [10.0, 100.0] {
        let m = FullyConnectedModel::new(eta, 1.0)?.converged_for(0.1, 0.9)?;
        println!("η = {eta}, n_max = {}", m.n_max);
        for g in [0.1, 0.5, 0.9] {
            println!(
                "  g = {g}: gap {:.5} (thermodynamic {:.5}), edge population {:.1e}",
                m.exact_gap(g)?,
                m.thermodynamic_gap(g),
                m.edge_population(g)?
            );
        }

        let model = ModelSystem::FullyConnected(m);
        for tau in [2.0, 5.0, 15.0] {
            print!("  τ = {tau:>4}:");
            for p in [Protocol::Linear, Protocol::Action, Protocol::Garbe] {
                let ramp = build_ramp(&model, p, 0.1, 0.9)?;
                let r = evolve(&model, &ramp, tau, default_steps(&model, &ramp, tau))?;
                print!("  {p} {:.6}", r.fidelity);
            }
            println!();
        }
    }
    Ok(())
}
