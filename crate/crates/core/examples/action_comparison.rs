//! Adiabatic action of every built-in ramp for each model, at `τ = 1`.

use minaction::experiments::{build_ramp, Protocol};
use minaction::models::{ModelConfig, ModelSystem};
use minaction::ramp::{evaluate_action, solve_euler_lagrange};

fn main() -> minaction::Result<()> {
    let models = [
        ModelConfig::Lz { delta: 1.0 },
        ModelConfig::Ising { n: 20, omega: 1.0 },
        ModelConfig::Fc {
            eta: 100.0,
            omega: 1.0,
            n_max: None,
        },
    ];
    for config in models {
        let model = config.build()?;
        let action = model.action_model()?;
        let (g0, g1) = model.default_endpoints();
        println!("{} ({g0} → {g1})", model.name());
        let mut protocols = vec![Protocol::Linear, Protocol::Action];
        if matches!(model, ModelSystem::FullyConnected(_)) {
            protocols.push(Protocol::Garbe);
        }
        for p in protocols {
            let ramp = build_ramp(&model, p, g0, g1)?;
            println!(
                "  {:<10} S = {:.6e}",
                p.name(),
                evaluate_action(&action, &ramp, 1.0)?
            );
        }
        let numeric = solve_euler_lagrange(&action, g0, g1, 1001)?;
        println!(
            "  {:<10} S = {:.6e}",
            "numeric",
            evaluate_action(&action, &numeric, 1.0)?
        );
    }
    Ok(())
}
