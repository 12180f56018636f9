//! Landau-Zener sweep from `g0 = −10Δ` to `10Δ`: fidelity versus duration for
//! the linear and the minimal-action ramp.

use minaction::dynamics::lz_formula_fidelity;
use minaction::experiments::{run_sweep, threshold_time, Protocol, SweepSpec, TauGrid};
use minaction::models::ModelConfig;

fn main() -> minaction::Result<()> {
    let spec = SweepSpec::new(
        ModelConfig::Lz { delta: 1.0 },
        vec![Protocol::Linear, Protocol::Action],
    )
    .with_endpoints(-10.0, 10.0)
    .with_grid(TauGrid::Log {
        min: 0.1,
        max: 100.0,
        points: 25,
    });
    let result = run_sweep(&spec)?;

    println!(
        "{:>9} {:>10} {:>10} {:>10}",
        "tau", "linear", "LZ", "action"
    );
    for ((tau, lin), (_, act)) in result
        .curve(Protocol::Linear)
        .into_iter()
        .zip(result.curve(Protocol::Action))
    {
        println!(
            "{tau:>9.3} {lin:>10.6} {:>10.6} {act:>10.6}",
            lz_formula_fidelity(1.0, -10.0, tau)?
        );
    }

    let lin = threshold_time(&result, Protocol::Linear, 0.99)?;
    let act = threshold_time(&result, Protocol::Action, 0.99)?;
    println!("\nF ≥ 0.99 first reached at τ = {lin:.2} (linear), τ = {act:.2} (action)");
    Ok(())
}
