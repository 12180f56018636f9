//! Optimal ramp for a gap known only as a table, via the numerical
//! Euler-Lagrange solver.
//!
//! The table below is a smoothed avoided crossing with its minimum at
//! `g = 0.3`; any `g,gap` CSV works the same way.

use minaction::ramp::{evaluate_action, linear_ramp, solve_euler_lagrange, ActionModel, RampSpec};

fn main() -> minaction::Result<()> {
    let mut table = String::from("g,gap\n");
    for i in 0..=60 {
        let g = -1.0 + i as f64 / 30.0;
        table.push_str(&format!(
            "{g},{}\n",
            2.0 * ((g - 0.3).powi(2) + 0.05f64.powi(2)).sqrt()
        ));
    }
    let model = ActionModel::from_gap_csv(table.as_bytes(), 2.0)?;

    let optimal = solve_euler_lagrange(&model, -1.0, 1.0, 801)?;
    let linear = linear_ramp(&RampSpec::new(-1.0, 1.0, 1.0)?);

    for tau in [1.0, 10.0] {
        println!(
            "τ = {tau:>4}: S_optimal = {:.4e}, S_linear = {:.4e}",
            evaluate_action(&model, &optimal, tau)?,
            evaluate_action(&model, &linear, tau)?
        );
    }
    let (s_nodes, g_nodes) = optimal.samples().expect("numerical ramps keep their nodes");
    let near_min = s_nodes
        .iter()
        .zip(g_nodes)
        .filter(|(_, &g)| (g - 0.3).abs() < 0.05)
        .count();
    println!(
        "{near_min} of {} nodes lie within 0.05 of the gap minimum",
        s_nodes.len()
    );

    optimal.write_csv(std::io::stdout().lock(), 11)?;
    Ok(())
}
