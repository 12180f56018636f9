//! Run a sweep described in JSON and write the CSV plus metadata sidecar.
//!
//! ```text
//! cargo run --release --example sweep_config -- out/ising.csv
//! ```

use std::path::PathBuf;

use minaction::experiments::{run_sweep, SweepSpec};

const SPEC: &str = r#"{
    "model": {"model": "ising", "N": 30},
    "g0": 0.0,
    "protocols": ["linear", "action"],
    "tau_grid": {"spacing": "linear", "min": 4, "max": 12, "points": 17}
}"#;

fn main() -> minaction::Result<()> {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("minaction_ising.csv"));
    let spec: SweepSpec = serde_json::from_str(SPEC)?;
    let result = run_sweep(&spec)?;
    result.save(&path)?;
    println!(
        "{} rows → {} (τ_l = {:?}, partial = {})",
        result.rows.len(),
        path.display(),
        result.metadata.tau_l,
        result.is_partial()
    );
    Ok(())
}
