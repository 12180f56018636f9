//! Fidelity-versus-duration sweeps and their CSV/JSON serialization.

mod output;
mod sweep;

pub use output::{read_sweep_csv, sidecar_path};
pub use sweep::{
    build_ramp, figure_panels, resolve_endpoints, run_sweep, run_sweep_with, threshold_time,
    FigurePanel, Protocol, SweepMetadata, SweepResult, SweepRow, SweepSpec, TauGrid,
};
