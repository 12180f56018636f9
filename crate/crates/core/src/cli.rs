//! Command-line front end: `ramp`, `evolve`, `sweep` and `figures`.
//!
//! Exit codes: 0 on success, 2 for usage or parameter errors, 3 when a
//! numerical check (step doubling, truncation, quadrature) failed.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Component, Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::dynamics::{default_steps, evolve};
use crate::experiments::{
    build_ramp, figure_panels, resolve_endpoints, run_sweep, Protocol, SweepResult, SweepSpec,
    TauGrid,
};
use crate::models::{ModelConfig, ModelSystem};
use crate::ramp::{evaluate_action, solve_euler_lagrange, RampProfile};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
const EXIT_IO: i32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "minaction",
    version,
    about = "Minimal adiabatic action ramps and their fidelities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a ramp profile G(s) as CSV.
    Ramp(RampArgs),
    /// Evolve under one ramp and report the final fidelity.
    Evolve(EvolveArgs),
    /// Fidelity versus duration for several protocols.
    Sweep(SweepArgs),
    /// Run the six reference sweeps and write one CSV per panel.
    Figures(FiguresArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Lz,
    Ising,
    Fc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RampProtocol {
    Linear,
    Action,
    Garbe,
    /// Numerical Euler-Lagrange solution for the model's gap.
    El,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: ModelKind,
    /// Landau-Zener coupling.
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    /// Ising chain length.
    #[arg(long = "N", default_value_t = 20)]
    pub n: usize,
    /// Fully connected model frequency ratio.
    #[arg(long, default_value_t = 100.0)]
    pub eta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Fock truncation of the fully connected model.
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub g0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub gtau: Option<f64>,
}

impl ModelArgs {
    pub fn config(&self) -> ModelConfig {
        match self.model {
            ModelKind::Lz => ModelConfig::Lz { delta: self.delta },
            ModelKind::Ising => ModelConfig::Ising {
                n: self.n,
                omega: self.omega,
            },
            ModelKind::Fc => ModelConfig::Fc {
                eta: self.eta,
                omega: self.omega,
                n_max: self.n_max,
            },
        }
    }
}

#[derive(Debug, Args)]
pub struct RampArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum, default_value = "action")]
    pub protocol: RampProtocol,
    /// Duration at which to report the action.
    #[arg(long)]
    pub tau: Option<f64>,
    /// Number of sample points in s ∈ [0, 1].
    #[arg(long, default_value_t = 201)]
    pub grid: usize,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum, default_value = "action")]
    pub protocol: RampProtocol,
    #[arg(long)]
    pub tau: f64,
    /// Initial number of time steps; doubled until the fidelity settles.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Also write the result as JSON into this directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["config", "model"]))]
pub struct SweepArgs {
    /// JSON sweep specification.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub model: Option<ModelKind>,
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    #[arg(long = "N", default_value_t = 20)]
    pub n: usize,
    #[arg(long, default_value_t = 100.0)]
    pub eta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub g0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub gtau: Option<f64>,
    /// Comma-separated protocols.
    #[arg(long, value_delimiter = ',', default_value = "linear,action")]
    pub protocol: Vec<Protocol>,
    /// Points of the default log-spaced τ grid.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub tau_min: Option<f64>,
    #[arg(long)]
    pub tau_max: Option<f64>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    #[arg(long, default_value = "figures")]
    pub out: PathBuf,
    /// Points per τ grid (default 60).
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub threads: Option<usize>,
}

impl clap::ValueEnum for Protocol {
    fn value_variants<'a>() -> &'a [Self] {
        &[Protocol::Linear, Protocol::Action, Protocol::Garbe]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(self.name()))
    }
}

/// Exit code for an error that escaped a subcommand.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NotConverged(_)
        | Error::Truncation { .. }
        | Error::Quadrature { .. }
        | Error::ThresholdNotAttained(_) => EXIT_NUMERICAL,
        Error::Io { .. } => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

/// Parse `args` and run; returns the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Ramp(a) => cmd_ramp(&a),
        Command::Evolve(a) => cmd_evolve(&a),
        Command::Sweep(a) => cmd_sweep(&a),
        Command::Figures(a) => cmd_figures(&a),
    }
}

fn ramp_for(
    model: &ModelSystem,
    protocol: RampProtocol,
    g0: f64,
    g_tau: f64,
    grid: usize,
) -> Result<RampProfile> {
    let p = match protocol {
        RampProtocol::Linear => Protocol::Linear,
        RampProtocol::Action => Protocol::Action,
        RampProtocol::Garbe => Protocol::Garbe,
        RampProtocol::El => {
            return solve_euler_lagrange(&model.action_model()?, g0, g_tau, grid.max(65))
        }
    };
    build_ramp(model, p, g0, g_tau)
}

fn protocol_name(p: RampProtocol) -> &'static str {
    match p {
        RampProtocol::Linear => "linear",
        RampProtocol::Action => "action",
        RampProtocol::Garbe => "garbe",
        RampProtocol::El => "el",
    }
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn create_file(path: &Path) -> Result<std::io::BufWriter<fs::File>> {
    fs::File::create(path)
        .map(std::io::BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

pub fn cmd_ramp(a: &RampArgs) -> Result<i32> {
    if a.grid < 2 {
        return Err(Error::invalid("--grid needs at least 2 points"));
    }
    let model = a.model.config().build()?;
    let (g0, g_tau) = resolve_endpoints(&model, a.model.g0, a.model.gtau);
    let ramp = ramp_for(&model, a.protocol, g0, g_tau, a.grid)?;
    let action = match a.tau {
        Some(tau) => Some(evaluate_action(&model.action_model()?, &ramp, tau)?),
        None => None,
    };
    create_dir(&a.out)?;
    let path = a.out.join(format!(
        "ramp_{}_{}.csv",
        model.name(),
        protocol_name(a.protocol)
    ));
    ramp.write_csv(create_file(&path)?, a.grid)?;
    println!("{}", path.display());
    if let (Some(tau), Some(s)) = (a.tau, action) {
        println!("action S(tau = {tau}) = {s:.11e}");
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct EvolveReport {
    model: ModelConfig,
    protocol: &'static str,
    g0: f64,
    g_tau: f64,
    tau: f64,
    fidelity: f64,
    norm_drift: f64,
    steps: usize,
    converged: bool,
    convergence_delta: f64,
    action: f64,
}

pub fn cmd_evolve(a: &EvolveArgs) -> Result<i32> {
    if !(a.tau > 0.0 && a.tau.is_finite()) {
        return Err(Error::invalid(format!(
            "--tau must be positive, got {}",
            a.tau
        )));
    }
    let model = a.model.config().build()?;
    let (g0, g_tau) = resolve_endpoints(&model, a.model.g0, a.model.gtau);
    let model = match model {
        ModelSystem::FullyConnected(m) if a.model.n_max.is_none() => {
            ModelSystem::FullyConnected(m.converged_for(g0, g_tau)?)
        }
        other => other,
    };
    let ramp = ramp_for(&model, a.protocol, g0, g_tau, 2001)?;
    let steps = a
        .steps
        .unwrap_or_else(|| default_steps(&model, &ramp, a.tau));
    let res = evolve(&model, &ramp, a.tau, steps)?;
    let report = EvolveReport {
        model: model.params(),
        protocol: protocol_name(a.protocol),
        g0,
        g_tau,
        tau: a.tau,
        fidelity: res.fidelity,
        norm_drift: res.norm_drift,
        steps: res.steps,
        converged: res.converged,
        convergence_delta: res.convergence_delta,
        action: evaluate_action(&model.action_model()?, &ramp, a.tau)?,
    };
    let json = serde_json::to_string_pretty(&report)?;
    println!("{json}");
    if let Some(dir) = &a.out {
        create_dir(dir)?;
        let path = dir.join(format!("evolve_{}_{}.json", model.name(), report.protocol));
        let mut f = create_file(&path)?;
        writeln!(f, "{json}").map_err(|e| Error::io(&path, e))?;
    }
    Ok(if res.converged {
        EXIT_OK
    } else {
        EXIT_NUMERICAL
    })
}

/// Reject config-supplied output paths that would escape the output directory.
fn relative_inside(p: &Path) -> Result<&Path> {
    if p.components().all(|c| matches!(c, Component::Normal(_))) {
        Ok(p)
    } else {
        Err(Error::invalid(format!(
            "output path {} must be relative and stay inside --out",
            p.display()
        )))
    }
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(Error::invalid("--threads must be at least 1")),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Error::invalid(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn sweep_spec(a: &SweepArgs) -> Result<SweepSpec> {
    if let Some(path) = &a.config {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        return Ok(serde_json::from_str(&text)?);
    }
    let kind = a
        .model
        .ok_or_else(|| Error::invalid("either --config or --model is required"))?;
    let args = ModelArgs {
        model: kind,
        delta: a.delta,
        n: a.n,
        eta: a.eta,
        omega: a.omega,
        n_max: a.n_max,
        g0: a.g0,
        gtau: a.gtau,
    };
    let mut spec = SweepSpec::new(args.config(), a.protocol.clone());
    spec.g0 = a.g0;
    spec.g_tau = a.gtau;
    if a.grid.is_some() || a.tau_min.is_some() || a.tau_max.is_some() {
        let model = spec.model.build()?;
        let (g0, g_tau) = resolve_endpoints(&model, a.g0, a.gtau);
        let TauGrid::Log { min, max, points } = TauGrid::default_for(&model, g0, g_tau) else {
            unreachable!("default grids are log-spaced")
        };
        spec.tau_grid = Some(TauGrid::Log {
            min: a.tau_min.unwrap_or(min),
            max: a.tau_max.unwrap_or(max),
            points: a.grid.unwrap_or(points),
        });
    }
    Ok(spec)
}

fn save(result: &SweepResult, path: &Path) -> Result<()> {
    result.save(path)?;
    println!("{}", path.display());
    Ok(())
}

pub fn cmd_sweep(a: &SweepArgs) -> Result<i32> {
    let spec = sweep_spec(a)?;
    let rel = match &spec.output {
        Some(p) => relative_inside(p)?.to_path_buf(),
        None => PathBuf::from(format!("sweep_{}.csv", spec.model.build()?.name())),
    };
    let result = with_threads(a.threads, || run_sweep(&spec))??;
    save(&result, &a.out.join(rel))?;
    Ok(if result.is_partial() {
        EXIT_NUMERICAL
    } else {
        EXIT_OK
    })
}

pub fn cmd_figures(a: &FiguresArgs) -> Result<i32> {
    let panels = figure_panels(a.points)?;
    let mut partial = false;
    for panel in &panels {
        let result = with_threads(a.threads, || run_sweep(&panel.spec))??;
        partial |= result.is_partial();
        save(&result, &a.out.join(format!("{}.csv", panel.name)))?;
    }
    for (stem, panel) in [("fig1_lz", &panels[0]), ("fig3a_fc", &panels[5])] {
        let model = panel.spec.model.build()?;
        let (g0, g_tau) = resolve_endpoints(&model, panel.spec.g0, panel.spec.g_tau);
        for &p in &panel.spec.protocols {
            let path = a.out.join(format!("{stem}_ramp_{p}.csv"));
            build_ramp(&model, p, g0, g_tau)?.write_csv(create_file(&path)?, 201)?;
            println!("{}", path.display());
        }
    }
    Ok(if partial { EXIT_NUMERICAL } else { EXIT_OK })
}
