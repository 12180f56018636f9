use std::fmt;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{default_steps, evolve_with, EvolveOptions};
use crate::models::{ModelConfig, ModelSystem};
use crate::ramp::{
    evaluate_action, fc_optimal_ramp, garbe_ramp, ising_optimal_ramp, linear_ramp, lz_optimal_ramp,
    RampProfile, RampSpec,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Protocol {
    Linear,
    Action,
    Garbe,
}

impl Protocol {
    pub fn name(self) -> &'static str {
        match self {
            Protocol::Linear => "linear",
            Protocol::Action => "action",
            Protocol::Garbe => "garbe",
        }
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Protocol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Protocol::Linear),
            "action" => Ok(Protocol::Action),
            "garbe" => Ok(Protocol::Garbe),
            other => Err(Error::invalid(format!("unknown protocol {other:?}"))),
        }
    }
}

/// Durations to sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "spacing", rename_all = "lowercase")]
pub enum TauGrid {
    Log { min: f64, max: f64, points: usize },
    Linear { min: f64, max: f64, points: usize },
    Explicit { values: Vec<f64> },
}

impl TauGrid {
    pub fn values(&self) -> Result<Vec<f64>> {
        let spaced = |min: f64, max: f64, points: usize, log: bool| -> Result<Vec<f64>> {
            if !(min > 0.0 && max >= min && max.is_finite()) || points == 0 {
                return Err(Error::invalid(format!(
                    "bad τ grid [{min}, {max}] with {points} points"
                )));
            }
            if points == 1 {
                return Ok(vec![min]);
            }
            Ok((0..points)
                .map(|i| {
                    let t = i as f64 / (points - 1) as f64;
                    if log {
                        (min.ln() + t * (max.ln() - min.ln())).exp()
                    } else {
                        min + t * (max - min)
                    }
                })
                .collect())
        };
        let values = match self {
            TauGrid::Log { min, max, points } => spaced(*min, *max, *points, true)?,
            TauGrid::Linear { min, max, points } => spaced(*min, *max, *points, false)?,
            TauGrid::Explicit { values } => values.clone(),
        };
        if values.is_empty() {
            return Err(Error::invalid("τ grid is empty"));
        }
        if values.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
            return Err(Error::invalid("τ values must be positive"));
        }
        if values.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::invalid("τ values must be strictly increasing"));
        }
        Ok(values)
    }

    /// 60 log-spaced points over `[0.1 τ_a, 100 τ_a]`, or `[0.1 τ_a, 10 τ_l]`
    /// when a light-cone timescale exists.
    pub fn default_for(model: &ModelSystem, g0: f64, g_tau: f64) -> Self {
        let t = model.timescales(g0, g_tau);
        let max = match t.tau_l {
            Some(tl) => 10.0 * tl,
            None => 100.0 * t.tau_a,
        };
        TauGrid::Log {
            min: 0.1 * t.tau_a,
            max,
            points: 60,
        }
    }
}

/// A sweep configuration, as read from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub model: ModelConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_tau: Option<f64>,
    pub protocols: Vec<Protocol>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_grid: Option<TauGrid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl SweepSpec {
    pub fn new(model: ModelConfig, protocols: Vec<Protocol>) -> Self {
        Self {
            model,
            g0: None,
            g_tau: None,
            protocols,
            tau_grid: None,
            output: None,
        }
    }

    pub fn with_endpoints(mut self, g0: f64, g_tau: f64) -> Self {
        self.g0 = Some(g0);
        self.g_tau = Some(g_tau);
        self
    }

    pub fn with_grid(mut self, grid: TauGrid) -> Self {
        self.tau_grid = Some(grid);
        self
    }

    /// Model, endpoints and τ values after defaults and validation.
    pub fn resolve(&self) -> Result<(ModelSystem, f64, f64, Vec<f64>)> {
        let model = self.model.build()?;
        if self.protocols.is_empty() {
            return Err(Error::invalid("protocol list is empty"));
        }
        if self.protocols.contains(&Protocol::Garbe)
            && !matches!(model, ModelSystem::FullyConnected(_))
        {
            return Err(Error::invalid(
                "the garbe protocol is defined for the fully connected model only",
            ));
        }
        let (g0, g_tau) = resolve_endpoints(&model, self.g0, self.g_tau);
        let model = match model {
            ModelSystem::FullyConnected(m) => {
                ModelSystem::FullyConnected(m.converged_for(g0, g_tau)?)
            }
            other => other,
        };
        let grid = self
            .tau_grid
            .clone()
            .unwrap_or_else(|| TauGrid::default_for(&model, g0, g_tau));
        Ok((model, g0, g_tau, grid.values()?))
    }
}

/// Fill in missing endpoints. A lone `g0` implies the symmetric target of
/// the closed-form ramps: `−g0` for Landau-Zener, `2 − g0` for Ising.
pub fn resolve_endpoints(model: &ModelSystem, g0: Option<f64>, g_tau: Option<f64>) -> (f64, f64) {
    let (d0, d1) = model.default_endpoints();
    let start = g0.unwrap_or(d0);
    let end = g_tau.unwrap_or(match model {
        ModelSystem::LandauZener(_) if g0.is_some() => -start,
        ModelSystem::Ising(_) if g0.is_some() => 2.0 - start,
        _ => d1,
    });
    (start, end)
}

/// The ramp a protocol prescribes for `model` between `g0` and `g_tau`.
pub fn build_ramp(
    model: &ModelSystem,
    protocol: Protocol,
    g0: f64,
    g_tau: f64,
) -> Result<RampProfile> {
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0);
    match (protocol, model) {
        (Protocol::Linear, _) => Ok(linear_ramp(&RampSpec::new(g0, g_tau, 1.0)?)),
        (Protocol::Action, ModelSystem::LandauZener(m)) => {
            if !close(g_tau, -g0) {
                return Err(Error::invalid(
                    "the Landau-Zener action ramp sweeps g0 → −g0",
                ));
            }
            lz_optimal_ramp(g0, m.delta)
        }
        (Protocol::Action, ModelSystem::Ising(c)) => {
            if !close(g_tau, 2.0 - g0) {
                return Err(Error::invalid("the Ising action ramp sweeps g0 → 2 − g0"));
            }
            ising_optimal_ramp(g0, c.n)
        }
        (Protocol::Action, ModelSystem::FullyConnected(_)) => fc_optimal_ramp(g0, g_tau),
        (Protocol::Garbe, ModelSystem::FullyConnected(_)) => {
            if !(g0 < g_tau) {
                return Err(Error::invalid("the garbe ramp needs g0 < g_tau"));
            }
            garbe_ramp(g0, g_tau)
        }
        (Protocol::Garbe, _) => Err(Error::invalid(
            "the garbe protocol is defined for the fully connected model only",
        )),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub tau: f64,
    pub protocol: Protocol,
    pub fidelity: f64,
    pub norm_drift: f64,
    pub steps: usize,
    pub action: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepMetadata {
    pub model: String,
    pub params: ModelConfig,
    pub tau_a: f64,
    pub tau_l: Option<f64>,
    pub version: String,
    pub g0: f64,
    pub g_tau: f64,
    pub protocols: Vec<Protocol>,
    pub tau_grid: Vec<f64>,
    /// True when any row failed the step-doubling check.
    pub partial: bool,
    /// `(τ, protocol)` of the rows that did not converge.
    pub unconverged: Vec<(f64, Protocol)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub metadata: SweepMetadata,
}

impl SweepResult {
    pub fn is_partial(&self) -> bool {
        self.metadata.partial
    }

    /// `(τ, F)` of one protocol, in grid order.
    pub fn curve(&self, protocol: Protocol) -> Vec<(f64, f64)> {
        self.rows
            .iter()
            .filter(|r| r.protocol == protocol)
            .map(|r| (r.tau, r.fidelity))
            .collect()
    }
}

/// Smallest grid duration at which `protocol` reaches fidelity `f_min`.
pub fn threshold_time(result: &SweepResult, protocol: Protocol, f_min: f64) -> Result<f64> {
    let mut curve = result.curve(protocol);
    curve.sort_by(|a, b| a.0.total_cmp(&b.0));
    curve
        .into_iter()
        .find(|&(_, f)| f >= f_min)
        .map(|(t, _)| t)
        .ok_or(Error::ThresholdNotAttained(f_min))
}

/// Run a sweep on the global rayon pool.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    run_sweep_with(spec, &EvolveOptions::default())
}

pub fn run_sweep_with(spec: &SweepSpec, opts: &EvolveOptions) -> Result<SweepResult> {
    let (model, g0, g_tau, taus) = spec.resolve()?;
    let action_model = model.action_model()?;
    let ramps = spec
        .protocols
        .iter()
        .map(|&p| build_ramp(&model, p, g0, g_tau))
        .collect::<Result<Vec<_>>>()?;

    let jobs: Vec<(usize, usize)> = (0..taus.len())
        .flat_map(|t| (0..ramps.len()).map(move |p| (t, p)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(ti, pi)| {
            let tau = taus[ti];
            let ramp = &ramps[pi];
            let steps = default_steps(&model, ramp, tau);
            let res = evolve_with(&model, ramp, tau, steps, opts)?;
            Ok(SweepRow {
                tau,
                protocol: spec.protocols[pi],
                fidelity: res.fidelity,
                norm_drift: res.norm_drift,
                steps: res.steps,
                action: evaluate_action(&action_model, ramp, tau)?,
                converged: res.converged,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let t = model.timescales(g0, g_tau);
    let unconverged: Vec<(f64, Protocol)> = rows
        .iter()
        .filter(|r| !r.converged)
        .map(|r| (r.tau, r.protocol))
        .collect();
    Ok(SweepResult {
        metadata: SweepMetadata {
            model: model.name().to_string(),
            params: model.params(),
            tau_a: t.tau_a,
            tau_l: t.tau_l,
            version: env!("CARGO_PKG_VERSION").to_string(),
            g0,
            g_tau,
            protocols: spec.protocols.clone(),
            tau_grid: taus,
            partial: !unconverged.is_empty(),
            unconverged,
        },
        rows,
    })
}

/// One panel of the reference figure set.
#[derive(Debug, Clone, PartialEq)]
pub struct FigurePanel {
    /// File stem, e.g. `fig2a_ising_n20`.
    pub name: &'static str,
    pub spec: SweepSpec,
}

/// The six fidelity panels: Landau-Zener; Ising with N = 20, 30, 60; fully
/// connected with η = 10, 100. `points` overrides the default 60-point grid.
pub fn figure_panels(points: Option<usize>) -> Result<Vec<FigurePanel>> {
    use Protocol::*;
    let defs: [(&str, ModelConfig, Vec<Protocol>); 6] = [
        (
            "fig1_lz",
            ModelConfig::Lz { delta: 1.0 },
            vec![Linear, Action],
        ),
        (
            "fig2a_ising_n20",
            ModelConfig::Ising { n: 20, omega: 1.0 },
            vec![Linear, Action],
        ),
        (
            "fig2b_ising_n30",
            ModelConfig::Ising { n: 30, omega: 1.0 },
            vec![Linear, Action],
        ),
        (
            "fig2c_ising_n60",
            ModelConfig::Ising { n: 60, omega: 1.0 },
            vec![Linear, Action],
        ),
        (
            "fig3b_fc_eta10",
            ModelConfig::Fc {
                eta: 10.0,
                omega: 1.0,
                n_max: None,
            },
            vec![Linear, Action, Garbe],
        ),
        (
            "fig3c_fc_eta100",
            ModelConfig::Fc {
                eta: 100.0,
                omega: 1.0,
                n_max: None,
            },
            vec![Linear, Action, Garbe],
        ),
    ];
    defs.into_iter()
        .map(|(name, model, protocols)| {
            let built = model.build()?;
            let (g0, g_tau) = built.default_endpoints();
            let mut grid = TauGrid::default_for(&built, g0, g_tau);
            if let (Some(p), TauGrid::Log { points, .. }) = (points, &mut grid) {
                *points = p;
            }
            Ok(FigurePanel {
                name,
                spec: SweepSpec::new(model, protocols)
                    .with_endpoints(g0, g_tau)
                    .with_grid(grid),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lz_spec() -> SweepSpec {
        SweepSpec::new(
            ModelConfig::Lz { delta: 1.0 },
            vec![Protocol::Linear, Protocol::Action],
        )
    }

    #[test]
    fn default_grids() {
        let (_, g0, g1, taus) = lz_spec().resolve().unwrap();
        assert_eq!((g0, g1), (-10.0, 10.0));
        assert_eq!(taus.len(), 60);
        assert!((taus[0] - 0.1).abs() < 1e-14 && (taus[59] - 100.0).abs() < 1e-10);
        let ising = SweepSpec::new(
            ModelConfig::Ising { n: 20, omega: 1.0 },
            vec![Protocol::Action],
        );
        let (_, g0, g1, taus) = ising.resolve().unwrap();
        assert_eq!((g0, g1), (0.0, 2.0));
        assert!((taus[59] - 50.0).abs() < 1e-10);
    }

    #[test]
    fn spec_validation() {
        let empty = SweepSpec::new(ModelConfig::Lz { delta: 1.0 }, vec![]);
        assert!(empty.resolve().is_err());
        let garbe = SweepSpec::new(ModelConfig::Lz { delta: 1.0 }, vec![Protocol::Garbe]);
        assert!(garbe.resolve().is_err());
        let bad = lz_spec().with_grid(TauGrid::Explicit {
            values: vec![1.0, 0.5],
        });
        assert!(bad.resolve().is_err());
        let neg = lz_spec().with_grid(TauGrid::Log {
            min: -1.0,
            max: 1.0,
            points: 3,
        });
        assert!(neg.resolve().is_err());
        let m = ModelSystem::LandauZener(crate::models::LandauZener::new(1.0).unwrap());
        assert!(build_ramp(&m, Protocol::Action, -10.0, 5.0).is_err());
    }

    #[test]
    fn spec_json() {
        let json = r#"{
            "model": {"model": "lz", "delta": 1.0},
            "protocols": ["linear", "action"],
            "tau_grid": {"spacing": "log", "min": 0.1, "max": 100, "points": 60},
            "output": "out/lz.csv"
        }"#;
        let spec: SweepSpec = serde_json::from_str(json).unwrap();
        assert_eq!(spec.protocols, vec![Protocol::Linear, Protocol::Action]);
        assert!(serde_json::from_str::<SweepSpec>(
            r#"{"model": {"model": "lz", "delta": 1}, "protocols": [], "bogus": 1}"#
        )
        .is_err());
    }

    fn fake(curve: &[(f64, f64)]) -> SweepResult {
        let rows = curve
            .iter()
            .map(|&(tau, fidelity)| SweepRow {
                tau,
                protocol: Protocol::Linear,
                fidelity,
                norm_drift: 0.0,
                steps: 1000,
                action: 0.0,
                converged: true,
            })
            .collect();
        SweepResult {
            rows,
            metadata: SweepMetadata {
                model: "lz".into(),
                params: ModelConfig::Lz { delta: 1.0 },
                tau_a: 1.0,
                tau_l: None,
                version: "0".into(),
                g0: -10.0,
                g_tau: 10.0,
                protocols: vec![Protocol::Linear],
                tau_grid: curve.iter().map(|c| c.0).collect(),
                partial: false,
                unconverged: vec![],
            },
        }
    }

    #[test]
    fn threshold_examples() {
        let r = fake(&[(1.0, 0.2), (2.0, 0.7), (3.0, 0.995), (4.0, 1.0)]);
        assert_eq!(threshold_time(&r, Protocol::Linear, 0.99).unwrap(), 3.0);
        let low = fake(&[(1.0, 0.2), (2.0, 0.5)]);
        assert!(matches!(
            threshold_time(&low, Protocol::Linear, 0.99),
            Err(Error::ThresholdNotAttained(_))
        ));
        assert!(threshold_time(&r, Protocol::Action, 0.5).is_err());
    }

    #[test]
    fn small_sweep_runs() {
        let spec = lz_spec().with_grid(TauGrid::Explicit {
            values: vec![0.5, 5.0],
        });
        let r = run_sweep(&spec).unwrap();
        assert_eq!(r.rows.len(), 4);
        assert_eq!(r.rows[0].protocol, Protocol::Linear);
        assert_eq!(r.rows[1].protocol, Protocol::Action);
        assert!(r
            .rows
            .iter()
            .all(|row| row.converged && row.fidelity <= 1.0 + 1e-9));
        assert!(!r.is_partial());
        assert!(r.rows[3].fidelity > r.rows[2].fidelity);
        assert_eq!(figure_panels(None).unwrap().len(), 6);
    }
}
