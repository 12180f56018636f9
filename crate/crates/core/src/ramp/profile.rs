use std::fmt;
use std::io::Write;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::numerics::MonotoneCubic;
use crate::{Error, Result};

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Endpoints and duration of a ramp `g(t)`, `t ∈ [0, τ]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RampSpec {
    pub g0: f64,
    pub g_tau: f64,
    pub tau: f64,
}

impl RampSpec {
    pub fn new(g0: f64, g_tau: f64, tau: f64) -> Result<Self> {
        if !(g0.is_finite() && g_tau.is_finite()) {
            return Err(Error::invalid("ramp endpoints must be finite"));
        }
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::invalid(format!(
                "duration must be positive, got {tau}"
            )));
        }
        Ok(Self { g0, g_tau, tau })
    }
}

/// Which construction produced a profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RampKind {
    Constant,
    Linear,
    LzAction,
    FamilyAction,
    FcAction,
    Garbe,
    NumericEl,
    Custom,
}

impl RampKind {
    pub fn tag(self) -> &'static str {
        match self {
            RampKind::Constant => "constant",
            RampKind::Linear => "linear",
            RampKind::LzAction => "lz-action",
            RampKind::FamilyAction => "family-action",
            RampKind::FcAction => "fc-action",
            RampKind::Garbe => "garbe",
            RampKind::NumericEl => "numeric-el",
            RampKind::Custom => "custom",
        }
    }
}

impl fmt::Display for RampKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone)]
enum Shape {
    Constant,
    Linear,
    // G = -Δ tan((2s - 1) θ), θ = atan(g0/Δ)
    Lz {
        delta: f64,
        angle: f64,
    },
    // G = β + γ tan((1 - s) θ0 + s θ1)
    Family {
        beta: f64,
        gamma: f64,
        start: f64,
        end: f64,
    },
    // G = sqrt(a r^s + 1)
    Fc {
        a: f64,
        ln_ratio: f64,
    },
    Garbe,
    Sampled(MonotoneCubic),
    Custom {
        value: ScalarFn,
        slope: Option<ScalarFn>,
    },
}

/// A control trajectory in rescaled time: `g(t) = G(t/τ)`.
///
/// Profiles are immutable and cheap to clone. Evaluation clamps `s` to
/// `[0, 1]` and returns the stored endpoints exactly at (and beyond) the
/// boundaries.
#[derive(Clone)]
pub struct RampProfile {
    g0: f64,
    g_tau: f64,
    kind: RampKind,
    shape: Shape,
}

impl fmt::Debug for RampProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RampProfile")
            .field("g0", &self.g0)
            .field("g_tau", &self.g_tau)
            .field("kind", &self.kind)
            .finish_non_exhaustive()
    }
}

impl RampProfile {
    pub(crate) fn sampled(g0: f64, g_tau: f64, curve: MonotoneCubic) -> Self {
        Self {
            g0,
            g_tau,
            kind: RampKind::NumericEl,
            shape: Shape::Sampled(curve),
        }
    }

    pub(crate) fn with_kind(mut self, kind: RampKind) -> Self {
        self.kind = kind;
        self
    }

    /// A user-supplied profile. `value` must satisfy `value(0) = g0` and
    /// `value(1) = g_tau` for the endpoints to be meaningful; the profile
    /// itself always reports the stored endpoints at `s = 0, 1`. Without a
    /// `slope` the derivative falls back to Richardson-refined finite
    /// differences.
    pub fn custom(
        g0: f64,
        g_tau: f64,
        value: impl Fn(f64) -> f64 + Send + Sync + 'static,
        slope: Option<Arc<dyn Fn(f64) -> f64 + Send + Sync>>,
    ) -> Self {
        Self {
            g0,
            g_tau,
            kind: RampKind::Custom,
            shape: Shape::Custom {
                value: Arc::new(value),
                slope,
            },
        }
    }

    pub fn g0(&self) -> f64 {
        self.g0
    }

    pub fn g_tau(&self) -> f64 {
        self.g_tau
    }

    pub fn kind(&self) -> RampKind {
        self.kind
    }

    /// Nodes `(s_i, G_i)` for sampled (numeric) profiles.
    pub fn samples(&self) -> Option<(&[f64], &[f64])> {
        match &self.shape {
            Shape::Sampled(c) => Some(c.nodes()),
            _ => None,
        }
    }

    /// `G(s)`.
    pub fn value(&self, s: f64) -> f64 {
        if s <= 0.0 {
            return self.g0;
        }
        if s >= 1.0 {
            return self.g_tau;
        }
        self.raw_value(s)
    }

    fn raw_value(&self, s: f64) -> f64 {
        let (g0, g1) = (self.g0, self.g_tau);
        match &self.shape {
            Shape::Constant => g0,
            Shape::Linear => g0 + (g1 - g0) * s,
            Shape::Lz { delta, angle } => -delta * ((2.0 * s - 1.0) * angle).tan(),
            Shape::Family {
                beta,
                gamma,
                start,
                end,
            } => beta + gamma * ((1.0 - s) * start + s * end).tan(),
            Shape::Fc { a, ln_ratio } => (a * (s * ln_ratio).exp() + 1.0).sqrt(),
            Shape::Garbe => (2.0 - 2.0 / (s * s + 1.0)).sqrt() * (g1 - g0) + g0,
            Shape::Sampled(c) => c.eval(s),
            Shape::Custom { value, .. } => value(s),
        }
    }

    /// `dG/ds`, analytic where the construction provides it.
    pub fn derivative(&self, s: f64) -> f64 {
        let s = s.clamp(0.0, 1.0);
        let (g0, g1) = (self.g0, self.g_tau);
        match &self.shape {
            Shape::Constant => 0.0,
            Shape::Linear => g1 - g0,
            Shape::Lz { delta, angle } => {
                let c = ((2.0 * s - 1.0) * angle).cos();
                -2.0 * delta * angle / (c * c)
            }
            Shape::Family {
                gamma, start, end, ..
            } => {
                let c = ((1.0 - s) * start + s * end).cos();
                gamma * (end - start) / (c * c)
            }
            Shape::Fc { a, ln_ratio } => {
                let e = a * (s * ln_ratio).exp();
                e * ln_ratio / (2.0 * (e + 1.0).sqrt())
            }
            Shape::Garbe => (g1 - g0) * std::f64::consts::SQRT_2 / (s * s + 1.0).powf(1.5),
            Shape::Sampled(c) => c.derivative(s),
            Shape::Custom { slope: Some(d), .. } => d(s),
            Shape::Custom { value, slope: None } => richardson_derivative(value.as_ref(), s),
        }
    }

    /// Write `points` uniformly spaced samples as CSV with header `s,g`.
    pub fn write_csv<W: Write>(&self, writer: W, points: usize) -> Result<()> {
        if points < 2 {
            return Err(Error::invalid("a profile export needs at least two points"));
        }
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["s", "g"])?;
        for i in 0..points {
            let s = i as f64 / (points - 1) as f64;
            w.write_record([format!("{s:.11e}"), format!("{:.11e}", self.value(s))])?;
        }
        w.flush().map_err(|e| Error::io("<csv>", e))?;
        Ok(())
    }
}

/// Centered (one-sided at the ends) second-order difference, refined once by
/// Richardson extrapolation.
fn richardson_derivative(f: &(dyn Fn(f64) -> f64 + Send + Sync), s: f64) -> f64 {
    let diff = |h: f64| {
        if s - h < 0.0 {
            (-3.0 * f(s) + 4.0 * f(s + h) - f(s + 2.0 * h)) / (2.0 * h)
        } else if s + h > 1.0 {
            (3.0 * f(s) - 4.0 * f(s - h) + f(s - 2.0 * h)) / (2.0 * h)
        } else {
            (f(s + h) - f(s - h)) / (2.0 * h)
        }
    };
    let h = 1e-4;
    (4.0 * diff(0.5 * h) - diff(h)) / 3.0
}

fn finite(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::invalid(format!("{name} must be finite, got {v}")))
    }
}

pub fn constant_ramp(g: f64) -> RampProfile {
    RampProfile {
        g0: g,
        g_tau: g,
        kind: RampKind::Constant,
        shape: Shape::Constant,
    }
}

/// `G(s) = g0 + (g_τ − g0) s`.
pub fn linear_ramp(spec: &RampSpec) -> RampProfile {
    RampProfile {
        g0: spec.g0,
        g_tau: spec.g_tau,
        kind: RampKind::Linear,
        shape: Shape::Linear,
    }
}

/// Minimal-action ramp for the Landau-Zener crossing, sweeping `g0 → −g0`
/// symmetrically through the avoided crossing at `g = 0`.
pub fn lz_optimal_ramp(g0: f64, delta: f64) -> Result<RampProfile> {
    finite("g0", g0)?;
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::invalid(format!("Δ must be positive, got {delta}")));
    }
    Ok(RampProfile {
        g0,
        g_tau: -g0,
        kind: RampKind::LzAction,
        shape: Shape::Lz {
            delta,
            angle: (g0 / delta).atan(),
        },
    })
}

/// Minimal-action ramp for an action density `∝ [(g − β)² + γ²]⁻²` with the
/// endpoint pinned at `2 − g0` (symmetric about `g = 1`).
pub fn family_optimal_ramp(g0: f64, beta: f64, gamma: f64) -> Result<RampProfile> {
    family_ramp_between(g0, 2.0 - g0, beta, gamma)
}

/// Same density as [`family_optimal_ramp`], with an arbitrary target.
///
/// `G(s) = β + γ tan[(1 − s) atan((g0 − β)/γ) + s atan((g_τ − β)/γ)]`.
pub fn family_ramp_between(g0: f64, g_tau: f64, beta: f64, gamma: f64) -> Result<RampProfile> {
    finite("g0", g0)?;
    finite("g_tau", g_tau)?;
    finite("β", beta)?;
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::invalid(format!("γ must be positive, got {gamma}")));
    }
    Ok(RampProfile {
        g0,
        g_tau,
        kind: RampKind::FamilyAction,
        shape: Shape::Family {
            beta,
            gamma,
            start: ((g0 - beta) / gamma).atan(),
            end: ((g_tau - beta) / gamma).atan(),
        },
    })
}

/// Minimal-action ramp for the transverse-field Ising chain of `n` sites,
/// built from the gap of the lowest momentum subspace only.
pub fn ising_optimal_ramp(g0: f64, n: usize) -> Result<RampProfile> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "chain length must be even and ≥ 4, got {n}"
        )));
    }
    let q = std::f64::consts::PI / n as f64;
    family_optimal_ramp(g0, q.cos(), q.sin())
}

/// Minimal-action ramp for the fully connected model using the
/// thermodynamic-limit gap `2ω√(1 − g²)`.
pub fn fc_optimal_ramp(g0: f64, g_tau: f64) -> Result<RampProfile> {
    for (name, v) in [("g0", g0), ("g_tau", g_tau)] {
        if !(v > 0.0 && v < 1.0) {
            return Err(Error::invalid(format!(
                "{name} must lie in (0, 1), got {v}"
            )));
        }
    }
    let a = g0 * g0 - 1.0;
    let ratio = (g_tau * g_tau - 1.0) / a;
    Ok(RampProfile {
        g0,
        g_tau,
        kind: RampKind::FcAction,
        shape: Shape::Fc {
            a,
            ln_ratio: ratio.ln(),
        },
    })
}

/// Critical-exponent ramp `G(s) = √(2 − 2/(s² + 1)) (g_τ − g0) + g0`.
pub fn garbe_ramp(g0: f64, g_tau: f64) -> Result<RampProfile> {
    finite("g0", g0)?;
    finite("g_tau", g_tau)?;
    Ok(RampProfile {
        g0,
        g_tau,
        kind: RampKind::Garbe,
        shape: Shape::Garbe,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn linear_examples() {
        let r = linear_ramp(&RampSpec::new(0.0, 2.0, 1.0).unwrap());
        assert_eq!(r.value(0.5), 1.0);
        let r = linear_ramp(&RampSpec::new(-10.0, 10.0, 1.0).unwrap());
        assert_eq!(r.value(0.0), -10.0);
        let r = linear_ramp(&RampSpec::new(0.1, 0.9, 1.0).unwrap());
        close(r.value(0.25), 0.3, 1e-15);
    }

    #[test]
    fn ramp_spec_rejects_bad_duration() {
        assert!(RampSpec::new(0.0, 1.0, 0.0).is_err());
        assert!(RampSpec::new(0.0, 1.0, -1.0).is_err());
        assert!(RampSpec::new(f64::NAN, 1.0, 1.0).is_err());
    }

    // Reference values below were evaluated at 30 digits with mpmath.
    #[test]
    fn lz_examples() {
        let r = lz_optimal_ramp(-10.0, 1.0).unwrap();
        assert_eq!(r.value(0.0), -10.0);
        assert_eq!(r.value(1.0), 10.0);
        close(r.value(0.5), 0.0, 1e-15);
        close(r.value(0.25), -0.904_987_562_112_089, 1e-13);
        assert!(lz_optimal_ramp(-10.0, 0.0).is_err());
        assert!(lz_optimal_ramp(-10.0, -1.0).is_err());
    }

    #[test]
    fn lz_is_antisymmetric() {
        let r = lz_optimal_ramp(-7.5, 0.8).unwrap();
        for i in 0..=100 {
            let s = i as f64 / 100.0;
            close(r.value(s), -r.value(1.0 - s), 1e-12);
        }
    }

    #[test]
    fn family_recovers_lz() {
        // β = 0, γ = Δ: general-target form is the LZ ramp itself.
        let lz = lz_optimal_ramp(-4.0, 1.5).unwrap();
        let fam = family_ramp_between(-4.0, 4.0, 0.0, 1.5).unwrap();
        // β = 1: printed form is the LZ ramp shifted to cross at g = 1.
        let printed = family_optimal_ramp(-3.0, 1.0, 1.5).unwrap();
        for i in 0..=200 {
            let s = i as f64 / 200.0;
            close(fam.value(s), lz.value(s), 1e-12);
            close(printed.value(s), 1.0 + lz.value(s), 1e-12);
        }
    }

    #[test]
    fn family_endpoint_is_forced() {
        for (beta, gamma) in [(0.3, 0.2), (1.0, 1.0), (-2.0, 0.01)] {
            let r = family_optimal_ramp(0.0, beta, gamma).unwrap();
            assert_eq!(r.value(1.0), 2.0);
            close(r.raw_value(1.0 - 1e-15), 2.0, 1e-9);
        }
        assert!(family_optimal_ramp(0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn ising_examples() {
        let r = ising_optimal_ramp(0.0, 20).unwrap();
        assert_eq!(r.kind(), RampKind::FamilyAction);
        assert_eq!(r.value(0.0), 0.0);
        assert_eq!(r.value(1.0), 2.0);
        close(r.value(0.5), 0.987_982_473_910_013_6, 1e-13);
        assert!(ising_optimal_ramp(0.0, 21).is_err());
        assert!(ising_optimal_ramp(0.0, 2).is_err());
    }

    #[test]
    fn fc_examples() {
        let r = fc_optimal_ramp(0.1, 0.9).unwrap();
        assert_eq!(r.value(0.0), 0.1);
        assert_eq!(r.value(1.0), 0.9);
        close(r.value(0.5), 0.752_525_767_768_766_3, 1e-13);
        assert!(fc_optimal_ramp(0.0, 0.9).is_err());
        assert!(fc_optimal_ramp(0.1, 1.0).is_err());
    }

    #[test]
    fn garbe_examples() {
        let r = garbe_ramp(0.1, 0.9).unwrap();
        assert_eq!(r.value(0.0), 0.1);
        assert_eq!(r.value(1.0), 0.9);
        close(r.value(0.5), 0.605_964_425_626_940_7, 1e-13);
    }

    #[test]
    fn raw_closed_forms_hit_endpoints() {
        // The formulas themselves, not just the clamped boundaries.
        let cases = [
            lz_optimal_ramp(-10.0, 1.0).unwrap(),
            ising_optimal_ramp(0.0, 60).unwrap(),
            fc_optimal_ramp(0.1, 0.9).unwrap(),
            garbe_ramp(0.1, 0.9).unwrap(),
        ];
        for r in &cases {
            close(r.raw_value(0.0), r.g0(), 1e-12);
            close(r.raw_value(1.0), r.g_tau(), 1e-12);
        }
    }

    #[test]
    fn analytic_derivatives_match_finite_differences() {
        let cases = [
            lz_optimal_ramp(-10.0, 1.0).unwrap(),
            ising_optimal_ramp(0.0, 20).unwrap(),
            fc_optimal_ramp(0.1, 0.9).unwrap(),
            garbe_ramp(0.1, 0.9).unwrap(),
        ];
        for r in &cases {
            let f = r.clone();
            let custom = RampProfile::custom(r.g0(), r.g_tau(), move |s| f.raw_value(s), None);
            for i in 0..=20 {
                let s = i as f64 / 20.0;
                let exact = r.derivative(s);
                let fd = custom.derivative(s);
                assert!(
                    (exact - fd).abs() <= 1e-6 * exact.abs().max(1.0),
                    "{:?} s={s}: {exact} vs {fd}",
                    r.kind()
                );
            }
        }
    }

    #[test]
    fn csv_export_has_header_and_endpoints() {
        let r = lz_optimal_ramp(-10.0, 1.0).unwrap();
        let mut buf = Vec::new();
        r.write_csv(&mut buf, 11).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "s,g");
        assert_eq!(lines.len(), 12);
        assert!(lines[1].ends_with("-1.00000000000e1"));
        assert!(lines[11].ends_with("1.00000000000e1"));
    }

    fn strictly_monotone(r: &RampProfile) -> bool {
        let sign = (r.g_tau() - r.g0()).signum();
        (0..1000).all(|i| {
            let a = r.value(i as f64 / 1000.0);
            let b = r.value((i + 1) as f64 / 1000.0);
            (b - a) * sign > 0.0
        })
    }

    proptest! {
        #[test]
        fn closed_forms_are_monotone_with_exact_endpoints(
            g0 in -20.0f64..-0.1,
            delta in 0.05f64..5.0,
            fc0 in 0.01f64..0.49,
            fc1 in 0.51f64..0.99,
            n in 2usize..40,
        ) {
            let spec = RampSpec::new(g0, -g0, 1.0).unwrap();
            let profiles = [
                linear_ramp(&spec),
                lz_optimal_ramp(g0, delta).unwrap(),
                ising_optimal_ramp(g0.max(-1.9), 2 * n).unwrap(),
                fc_optimal_ramp(fc0, fc1).unwrap(),
                garbe_ramp(fc0, fc1).unwrap(),
            ];
            for r in &profiles {
                prop_assert!((r.value(0.0) - r.g0()).abs() <= 1e-12);
                prop_assert!((r.value(1.0) - r.g_tau()).abs() <= 1e-12);
                prop_assert!(strictly_monotone(r), "{:?}", r);
            }
        }
    }
}
