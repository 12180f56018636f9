use std::fmt;
use std::io::Read;
use std::sync::Arc;

use crate::numerics::{integrate, LinearTable, Tolerance};
use crate::ramp::RampProfile;
use crate::{Error, Result};

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Ingredients of the adiabatic action density `c(g) ġ² / Γ(g)⁴`, where
/// `‖∂ₜH‖² = c(g) ġ²` (Frobenius norm) and `Γ(g)` is the gap estimate.
///
/// The valid domain is the open interval `(lo, hi)`; its endpoints may be
/// used as ramp endpoints but are never sampled by quadrature.
#[derive(Clone)]
pub struct ActionModel {
    name: String,
    weight: ScalarFn,
    gap: ScalarFn,
    domain: (f64, f64),
}

impl fmt::Debug for ActionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ActionModel")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

impl ActionModel {
    pub fn new(
        name: impl Into<String>,
        weight: impl Fn(f64) -> f64 + Send + Sync + 'static,
        gap: impl Fn(f64) -> f64 + Send + Sync + 'static,
        domain: (f64, f64),
    ) -> Result<Self> {
        if !(domain.0 < domain.1) {
            return Err(Error::invalid(format!("empty domain {domain:?}")));
        }
        Ok(Self {
            name: name.into(),
            weight: Arc::new(weight),
            gap: Arc::new(gap),
            domain,
        })
    }

    /// `H = Δσx + gσz`: `c = 2`, `Γ = 2√(g² + Δ²)`.
    pub fn landau_zener(delta: f64) -> Result<Self> {
        if !(delta > 0.0) {
            return Err(Error::invalid(format!("Δ must be positive, got {delta}")));
        }
        Self::new(
            "lz",
            |_| 2.0,
            move |g| 2.0 * (g * g + delta * delta).sqrt(),
            (f64::NEG_INFINITY, f64::INFINITY),
        )
    }

    /// Lowest momentum subspace (`k = π/N`) of the Ising chain:
    /// `c = 8ω²`, `Γ = 4ω√(g² − 2g cos(π/N) + 1)`.
    pub fn ising(n: usize, omega: f64) -> Result<Self> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "chain length must be even and ≥ 4, got {n}"
            )));
        }
        if !(omega > 0.0) {
            return Err(Error::invalid(format!("ω must be positive, got {omega}")));
        }
        let cos_k = (std::f64::consts::PI / n as f64).cos();
        Self::new(
            format!("ising-{n}"),
            move |_| 8.0 * omega * omega,
            move |g| 4.0 * omega * (g * g - 2.0 * g * cos_k + 1.0).sqrt(),
            (f64::NEG_INFINITY, f64::INFINITY),
        )
    }

    /// Density `[α γ² / ((g − β)² + γ²)]²`.
    pub fn lorentzian(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        if !(gamma > 0.0) {
            return Err(Error::invalid(format!("γ must be positive, got {gamma}")));
        }
        let c = alpha * alpha * gamma.powi(4);
        Self::new(
            "lorentzian",
            move |_| c,
            move |g| ((g - beta).powi(2) + gamma * gamma).sqrt(),
            (f64::NEG_INFINITY, f64::INFINITY),
        )
    }

    /// Fully connected model with the thermodynamic-limit gap:
    /// `c = g²`, `Γ = 2ω√(1 − g²)` on `0 < g < 1`. Constant prefactors of the
    /// exact Frobenius norm are dropped.
    pub fn fully_connected(omega: f64) -> Result<Self> {
        if !(omega > 0.0) {
            return Err(Error::invalid(format!("ω must be positive, got {omega}")));
        }
        Self::new(
            "fc",
            |g| g * g,
            move |g| 2.0 * omega * (1.0 - g * g).sqrt(),
            (0.0, 1.0),
        )
    }

    /// Gap tabulated at increasing `gs`, linearly interpolated, with a
    /// constant drive weight.
    pub fn tabulated(gs: Vec<f64>, gaps: Vec<f64>, weight: f64) -> Result<Self> {
        if gaps.iter().any(|&v| !(v >= 0.0)) {
            return Err(Error::invalid("tabulated gaps must be non-negative"));
        }
        let table = LinearTable::new(gs, gaps)?;
        let domain = table.range();
        Self::new("tabulated", move |_| weight, move |g| table.eval(g), domain)
    }

    /// Read a two-column CSV `(g, gap)` with a header row.
    pub fn from_gap_csv<R: Read>(reader: R, weight: f64) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut gs = Vec::new();
        let mut gaps = Vec::new();
        for record in rdr.records() {
            let record = record?;
            if record.len() != 2 {
                return Err(Error::invalid(format!(
                    "expected 2 columns, got {}",
                    record.len()
                )));
            }
            let parse = |i: usize| {
                record[i]
                    .parse::<f64>()
                    .map_err(|e| Error::invalid(format!("bad number {:?}: {e}", &record[i])))
            };
            gs.push(parse(0)?);
            gaps.push(parse(1)?);
        }
        Self::tabulated(gs, gaps, weight)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn weight(&self, g: f64) -> f64 {
        (self.weight)(g)
    }

    pub fn gap(&self, g: f64) -> f64 {
        (self.gap)(g)
    }

    /// `A(g) = c(g) / Γ(g)⁴`, the coefficient of `ġ²` in the density.
    pub fn coefficient(&self, g: f64) -> f64 {
        self.weight(g) / self.gap(g).powi(4)
    }

    /// `√A(g)`, the integrand of the first-integral solution.
    pub fn sqrt_coefficient(&self, g: f64) -> f64 {
        self.weight(g).sqrt() / self.gap(g).powi(2)
    }

    /// Action density in rescaled time, `A(G) (dG/ds)²`.
    pub fn density(&self, g: f64, slope: f64) -> f64 {
        if slope == 0.0 {
            return 0.0;
        }
        self.coefficient(g) * slope * slope
    }

    pub(crate) fn check_endpoint(&self, g: f64) -> Result<()> {
        let (lo, hi) = self.domain;
        if g.is_finite() && g >= lo && g <= hi {
            Ok(())
        } else {
            Err(Error::OutsideDomain { value: g, lo, hi })
        }
    }
}

/// Adiabatic action of `ramp` run over duration `tau`,
/// `S = (1/τ) ∫₀¹ c(G) (dG/ds)² / Γ(G)⁴ ds`.
pub fn evaluate_action(model: &ActionModel, ramp: &RampProfile, tau: f64) -> Result<f64> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::invalid(format!(
            "duration must be positive, got {tau}"
        )));
    }
    model.check_endpoint(ramp.g0())?;
    model.check_endpoint(ramp.g_tau())?;
    let integral = integrate(
        |s| model.density(ramp.value(s), ramp.derivative(s)),
        0.0,
        1.0,
        Tolerance::default(),
    )?;
    Ok(integral.value / tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ramp::{constant_ramp, fc_optimal_ramp, linear_ramp, lz_optimal_ramp, RampSpec};

    #[test]
    fn constant_ramp_has_zero_action() {
        let m = ActionModel::landau_zener(1.0).unwrap();
        assert_eq!(evaluate_action(&m, &constant_ramp(3.0), 2.0).unwrap(), 0.0);
    }

    #[test]
    fn lz_density_matches_closed_form() {
        let m = ActionModel::landau_zener(1.3).unwrap();
        for &g in &[-5.0, -0.2, 0.0, 2.5] {
            let expect = 1.0 / (8.0 * (1.69 + g * g) * (1.69 + g * g));
            assert!((m.coefficient(g) - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn ising_density_matches_closed_form() {
        let m = ActionModel::ising(20, 1.0).unwrap();
        let c = (std::f64::consts::PI / 20.0).cos();
        for &g in &[0.0, 0.7, 1.0, 1.9] {
            let q = g * g - 2.0 * g * c + 1.0;
            assert!((m.coefficient(g) - 1.0 / (32.0 * q * q)).abs() < 1e-13);
        }
    }

    #[test]
    fn optimal_lz_action_is_closed_form() {
        // Along the extremal S = (∫ √A dg)² / τ.
        let m = ActionModel::landau_zener(1.0).unwrap();
        let r = lz_optimal_ramp(-10.0, 1.0).unwrap();
        let s = evaluate_action(&m, &r, 2.0).unwrap();
        let expect = (2.0 * 10f64.atan()).powi(2) / 8.0 / 2.0;
        assert!((s - expect).abs() < 1e-9 * expect, "{s} vs {expect}");
    }

    #[test]
    fn action_scales_inversely_with_duration() {
        let m = ActionModel::fully_connected(1.0).unwrap();
        let r = linear_ramp(&RampSpec::new(0.1, 0.9, 1.0).unwrap());
        let s1 = evaluate_action(&m, &r, 1.0).unwrap();
        let s4 = evaluate_action(&m, &r, 4.0).unwrap();
        assert!((s1 - 4.0 * s4).abs() < 1e-12 * s1);
    }

    #[test]
    fn rejects_out_of_domain_ramps() {
        let m = ActionModel::fully_connected(1.0).unwrap();
        let r = linear_ramp(&RampSpec::new(0.5, 1.5, 1.0).unwrap());
        assert!(matches!(
            evaluate_action(&m, &r, 1.0),
            Err(Error::OutsideDomain { .. })
        ));
        let ok = fc_optimal_ramp(0.1, 0.9).unwrap();
        assert!(evaluate_action(&m, &ok, 0.0).is_err());
    }

    #[test]
    fn gap_table_from_csv() {
        let text = "g,gap\n-2,4\n0,2\n2,4\n";
        let m = ActionModel::from_gap_csv(text.as_bytes(), 2.0).unwrap();
        assert_eq!(m.domain(), (-2.0, 2.0));
        assert_eq!(m.gap(1.0), 3.0);
        assert_eq!(m.weight(0.3), 2.0);
        assert!(ActionModel::from_gap_csv("g,gap\n0,1,2\n".as_bytes(), 1.0).is_err());
        assert!(ActionModel::from_gap_csv("g,gap\n0,x\n1,1\n".as_bytes(), 1.0).is_err());
    }
}
