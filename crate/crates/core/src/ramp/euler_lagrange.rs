use crate::numerics::{integrate, MonotoneCubic, Tolerance};
use crate::ramp::{constant_ramp, ActionModel, RampKind, RampProfile};
use crate::{Error, Result};

// Tolerances for the short node-to-node integrals; the increments are smooth
// and tiny, so these are reached in one or two Kronrod panels.
const STEP_TOL: Tolerance = Tolerance {
    abs: 1e-16,
    rel: 1e-14,
    max_intervals: 200,
};

/// Minimize the action of `model` between `g0` and `g_tau`.
///
/// The Lagrangian `A(g) ġ²` has no explicit time dependence, so
/// `A(G) (dG/ds)²` is conserved along the extremal and
///
/// ```text
/// s(g) = ∫_{g0}^{g} √A / ∫_{g0}^{g_τ} √A,
/// ```
///
/// which is inverted node by node on a uniform grid in `s`. Node slopes come
/// from the conservation law, and the profile is a monotone cubic through
/// them.
pub fn solve_euler_lagrange(
    model: &ActionModel,
    g0: f64,
    g_tau: f64,
    grid_size: usize,
) -> Result<RampProfile> {
    if grid_size < 3 {
        return Err(Error::invalid(format!(
            "grid_size must be at least 3, got {grid_size}"
        )));
    }
    model.check_endpoint(g0)?;
    model.check_endpoint(g_tau)?;
    if g0 == g_tau {
        return Ok(constant_ramp(g0).with_kind(RampKind::NumericEl));
    }

    let root = |g: f64| model.sqrt_coefficient(g);
    reject_flat_stretches(&root, g0, g_tau, 4 * grid_size)?;

    let divergent = |_: Error| Error::DivergentAction {
        from: g0,
        to: g_tau,
    };
    let total = integrate(root, g0, g_tau, Tolerance::default())
        .map_err(divergent)?
        .value;
    if !total.is_finite() {
        return Err(Error::DivergentAction {
            from: g0,
            to: g_tau,
        });
    }
    if total == 0.0 {
        return Err(Error::DegenerateAction(g0));
    }

    let (lo_end, hi_end) = (g0.min(g_tau), g0.max(g_tau));
    let last = grid_size - 1;
    let mut s_nodes = Vec::with_capacity(grid_size);
    let mut g_nodes = Vec::with_capacity(grid_size);
    s_nodes.push(0.0);
    g_nodes.push(g0);

    let mut g_prev = g0;
    let mut f_prev = 0.0;
    for i in 1..last {
        let s = i as f64 / last as f64;
        let target = s * total;
        // F(g) - target is increasing in g on [lo, hi].
        let (mut lo, mut hi) = if g_tau > g0 {
            (g_prev, hi_end)
        } else {
            (lo_end, g_prev)
        };
        let residual = |g: f64| -> Result<f64> {
            let inc = integrate(root, g_prev, g, STEP_TOL)
                .or_else(|_| integrate(root, g_prev, g, Tolerance::default()))
                .map_err(divergent)?;
            Ok(f_prev + inc.value - target)
        };

        let mut g = match g_nodes.len() {
            1 => g_prev + (g_tau - g0) / last as f64,
            n => 2.0 * g_nodes[n - 1] - g_nodes[n - 2],
        };
        if !(g > lo && g < hi) {
            g = 0.5 * (lo + hi);
        }
        let mut r = residual(g)?;
        for _ in 0..200 {
            if r < 0.0 {
                lo = g;
            } else {
                hi = g;
            }
            let d = root(g);
            let mut next = g - r / d;
            if !(next > lo && next < hi) || !next.is_finite() {
                next = 0.5 * (lo + hi);
            }
            let converged = (next - g).abs() <= 2.0 * f64::EPSILON * g.abs().max(1e-300)
                || hi - lo <= 4.0 * f64::EPSILON * g.abs().max(1e-300)
                || r.abs() <= 2.0 * f64::EPSILON * total.abs();
            if converged {
                break;
            }
            g = next;
            r = residual(g)?;
        }
        f_prev = target + r;
        g_prev = g;
        s_nodes.push(s);
        g_nodes.push(g);
    }
    s_nodes.push(1.0);
    g_nodes.push(g_tau);

    // dG/ds = total / √A(G) from the conserved quantity.
    let mut slopes = Vec::with_capacity(grid_size);
    for (i, &g) in g_nodes.iter().enumerate() {
        let d = root(g);
        let interior = i != 0 && i != last;
        if interior && !(d > 0.0 && d.is_finite()) {
            return Err(Error::DegenerateAction(g));
        }
        let m = total / d;
        slopes.push(if m.is_finite() {
            m
        } else {
            // √A vanishes at an endpoint; the limiter caps this at 3x secant.
            let j = if i == 0 { 1 } else { last - 1 };
            3.0 * (g_nodes[i] - g_nodes[j]) / (s_nodes[i] - s_nodes[j])
        });
    }

    let curve = MonotoneCubic::with_slopes(s_nodes, g_nodes, slopes)?;
    Ok(RampProfile::sampled(g0, g_tau, curve))
}

fn reject_flat_stretches(
    root: &impl Fn(f64) -> f64,
    g0: f64,
    g1: f64,
    samples: usize,
) -> Result<()> {
    let mut prev_zero = false;
    for i in 1..samples {
        let g = g0 + (g1 - g0) * i as f64 / samples as f64;
        let v = root(g);
        if v.is_nan() || v < 0.0 {
            return Err(Error::invalid(format!(
                "action coefficient invalid at g = {g}: {v}"
            )));
        }
        let zero = v == 0.0;
        if zero && prev_zero {
            return Err(Error::DegenerateAction(g));
        }
        prev_zero = zero;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ramp::{fc_optimal_ramp, lz_optimal_ramp};

    #[test]
    fn constant_coefficient_gives_linear_ramp() {
        let m = ActionModel::new("flat", |_| 3.0, |_| 1.5, (-10.0, 10.0)).unwrap();
        let r = solve_euler_lagrange(&m, -1.0, 2.0, 101).unwrap();
        assert_eq!(r.kind(), RampKind::NumericEl);
        for i in 0..=57 {
            let s = i as f64 / 57.0;
            assert!((r.value(s) - (-1.0 + 3.0 * s)).abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_endpoints_give_constant() {
        let m = ActionModel::landau_zener(1.0).unwrap();
        let r = solve_euler_lagrange(&m, 0.4, 0.4, 11).unwrap();
        assert_eq!(r.value(0.3), 0.4);
        assert_eq!(r.derivative(0.3), 0.0);
    }

    #[test]
    fn decreasing_sweep() {
        let m = ActionModel::landau_zener(1.0).unwrap();
        let r = solve_euler_lagrange(&m, 10.0, -10.0, 2001).unwrap();
        let exact = lz_optimal_ramp(10.0, 1.0).unwrap();
        for i in 0..=400 {
            let s = i as f64 / 400.0;
            assert!((r.value(s) - exact.value(s)).abs() < 1e-6);
        }
    }

    #[test]
    fn divergent_integrand_is_reported() {
        // √A ~ 1/(4(1 - g)) near the closing gap: logarithmic divergence.
        let m = ActionModel::fully_connected(1.0).unwrap();
        let err = solve_euler_lagrange(&m, 0.1, 1.0, 101).unwrap_err();
        assert!(matches!(err, Error::DivergentAction { .. }), "{err}");
    }

    #[test]
    fn flat_stretch_is_rejected() {
        let m = ActionModel::new(
            "gappy",
            |g: f64| if g.abs() < 0.5 { 0.0 } else { 1.0 },
            |_| 1.0,
            (-2.0, 2.0),
        )
        .unwrap();
        let err = solve_euler_lagrange(&m, -1.0, 1.0, 101).unwrap_err();
        assert!(matches!(err, Error::DegenerateAction(_)), "{err}");
        let zero = ActionModel::new("zero", |_| 0.0, |_| 1.0, (-2.0, 2.0)).unwrap();
        assert!(solve_euler_lagrange(&zero, -1.0, 1.0, 11).is_err());
    }

    #[test]
    fn endpoint_zero_of_weight_is_allowed() {
        // c(g) = g² vanishes at g = 0; the extremal leaves it like √s.
        let m = ActionModel::new(
            "fc-open",
            |g| g * g,
            |g| 2.0 * (1.0 - g * g).sqrt(),
            (-1.0, 1.0),
        )
        .unwrap();
        let r = solve_euler_lagrange(&m, 0.0, 0.9, 2001).unwrap();
        // Closed form with g0 → 0: G = √(1 - (1 - g_τ²)^s).
        for i in 1..=100 {
            let s = i as f64 / 100.0;
            let exact = (1.0 - 0.19f64.powf(s)).sqrt();
            assert!((r.value(s) - exact).abs() < 1e-4, "s={s}");
        }
    }

    #[test]
    fn rejects_out_of_domain_and_tiny_grid() {
        let m = ActionModel::fully_connected(1.0).unwrap();
        assert!(solve_euler_lagrange(&m, 0.1, 1.2, 101).is_err());
        assert!(solve_euler_lagrange(&m, 0.1, 0.9, 2).is_err());
        let r = solve_euler_lagrange(&m, 0.1, 0.9, 2001).unwrap();
        let exact = fc_optimal_ramp(0.1, 0.9).unwrap();
        assert!((r.value(0.5) - exact.value(0.5)).abs() < 1e-8);
    }
}
