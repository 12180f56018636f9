use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::models::state::{ground_state_real, StateVector};
use crate::{Error, Result, C64};

/// Default Fock cutoff for `η ≤ 100`.
pub const DEFAULT_N_MAX: usize = 160;
const MAX_N_MAX: usize = 1280;
const TRUNCATION_TOL: f64 = 1e-10;

/// Bosonic low-energy model of an infinite-range spin system,
///
/// ```text
/// H = ω a†a − (ω g²/4)(a + a†)² + (ω g⁴ / 16η)(a + a†)⁴,
/// ```
///
/// represented on the even-parity Fock states `|0⟩, |2⟩, …, |n_max⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FullyConnectedModel {
    pub eta: f64,
    pub omega: f64,
    pub n_max: usize,
}

/// Symmetric pentadiagonal matrix in the even sector: Fock offsets 0, ±2, ±4
/// map to sector offsets 0, ±1, ±2.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedHamiltonian {
    pub(crate) diag: Vec<f64>,
    pub(crate) off1: Vec<f64>,
    pub(crate) off2: Vec<f64>,
}

impl BandedHamiltonian {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut h = DMatrix::zeros(n, n);
        for i in 0..n {
            h[(i, i)] = self.diag[i];
            if i + 1 < n {
                h[(i, i + 1)] = self.off1[i];
                h[(i + 1, i)] = self.off1[i];
            }
            if i + 2 < n {
                h[(i, i + 2)] = self.off2[i];
                h[(i + 2, i)] = self.off2[i];
            }
        }
        h
    }

    /// `out = H v`.
    pub(crate) fn apply(&self, v: &[C64], out: &mut [C64]) {
        let n = self.dim();
        for i in 0..n {
            let mut acc = v[i] * self.diag[i];
            if i >= 1 {
                acc += v[i - 1] * self.off1[i - 1];
            }
            if i + 1 < n {
                acc += v[i + 1] * self.off1[i];
            }
            if i >= 2 {
                acc += v[i - 2] * self.off2[i - 2];
            }
            if i + 2 < n {
                acc += v[i + 2] * self.off2[i];
            }
            out[i] = acc;
        }
    }

    /// Gershgorin enclosure `[lo, hi]` of the spectrum.
    pub(crate) fn spectral_bounds(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut r = 0.0;
            if i >= 1 {
                r += self.off1[i - 1].abs();
            }
            if i + 1 < n {
                r += self.off1[i].abs();
            }
            if i >= 2 {
                r += self.off2[i - 2].abs();
            }
            if i + 2 < n {
                r += self.off2[i].abs();
            }
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }
}

/// Precomputed operator bands of a [`FullyConnectedModel`].
#[derive(Debug, Clone, PartialEq)]
pub struct FcBands {
    number: BandedHamiltonian,
    quadratic: BandedHamiltonian,
    quartic: BandedHamiltonian,
    eta: f64,
    omega: f64,
}

impl FcBands {
    pub fn hamiltonian(&self, g: f64) -> BandedHamiltonian {
        let mut out = self.number.clone();
        self.fill(g, &mut out);
        out
    }

    /// Overwrite `out` with `H(g)`.
    pub fn fill(&self, g: f64, out: &mut BandedHamiltonian) {
        let q = -0.25 * g * g;
        let r = g.powi(4) / (16.0 * self.eta);
        let w = self.omega;
        let mix = |dst: &mut Vec<f64>, n: &[f64], a: &[f64], b: &[f64]| {
            dst.clear();
            dst.extend(
                n.iter()
                    .zip(a)
                    .zip(b)
                    .map(|((n, a), b)| w * (n + q * a + r * b)),
            );
        };
        mix(
            &mut out.diag,
            &self.number.diag,
            &self.quadratic.diag,
            &self.quartic.diag,
        );
        mix(
            &mut out.off1,
            &self.number.off1,
            &self.quadratic.off1,
            &self.quartic.off1,
        );
        mix(
            &mut out.off2,
            &self.number.off2,
            &self.quadratic.off2,
            &self.quartic.off2,
        );
    }
}

/// `⟨m|(a + a†)²|n⟩` on the untruncated Fock space.
fn x2(m: usize, n: usize) -> f64 {
    let (m, n) = (m as f64, n as f64);
    if m == n {
        2.0 * n + 1.0
    } else if m == n + 2.0 {
        ((n + 1.0) * (n + 2.0)).sqrt()
    } else if m + 2.0 == n {
        (n * (n - 1.0)).sqrt()
    } else {
        0.0
    }
}

/// `⟨m|(a + a†)⁴|n⟩`, summing over intermediate states beyond the cutoff.
fn x4(m: usize, n: usize) -> f64 {
    [n.checked_sub(2), Some(n), Some(n + 2)]
        .into_iter()
        .flatten()
        .map(|p| x2(m, p) * x2(p, n))
        .sum()
}

impl FullyConnectedModel {
    pub fn new(eta: f64, omega: f64) -> Result<Self> {
        Self::with_n_max(eta, omega, DEFAULT_N_MAX)
    }

    pub fn with_n_max(eta: f64, omega: f64, n_max: usize) -> Result<Self> {
        if !(eta > 0.0 && eta.is_finite()) {
            return Err(Error::invalid(format!("η must be positive, got {eta}")));
        }
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::invalid(format!("ω must be positive, got {omega}")));
        }
        if n_max < 4 || !n_max.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "n_max must be even and ≥ 4, got {n_max}"
            )));
        }
        Ok(Self { eta, omega, n_max })
    }

    /// Even-sector dimension `n_max/2 + 1`.
    pub fn dim(&self) -> usize {
        self.n_max / 2 + 1
    }

    fn check_g(g: f64) -> Result<()> {
        if !(0.0..1.0).contains(&g) {
            return Err(Error::invalid(format!("g must lie in [0, 1), got {g}")));
        }
        Ok(())
    }

    /// The three operator bands `a†a`, `(a + a†)²`, `(a + a†)⁴` from which
    /// `H(g)` is assembled.
    pub fn bands(&self) -> FcBands {
        let d = self.dim();
        let band = |f: &dyn Fn(usize, usize) -> f64| BandedHamiltonian {
            diag: (0..d).map(|i| f(2 * i, 2 * i)).collect(),
            off1: (0..d.saturating_sub(1))
                .map(|i| f(2 * i, 2 * i + 2))
                .collect(),
            off2: (0..d.saturating_sub(2))
                .map(|i| f(2 * i, 2 * i + 4))
                .collect(),
        };
        FcBands {
            number: band(&|m, n| if m == n { n as f64 } else { 0.0 }),
            quadratic: band(&x2),
            quartic: band(&x4),
            eta: self.eta,
            omega: self.omega,
        }
    }

    pub fn banded(&self, g: f64) -> BandedHamiltonian {
        self.bands().hamiltonian(g)
    }

    pub fn ground_state(&self, g: f64) -> Result<(f64, StateVector)> {
        Self::check_g(g)?;
        ground_state_real(&self.banded(g).to_dense())
    }

    /// Lowest excitation energy within the even sector.
    pub fn exact_gap(&self, g: f64) -> Result<f64> {
        Self::check_g(g)?;
        let mut e = self.banded(g).to_dense().symmetric_eigenvalues();
        e.as_mut_slice().sort_by(f64::total_cmp);
        Ok(e[1] - e[0])
    }

    /// Thermodynamic-limit gap `2ω√(1 − g²)`.
    pub fn thermodynamic_gap(&self, g: f64) -> f64 {
        2.0 * self.omega * (1.0 - g * g).max(0.0).sqrt()
    }

    /// Ground-state weight on the two highest retained Fock levels.
    pub fn edge_population(&self, g: f64) -> Result<f64> {
        let (_, v) = self.ground_state(g)?;
        let a = v.amplitudes();
        let d = a.len();
        Ok(a[d - 1].norm_sqr() + a[d - 2].norm_sqr())
    }

    /// Double `n_max` until the ground state has negligible weight on the top
    /// two retained levels for every `g` in `[g_lo, g_hi]`.
    pub fn converged_for(mut self, g_lo: f64, g_hi: f64) -> Result<Self> {
        let (a, b) = (g_lo.min(g_hi), g_lo.max(g_hi));
        loop {
            let mut worst: f64 = 0.0;
            for i in 0..=8 {
                let g = a + (b - a) * i as f64 / 8.0;
                worst = worst.max(self.edge_population(g)?);
            }
            if worst < TRUNCATION_TOL {
                return Ok(self);
            }
            if self.n_max * 2 > MAX_N_MAX {
                return Err(Error::Truncation {
                    n_max: self.n_max,
                    population: worst,
                });
            }
            self.n_max *= 2;
        }
    }
}

/// Dense even-sector Hamiltonian at coupling `g`.
pub fn fc_hamiltonian(g: f64, model: &FullyConnectedModel) -> Result<DMatrix<f64>> {
    FullyConnectedModel::check_g(g)?;
    Ok(model.banded(g).to_dense())
}

/// Even-sector state with all weight in the vacuum.
pub fn vacuum(model: &FullyConnectedModel) -> StateVector {
    StateVector::new(DVector::from_fn(model.dim(), |i, _| {
        C64::new(if i == 0 { 1.0 } else { 0.0 }, 0.0)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Dense (a + a†) on a padded basis, powered and then truncated: an
    // independent route to the same matrix elements.
    fn dense_reference(model: &FullyConnectedModel, g: f64) -> DMatrix<f64> {
        let size = model.n_max + 6;
        let mut x = DMatrix::<f64>::zeros(size, size);
        for n in 1..size {
            let v = (n as f64).sqrt();
            x[(n - 1, n)] = v;
            x[(n, n - 1)] = v;
        }
        let x2 = &x * &x;
        let x4 = &x2 * &x2;
        let d = model.dim();
        DMatrix::from_fn(d, d, |i, j| {
            let (m, n) = (2 * i, 2 * j);
            let num = if i == j { n as f64 } else { 0.0 };
            model.omega
                * (num - 0.25 * g * g * x2[(m, n)] + g.powi(4) / (16.0 * model.eta) * x4[(m, n)])
        })
    }

    #[test]
    fn matches_dense_operator_algebra() {
        let m = FullyConnectedModel::with_n_max(10.0, 1.3, 40).unwrap();
        let h = fc_hamiltonian(0.7, &m).unwrap();
        let r = dense_reference(&m, 0.7);
        assert!((&h - &r).abs().max() < 1e-10 * r.abs().max());
    }

    #[test]
    fn bandwidth_and_symmetry() {
        let m = FullyConnectedModel::with_n_max(100.0, 1.0, 40).unwrap();
        let h = fc_hamiltonian(0.9, &m).unwrap();
        for i in 0..h.nrows() {
            for j in 0..h.ncols() {
                assert_eq!(h[(i, j)], h[(j, i)]);
                if i.abs_diff(j) > 2 {
                    assert_eq!(h[(i, j)], 0.0);
                }
            }
        }
        assert!(h[(0, 2)] != 0.0);
    }

    #[test]
    fn harmonic_limit() {
        let m = FullyConnectedModel::with_n_max(10.0, 1.0, 20).unwrap();
        let (e, v) = m.ground_state(0.0).unwrap();
        assert!(e.abs() < 1e-12);
        assert!((v.amplitudes()[0].re - 1.0).abs() < 1e-12);
        let (e, _) = m.ground_state(1e-4).unwrap();
        assert!(e.abs() < 1e-7);
    }

    #[test]
    fn truncation_doubling_converges() {
        let small = FullyConnectedModel::with_n_max(100.0, 1.0, 160).unwrap();
        let big = FullyConnectedModel::with_n_max(100.0, 1.0, 240).unwrap();
        let (e1, _) = small.ground_state(0.9).unwrap();
        let (e2, _) = big.ground_state(0.9).unwrap();
        assert!((e1 - e2).abs() < 1e-10);
    }

    #[test]
    fn auto_doubling_stops_when_converged() {
        let m = FullyConnectedModel::with_n_max(100.0, 1.0, 8).unwrap();
        let m = m.converged_for(0.1, 0.9).unwrap();
        assert!(m.n_max > 8);
        assert!(m.edge_population(0.9).unwrap() < 1e-10);
        let d = FullyConnectedModel::new(10.0, 1.0)
            .unwrap()
            .converged_for(0.1, 0.9)
            .unwrap();
        assert_eq!(d.n_max, DEFAULT_N_MAX);
    }

    #[test]
    fn gershgorin_encloses_spectrum() {
        let m = FullyConnectedModel::with_n_max(10.0, 1.0, 60).unwrap();
        let b = m.banded(0.8);
        let (lo, hi) = b.spectral_bounds();
        let e = b.to_dense().symmetric_eigenvalues();
        assert!(e.iter().all(|&x| x >= lo - 1e-9 && x <= hi + 1e-9));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FullyConnectedModel::new(0.0, 1.0).is_err());
        assert!(FullyConnectedModel::with_n_max(1.0, 1.0, 7).is_err());
        let m = FullyConnectedModel::new(10.0, 1.0).unwrap();
        assert!(fc_hamiltonian(1.0, &m).is_err());
        assert!(fc_hamiltonian(-0.1, &m).is_err());
    }
}
