use nalgebra::{DMatrix, DVector};

use crate::{Error, Result, C64};

/// Complex amplitudes over a model's working basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector(DVector<C64>);

impl StateVector {
    pub fn new(amplitudes: DVector<C64>) -> Self {
        Self(amplitudes)
    }

    pub fn from_slice(amplitudes: &[C64]) -> Self {
        Self(DVector::from_column_slice(amplitudes))
    }

    /// Basis vector `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = DVector::zeros(dim);
        v[index] = C64::new(1.0, 0.0);
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.0
    }

    pub fn into_inner(self) -> DVector<C64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(self.0.dotc(&other.0))
    }

    /// Multiply by a global phase `e^{iφ}`.
    pub fn with_phase(mut self, phi: f64) -> Self {
        let p = C64::from_polar(1.0, phi);
        self.0.iter_mut().for_each(|a| *a *= p);
        self
    }

    /// Rotate the global phase so the largest-magnitude amplitude (first one
    /// on ties) is real and positive.
    pub(crate) fn fix_phase(mut self) -> Self {
        let max = self.0.iter().map(|a| a.norm()).fold(0.0, f64::max);
        if max == 0.0 {
            return self;
        }
        let pivot = self
            .0
            .iter()
            .find(|a| a.norm() >= max * (1.0 - 1e-12))
            .copied()
            .unwrap_or(C64::new(1.0, 0.0));
        let rot = pivot.conj() / pivot.norm();
        self.0.iter_mut().for_each(|a| *a *= rot);
        self
    }
}

/// Lowest eigenpair of a Hermitian matrix, eigenvector normalized with the
/// phase convention of [`StateVector`].
pub fn ground_state(h: &DMatrix<C64>) -> Result<(f64, StateVector)> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch(h.nrows(), h.ncols()));
    }
    let eig = h.clone().symmetric_eigen();
    lowest_pair(eig.eigenvalues.as_slice(), |i| {
        eig.eigenvectors.column(i).into_owned()
    })
}

/// Real-symmetric variant of [`ground_state`].
pub fn ground_state_real(h: &DMatrix<f64>) -> Result<(f64, StateVector)> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch(h.nrows(), h.ncols()));
    }
    let eig = h.clone().symmetric_eigen();
    lowest_pair(eig.eigenvalues.as_slice(), |i| {
        eig.eigenvectors.column(i).map(|x| C64::new(x, 0.0))
    })
}

fn lowest_pair(
    values: &[f64],
    vector: impl Fn(usize) -> DVector<C64>,
) -> Result<(f64, StateVector)> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let e0 = values[order[0]];
    if let Some(&next) = order.get(1) {
        let split = values[next] - e0;
        if split <= 1e-12 * e0.abs().max(1.0) {
            return Err(Error::DegenerateGroundState(split));
        }
    }
    let v = vector(order[0]);
    let v = &v / C64::new(v.norm(), 0.0);
    Ok((e0, StateVector(v).fix_phase()))
}

/// Ground state of the real traceless two-level Hamiltonian `z σz + x σx`,
/// in closed form. Requires `(z, x) ≠ (0, 0)`.
pub(crate) fn two_level_ground(z: f64, x: f64) -> [C64; 2] {
    let r = z.hypot(x);
    let (a, b) = if z >= 0.0 { (x, -(z + r)) } else { (r - z, -x) };
    let n = a.hypot(b);
    let (mut a, mut b) = (a / n, b / n);
    // phase convention: largest component positive, first on ties
    let pivot = if a.abs() >= b.abs() * (1.0 - 1e-12) {
        a
    } else {
        b
    };
    if pivot < 0.0 {
        a = -a;
        b = -b;
    }
    [C64::new(a, 0.0), C64::new(b, 0.0)]
}

/// `max |H - H†|` entrywise.
pub fn hermiticity_defect(h: &DMatrix<C64>) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..h.nrows() {
        for j in 0..h.ncols() {
            worst = worst.max((h[(i, j)] - h[(j, i)].conj()).norm());
        }
    }
    worst
}
