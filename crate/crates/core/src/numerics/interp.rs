use crate::{Error, Result};

fn check_abscissae(xs: &[f64]) -> Result<()> {
    if xs.len() < 2 {
        return Err(Error::invalid("interpolation needs at least two nodes"));
    }
    if xs.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::invalid(
            "interpolation nodes must be strictly increasing",
        ));
    }
    Ok(())
}

fn locate(xs: &[f64], x: f64) -> usize {
    let i = xs.partition_point(|&xi| xi <= x);
    i.clamp(1, xs.len() - 1) - 1
}

/// Piecewise-cubic Hermite interpolant whose slopes are limited so that the
/// interpolant is monotone on every interval where the data are.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    /// Build from node values and (possibly exact) node slopes. Slopes that
    /// would break monotonicity are clipped (Fritsch–Carlson).
    pub fn with_slopes(xs: Vec<f64>, ys: Vec<f64>, mut slopes: Vec<f64>) -> Result<Self> {
        check_abscissae(&xs)?;
        if ys.len() != xs.len() || slopes.len() != xs.len() {
            return Err(Error::DimensionMismatch(
                xs.len(),
                ys.len().min(slopes.len()),
            ));
        }
        for i in 0..xs.len() - 1 {
            let secant = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
            if secant == 0.0 {
                slopes[i] = 0.0;
                slopes[i + 1] = 0.0;
                continue;
            }
            // wrong-signed slopes are flattened
            if slopes[i] * secant < 0.0 {
                slopes[i] = 0.0;
            }
            if slopes[i + 1] * secant < 0.0 {
                slopes[i + 1] = 0.0;
            }
            let a = slopes[i] / secant;
            let b = slopes[i + 1] / secant;
            let r2 = a * a + b * b;
            if r2 > 9.0 {
                let t = 3.0 / r2.sqrt();
                slopes[i] = t * a * secant;
                slopes[i + 1] = t * b * secant;
            }
        }
        Ok(Self { xs, ys, slopes })
    }

    /// Fritsch–Carlson slopes estimated from the data alone.
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        check_abscissae(&xs)?;
        let n = xs.len();
        let secants: Vec<f64> = (0..n - 1)
            .map(|i| (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]))
            .collect();
        let mut slopes = vec![0.0; n];
        slopes[0] = secants[0];
        slopes[n - 1] = secants[n - 2];
        for i in 1..n - 1 {
            slopes[i] = if secants[i - 1] * secants[i] <= 0.0 {
                0.0
            } else {
                0.5 * (secants[i - 1] + secants[i])
            };
        }
        Self::with_slopes(xs, ys, slopes)
    }

    pub fn nodes(&self) -> (&[f64], &[f64]) {
        (&self.xs, &self.ys)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let i = locate(&self.xs, x);
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.ys[i]
            + h10 * h * self.slopes[i]
            + h01 * self.ys[i + 1]
            + h11 * h * self.slopes[i + 1]
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let i = locate(&self.xs, x);
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let t2 = t * t;
        let d00 = 6.0 * t2 - 6.0 * t;
        let d10 = 3.0 * t2 - 4.0 * t + 1.0;
        let d01 = -6.0 * t2 + 6.0 * t;
        let d11 = 3.0 * t2 - 2.0 * t;
        (d00 * self.ys[i] + d01 * self.ys[i + 1]) / h
            + d10 * self.slopes[i]
            + d11 * self.slopes[i + 1]
    }
}

/// Piecewise-linear table, clamped to the end values outside its range.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearTable {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl LinearTable {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        check_abscissae(&xs)?;
        if ys.len() != xs.len() {
            return Err(Error::DimensionMismatch(xs.len(), ys.len()));
        }
        Ok(Self { xs, ys })
    }

    pub fn range(&self) -> (f64, f64) {
        (self.xs[0], self.xs[self.xs.len() - 1])
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (lo, hi) = self.range();
        if x <= lo {
            return self.ys[0];
        }
        if x >= hi {
            return self.ys[self.ys.len() - 1];
        }
        let i = locate(&self.xs, x);
        let t = (x - self.xs[i]) / (self.xs[i + 1] - self.xs[i]);
        self.ys[i] + t * (self.ys[i + 1] - self.ys[i])
    }
}
