//! Least-squares extraction of the frequency offset between an analytic and a
//! numerical resonance curve.
//!
//! F(n) = mean_j [a(ω_j − ζn) − b(ω_j)]², with the analytic curve `a`
//! interpolated by a natural cubic spline through its grid samples. The search
//! runs over n ∈ [−n_max, n_max]. Only grid points that stay inside the
//! sampled range for every shift in the search take part, so each F(n) is a
//! mean over the same set of points.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::{Error, Result};

/// Natural cubic spline through `(x_i, y_i)` with strictly ascending `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    /// Second derivatives at the knots.
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn new(x: &[f64], y: &[f64]) -> Result<Self> {
        let n = x.len();
        if n < 2 || y.len() != n {
            return Err(Error::invalid(
                "curve",
                "need at least two samples per curve on a common grid",
            ));
        }
        if x.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::invalid("omega_grid", "must be strictly ascending"));
        }
        let mut m = vec![0.0; n];
        if n > 2 {
            // Thomas algorithm on the interior equations.
            let mut c_prime = vec![0.0; n];
            let mut d_prime = vec![0.0; n];
            for i in 1..n - 1 {
                let h0 = x[i] - x[i - 1];
                let h1 = x[i + 1] - x[i];
                let a = h0;
                let b = 2.0 * (h0 + h1);
                let c = h1;
                let d = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
                let denom = b - a * c_prime[i - 1];
                c_prime[i] = c / denom;
                d_prime[i] = (d - a * d_prime[i - 1]) / denom;
            }
            for i in (1..n - 1).rev() {
                m[i] = d_prime[i] - c_prime[i] * m[i + 1];
            }
        }
        Ok(CubicSpline {
            x: x.to_vec(),
            y: y.to_vec(),
            m,
        })
    }

    /// Value at `t`, or `None` outside `[x_0, x_last]`.
    pub fn eval(&self, t: f64) -> Option<f64> {
        let n = self.x.len();
        if !(t >= self.x[0] && t <= self.x[n - 1]) {
            return None;
        }
        let i = match self.x.partition_point(|&v| v <= t) {
            0 => 0,
            p if p >= n => n - 2,
            p => p - 1,
        };
        let h = self.x[i + 1] - self.x[i];
        let a = (self.x[i + 1] - t) / h;
        let b = (t - self.x[i]) / h;
        Some(
            a * self.y[i]
                + b * self.y[i + 1]
                + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / 6.0,
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShiftFit {
    /// s(ñ) = ζñ in the unit of the grid.
    pub shift: f64,
    pub n: i64,
    pub zeta: f64,
    pub n_max: u32,
    /// F(n) for n = −n_max … n_max.
    pub objective: Vec<f64>,
}

/// Minimizes F(n) over n ∈ [−n_max, n_max]; ties go to the smallest |n|
/// (then to the negative side). A minimum on ±n_max is reported as
/// [`Error::InconclusiveShift`].
pub fn least_squares_shift(
    analytic_curve: &[f64],
    numeric_curve: &[f64],
    grid: &[f64],
    zeta: f64,
    n_max: u32,
) -> Result<ShiftFit> {
    if numeric_curve.len() != grid.len() {
        return Err(Error::DimensionMismatch {
            expected: grid.len(),
            found: numeric_curve.len(),
        });
    }
    if !(zeta > 0.0) || !zeta.is_finite() {
        return Err(Error::invalid("zeta", "must be positive"));
    }
    if n_max == 0 {
        return Err(Error::invalid("n_max", "must be at least 1"));
    }
    let spline = CubicSpline::new(grid, analytic_curve)?;
    let reach = zeta * n_max as f64;
    let (lo, hi) = (grid[0], grid[grid.len() - 1]);
    let used: Vec<usize> = (0..grid.len())
        .filter(|&j| grid[j] - reach >= lo && grid[j] + reach <= hi)
        .collect();
    if used.is_empty() {
        return Err(Error::invalid("n_max", "search range wider than the grid"));
    }
    let objective: Vec<f64> = (-(n_max as i64)..=n_max as i64)
        .map(|n| {
            let s = zeta * n as f64;
            let sum: f64 = used
                .iter()
                .map(|&j| {
                    // Inside the grid by construction of `used`.
                    let a = spline.eval(grid[j] - s).unwrap_or(f64::NAN);
                    (a - numeric_curve[j]).powi(2)
                })
                .sum();
            sum / used.len() as f64
        })
        .collect();

    let centre = n_max as i64;
    let mut best = 0i64;
    let mut best_value = objective[centre as usize];
    for k in 1..=n_max as i64 {
        for n in [-k, k] {
            let v = objective[(centre + n) as usize];
            if v < best_value {
                best_value = v;
                best = n;
            }
        }
    }
    if best.unsigned_abs() == n_max as u64 {
        return Err(Error::InconclusiveShift { n: best });
    }
    Ok(ShiftFit {
        shift: zeta * best as f64,
        n: best,
        zeta,
        n_max,
        objective,
    })
}

/// Defaults for the search: ζ a tenth of the first grid spacing and n_max
/// covering twice the separation of the two curve maxima plus one spacing.
pub fn default_search(
    analytic_curve: &[f64],
    numeric_curve: &[f64],
    grid: &[f64],
) -> Result<(f64, u32)> {
    if grid.len() < 2 || analytic_curve.len() != grid.len() || numeric_curve.len() != grid.len() {
        return Err(Error::invalid(
            "curve",
            "need at least two samples per curve on a common grid",
        ));
    }
    let spacing = grid[1] - grid[0];
    let zeta = spacing / 10.0;
    let argmax = |c: &[f64]| {
        c.iter()
            .enumerate()
            .fold(
                (0, f64::NEG_INFINITY),
                |b, (i, &v)| if v > b.1 { (i, v) } else { b },
            )
            .0
    };
    let separation = (grid[argmax(analytic_curve)] - grid[argmax(numeric_curve)]).abs();
    let n_max = ((2.0 * (separation + spacing)) / zeta).ceil().max(10.0) as u32;
    Ok((zeta, n_max))
}
