//! Diabatic occupations and their long-time averages.

use num_traits::Float;

use crate::linalg::CMatrix;
use crate::propagator::{DensityState, Trajectory};
use crate::spectral::EigenFrame;
use crate::{units, Error, Result};

/// Diabatic occupations `(ρ↓↓, ρ↑↑)` of a single-qubit state, from `SρS†`.
pub fn diabatic_population(state: &DensityState, frame: &EigenFrame) -> (f64, f64) {
    diabatic_population_of(&state.rho, frame)
}

pub(crate) fn diabatic_population_of(rho: &CMatrix, frame: &EigenFrame) -> (f64, f64) {
    let s = &frame.s;
    // (S ρ S†)_11 without forming the full product.
    let mut p_down = 0.0;
    for a in 0..2 {
        for b in 0..2 {
            p_down += (s[(1, a)] * rho[(a, b)] * s[(1, b)].conj()).re;
        }
    }
    (p_down, 1.0 - p_down)
}

/// How long to wait and how long to average.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AveragingSpec {
    /// T_min in units of the inverse decay rate, rounded up to whole periods.
    pub settle_decay_times: f64,
    /// T_max − T_min in drive periods.
    pub window_periods: u32,
}

impl Default for AveragingSpec {
    fn default() -> Self {
        AveragingSpec {
            settle_decay_times: 8.0,
            window_periods: 500,
        }
    }
}

/// Averaging interval, aligned to whole drive periods.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AveragingWindow {
    pub t_min: f64,
    pub t_max: f64,
    pub settle_periods: u64,
    pub window_periods: u32,
}

impl AveragingSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.settle_decay_times >= 0.0) || !self.settle_decay_times.is_finite() {
            return Err(Error::invalid(
                "settle_decay_times",
                "must be finite and non-negative",
            ));
        }
        if self.window_periods == 0 {
            return Err(Error::invalid("window_periods", "must be at least 1"));
        }
        Ok(())
    }

    /// Window for drive frequency `omega` and decay rate `rate` (1/ns).
    pub fn window(&self, omega: f64, rate: f64) -> Result<AveragingWindow> {
        self.validate()?;
        if !(rate > 0.0) {
            return Err(Error::invalid(
                "decay_rate",
                "averaging needs a positive decay rate",
            ));
        }
        let period = units::period(omega);
        let settle_periods = (self.settle_decay_times / rate / period).ceil() as u64;
        let t_min = settle_periods as f64 * period;
        Ok(AveragingWindow {
            t_min,
            t_max: t_min + self.window_periods as f64 * period,
            settle_periods,
            window_periods: self.window_periods,
        })
    }
}

/// Streaming trapezoid average over `[t_min, t_max]`, fed sample by sample.
#[derive(Clone, Debug)]
pub struct TimeAverager {
    window: AveragingWindow,
    tolerance: f64,
    first: Option<f64>,
    last: Option<(f64, f64)>,
    integral: f64,
}

impl TimeAverager {
    /// `step` is the sampling interval; samples within 1e-6 of a step of the
    /// window edges count as on the edge.
    pub fn new(window: AveragingWindow, step: f64) -> Self {
        TimeAverager {
            window,
            tolerance: 1e-6 * step,
            first: None,
            last: None,
            integral: 0.0,
        }
    }

    pub fn push(&mut self, t: f64, value: f64) {
        if t < self.window.t_min - self.tolerance || t > self.window.t_max + self.tolerance {
            return;
        }
        if let Some((t0, v0)) = self.last {
            self.integral += 0.5 * (t - t0) * (v0 + value);
        } else {
            self.first = Some(t);
        }
        self.last = Some((t, value));
    }

    /// Average over the collected span; fails unless it covers the window.
    pub fn finish(&self, step: f64) -> Result<f64> {
        let slack = step * (1.0 + 1e-6);
        match (self.first, self.last) {
            (Some(t0), Some((t1, _)))
                if t0 <= self.window.t_min + slack
                    && t1 >= self.window.t_max - slack
                    && t1 > t0 =>
            {
                Ok(self.integral / (t1 - t0))
            }
            (_, last) => Err(Error::TrajectoryTooShort {
                t_end: last.map_or(0.0, |l| l.0),
                required: self.window.t_max,
            }),
        }
    }

    pub fn window(&self) -> &AveragingWindow {
        &self.window
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeAverage {
    pub p_down: f64,
    pub p_up: f64,
    pub window: AveragingWindow,
}

/// Trapezoid average of ρ↓↓ over the default window for `decay_rate` (1/ns).
pub fn time_average(traj: &Trajectory, decay_rate: f64) -> Result<TimeAverage> {
    time_average_with(traj, decay_rate, &AveragingSpec::default())
}

pub fn time_average_with(
    traj: &Trajectory,
    decay_rate: f64,
    spec: &AveragingSpec,
) -> Result<TimeAverage> {
    let window = spec.window(traj.meta.omega, decay_rate)?;
    let step = traj.meta.step * traj.meta.sample_stride as f64;
    let mut avg = TimeAverager::new(window, step);
    for s in &traj.samples {
        if s.frame.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: s.frame.dim(),
            });
        }
        avg.push(s.t(), diabatic_population(&s.state, &s.frame).0);
    }
    let p_down = avg.finish(step)?;
    Ok(TimeAverage {
        p_down,
        p_up: 1.0 - p_down,
        window,
    })
}
