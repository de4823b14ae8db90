//! Frequency scans of the time-averaged diabatic occupation.
//!
//! A scan point integrates from the prepared state |↑⟩ up to the end of the
//! averaging window and folds ρ↓↓(t) into a streaming trapezoid average, so no
//! trajectory is stored. Points are independent; this module runs them in
//! order and callers may distribute [`scan_point`] over workers themselves.

use alloc::vec::Vec;

use super::averaging::{diabatic_population_of, AveragingSpec, AveragingWindow, TimeAverager};
use crate::propagator::{
    evolve_from, initial_state_2, FrameSource, IntegratorConfig, SingleQubitSystem, System,
};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanSettings {
    pub steps_per_period: u32,
    pub averaging: AveragingSpec,
    pub strict: bool,
}

impl Default for ScanSettings {
    fn default() -> Self {
        ScanSettings {
            steps_per_period: IntegratorConfig::default().steps_per_period,
            averaging: AveragingSpec::default(),
            strict: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanPoint {
    /// Drive angular frequency (rad/ns).
    pub omega: f64,
    pub p_down: f64,
    pub p_up: f64,
    pub window: Option<AveragingWindow>,
    /// Reason the point has no value, if it failed.
    pub error: Option<Error>,
}

impl ScanPoint {
    pub fn ok(&self) -> bool {
        self.error.is_none()
    }

    fn failed(omega: f64, error: Error) -> Self {
        ScanPoint {
            omega,
            p_down: f64::NAN,
            p_up: f64::NAN,
            window: None,
            error: Some(error),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanResult {
    pub points: Vec<ScanPoint>,
    pub settings: ScanSettings,
}

impl ScanResult {
    pub fn omegas(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.omega).collect()
    }

    pub fn p_down(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.p_down).collect()
    }

    pub fn p_up(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.p_up).collect()
    }

    pub fn all_ok(&self) -> bool {
        self.points.iter().all(ScanPoint::ok)
    }

    /// Index of the largest ρ̄↓↓ among successful points.
    pub fn peak(&self) -> Option<usize> {
        self.points
            .iter()
            .enumerate()
            .filter(|(_, p)| p.ok())
            .fold(None, |best: Option<(usize, f64)>, (i, p)| match best {
                Some((_, v)) if v >= p.p_down => best,
                _ => Some((i, p.p_down)),
            })
            .map(|(i, _)| i)
    }
}

fn single(system: &System) -> Result<&SingleQubitSystem> {
    match system {
        System::Single(s) => Ok(s),
        System::Double(_) => Err(Error::invalid(
            "system",
            "frequency scans need a single-qubit system",
        )),
    }
}

/// Time-averaged `(ρ̄↓↓, window)` for the single-qubit `system` driven at `omega`.
pub fn scan_point(
    system: &System,
    omega: f64,
    settings: &ScanSettings,
) -> Result<(f64, AveragingWindow)> {
    let base = single(system)?;
    let drive = base.drive.with_omega(omega);
    drive.validate()?;
    let sys = SingleQubitSystem { drive, ..*base };
    let window = settings.averaging.window(omega, sys.decay.rate)?;
    let mut config = IntegratorConfig {
        steps_per_period: settings.steps_per_period,
        sample_stride: 1,
        t_end: window.t_max,
        record_from: 0.0,
        strict: settings.strict,
    };
    let step = config.step(omega);
    config.record_from = window.t_min - step;

    let system = System::Single(sys);
    let frame = system.frame_at(0.0)?;
    let initial = match sys.frames {
        FrameSource::Analytic => initial_state_2(&sys.qubit, &sys.drive)?,
        FrameSource::Numerical => {
            crate::propagator::DensityState::from_diabatic(&up_projector(), &frame)
        }
    };
    let mut avg = TimeAverager::new(window, step);
    evolve_from(&system, &initial, &frame, &config, |s| {
        avg.push(s.state.t, diabatic_population_of(&s.state.rho, &s.frame).0);
    })?;
    Ok((avg.finish(step)?, window))
}

fn up_projector() -> crate::linalg::CMatrix {
    crate::linalg::CMatrix::diagonal(&[1.0, 0.0])
}

/// Evaluates every grid point in order; failures are recorded per point.
pub fn resonance_scan(
    system: &System,
    omegas: &[f64],
    settings: &ScanSettings,
) -> Result<ScanResult> {
    single(system)?;
    if omegas.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::invalid("omega_grid", "must be strictly ascending"));
    }
    let points = omegas
        .iter()
        .map(|&omega| evaluate(system, omega, settings))
        .collect();
    Ok(ScanResult {
        points,
        settings: *settings,
    })
}

/// One grid point as a [`ScanPoint`].
pub fn evaluate(system: &System, omega: f64, settings: &ScanSettings) -> ScanPoint {
    match scan_point(system, omega, settings) {
        Ok((p_down, window)) => ScanPoint {
            omega,
            p_down,
            p_up: 1.0 - p_down,
            window: Some(window),
            error: None,
        },
        Err(e) => ScanPoint::failed(omega, e),
    }
}

/// Uniform grid of `points` angular frequencies spanning `[start, stop]`.
pub fn linear_grid(start: f64, stop: f64, points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::invalid("points", "need at least 2 grid points"));
    }
    if !(start > 0.0) || !(stop > start) || !stop.is_finite() {
        return Err(Error::invalid("omega_grid", "need 0 < start < stop"));
    }
    let step = (stop - start) / (points - 1) as f64;
    Ok((0..points).map(|j| start + j as f64 * step).collect())
}
