//! Whether resonant two-qubit dynamics stays inside one pair of levels.
//!
//! Populations are read in the eigenbasis of the stationary Hamiltonian H0,
//! the basis in which the levels 1…4 are labelled.

use crate::dissipation::RateSet;
use crate::linalg::CMatrix;
use crate::model::{qubit_sigma_z, stationary_hamiltonian_4, DriveSpec, TwoQubitParams};
use crate::propagator::{
    evolve_from, initial_state_4, DensityState, InitialLevel, IntegratorConfig, System,
};
use crate::spectral::{eig_hermitian, EigenFrame};
use crate::{units, Error, Result};

/// Angular frequency (E_b − E_a)/ħ between H0 levels `a < b` (1-based).
pub fn pair_resonance(tp: &TwoQubitParams, a: usize, b: usize) -> Result<f64> {
    check_pair(a, b)?;
    let st = eig_hermitian(&stationary_hamiltonian_4(tp));
    let e = st.energies();
    Ok(units::angular(e[b - 1] - e[a - 1]))
}

fn check_pair(a: usize, b: usize) -> Result<()> {
    if !(1..=4).contains(&a) || !(1..=4).contains(&b) || a >= b {
        return Err(Error::invalid("level_pair", "need 1 ≤ a < b ≤ 4"));
    }
    Ok(())
}

/// Level occupations in the H0 eigenbasis of a state carried in `frame`.
pub fn stationary_populations(
    rho: &CMatrix,
    frame: &EigenFrame,
    stationary: &EigenFrame,
) -> [f64; 4] {
    let diabatic = frame.to_diabatic(rho);
    stationary.to_instantaneous(&diabatic).real_diagonal()
}

/// `⟨σz⟩` of qubit 1 and qubit 2.
pub fn polarizations(rho: &CMatrix, frame: &EigenFrame) -> [f64; 2] {
    let diabatic = frame.to_diabatic(rho);
    [0, 1].map(|q| (diabatic * qubit_sigma_z(q)).trace().re)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReductionSettings {
    pub t_end: f64,
    pub steps_per_period: u32,
    pub sample_stride: u32,
    /// Largest admissible population outside the pair.
    pub threshold: f64,
    /// Peak-to-peak ⟨σz⟩ excursion above which a qubit counts as oscillating.
    pub polarization_threshold: f64,
    /// Starting state; `None` starts in the lower level of the pair.
    pub initial: Option<InitialLevel>,
}

impl Default for ReductionSettings {
    fn default() -> Self {
        ReductionSettings {
            t_end: 100.0,
            steps_per_period: IntegratorConfig::default().steps_per_period,
            sample_stride: 10,
            threshold: 0.05,
            polarization_threshold: 0.1,
            initial: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReductionReport {
    pub pair: (usize, usize),
    pub omega: f64,
    /// Largest total population outside the pair over the run.
    pub max_leakage: f64,
    pub max_leakage_at: f64,
    /// Peak-to-peak excursion of ⟨σz⟩ for qubit 1 and qubit 2.
    pub polarization_swing: [f64; 2],
    pub oscillating: [bool; 2],
    /// `max_leakage` stayed below the threshold.
    pub reducible: bool,
}

impl ReductionReport {
    /// Reducible and at most one qubit changes its state.
    pub fn single_qubit_like(&self) -> bool {
        self.reducible && !(self.oscillating[0] && self.oscillating[1])
    }
}

pub fn two_qubit_reduction_check(
    tp: &TwoQubitParams,
    drive: &DriveSpec,
    rates: &RateSet,
    level_pair: (usize, usize),
    settings: &ReductionSettings,
) -> Result<ReductionReport> {
    let (a, b) = level_pair;
    check_pair(a, b)?;
    let system = System::double(*tp, *drive, *rates);
    let initial: DensityState = initial_state_4(
        tp,
        drive,
        settings.initial.unwrap_or(InitialLevel::Eigen(a)),
    )?;
    let frame = system.frame_at(0.0)?;
    let stationary = rates.stationary_frame;
    let config = IntegratorConfig {
        steps_per_period: settings.steps_per_period,
        sample_stride: settings.sample_stride,
        t_end: settings.t_end,
        record_from: 0.0,
        strict: false,
    };

    let mut max_leakage = f64::NEG_INFINITY;
    let mut max_leakage_at = 0.0;
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    evolve_from(&system, &initial, &frame, &config, |s| {
        let p = stationary_populations(&s.state.rho, &s.frame, &stationary);
        let leak = 1.0 - p[a - 1] - p[b - 1];
        if leak > max_leakage {
            max_leakage = leak;
            max_leakage_at = s.state.t;
        }
        let pol = polarizations(&s.state.rho, &s.frame);
        for q in 0..2 {
            lo[q] = lo[q].min(pol[q]);
            hi[q] = hi[q].max(pol[q]);
        }
    })?;
    let swing = [hi[0] - lo[0], hi[1] - lo[1]];
    Ok(ReductionReport {
        pair: level_pair,
        omega: drive.omega,
        max_leakage,
        max_leakage_at,
        polarization_swing: swing,
        oscillating: swing.map(|s| s > settings.polarization_threshold),
        reducible: max_leakage < settings.threshold,
    })
}
