//! GKSL equations of motion in the instantaneous eigenbasis and their
//! fixed-step RK4 integration.
//!
//! The density matrix is carried in the instantaneous basis of H(t). Each RK4
//! step evaluates the frame at `t`, `t + h/2` and `t + h`; numerical frames are
//! gauge-continued from one evaluation to the next so the matrix elements keep
//! a consistent meaning along the trajectory.

use alloc::vec::Vec;

use num_traits::Float;

use crate::dissipation::{RateSet, SingleQubitDecay};
use crate::linalg::{min_eigenvalue, CMatrix, C64};
use crate::model::{DriveSpec, QubitParams, TwoQubitParams, Waveform};
use crate::spectral::{
    analytic_frame_2, continuous_frame, default_stencil, frame_2_numerical, frame_4,
    frame_derivative, EigenFrame, FrameDerivative,
};
use crate::{units, Error, Result};

/// Density matrix in the instantaneous basis at time `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityState {
    pub t: f64,
    pub rho: CMatrix,
}

impl DensityState {
    pub const HERMITICITY_TOL: f64 = 1e-9;
    pub const TRACE_TOL: f64 = 1e-9;
    pub const POSITIVITY_TOL: f64 = 1e-7;

    /// Builds the instantaneous-basis image `S†ρS` of a diabatic density matrix.
    pub fn from_diabatic(rho_diabatic: &CMatrix, frame: &EigenFrame) -> Self {
        DensityState {
            t: frame.t,
            rho: frame.to_instantaneous(rho_diabatic),
        }
    }

    pub fn dim(&self) -> usize {
        self.rho.dim()
    }

    /// Populations ρ_kk of the instantaneous levels.
    pub fn populations(&self) -> [f64; 4] {
        self.rho.real_diagonal()
    }

    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }

    pub fn min_eigenvalue(&self) -> f64 {
        min_eigenvalue(&self.rho)
    }

    /// Checks Hermiticity, unit trace and positivity at the documented tolerances.
    pub fn validate(&self) -> Result<()> {
        let herm = self.rho.hermitian_deviation();
        if herm > Self::HERMITICITY_TOL {
            return Err(Error::InvariantViolation {
                invariant: "hermiticity",
                t: self.t,
                deviation: herm,
            });
        }
        let tr = (self.trace() - 1.0).abs();
        if tr > Self::TRACE_TOL {
            return Err(Error::InvariantViolation {
                invariant: "unit trace",
                t: self.t,
                deviation: tr,
            });
        }
        let min = self.min_eigenvalue();
        if min < -Self::POSITIVITY_TOL {
            return Err(Error::PositivityViolation {
                t: self.t,
                min_eigenvalue: min,
            });
        }
        Ok(())
    }
}

/// How the single-qubit frame S(t) is obtained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FrameSource {
    /// Closed-form `S̃(t)` built from γ±(t), with the analytic dS̃/dt.
    #[default]
    Analytic,
    /// Numerical diagonalization, gauge continuation and central differences.
    Numerical,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingleQubitSystem {
    pub qubit: QubitParams,
    pub drive: DriveSpec,
    pub decay: SingleQubitDecay,
    pub frames: FrameSource,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubitSystem {
    pub qubits: TwoQubitParams,
    pub drive: DriveSpec,
    pub rates: RateSet,
}

/// A driven, dissipative system that [`evolve`] can propagate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum System {
    Single(SingleQubitSystem),
    Double(TwoQubitSystem),
}

impl System {
    pub fn single(qubit: QubitParams, drive: DriveSpec, decay: SingleQubitDecay) -> Self {
        System::Single(SingleQubitSystem {
            qubit,
            drive,
            decay,
            frames: FrameSource::Analytic,
        })
    }

    pub fn double(qubits: TwoQubitParams, drive: DriveSpec, rates: RateSet) -> Self {
        System::Double(TwoQubitSystem {
            qubits,
            drive,
            rates,
        })
    }

    pub fn drive(&self) -> &DriveSpec {
        match self {
            System::Single(s) => &s.drive,
            System::Double(d) => &d.drive,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            System::Single(_) => 2,
            System::Double(_) => 4,
        }
    }

    /// Frame used at `t` for a trajectory that starts there.
    pub fn frame_at(&self, t: f64) -> Result<EigenFrame> {
        match self {
            System::Single(s) => match s.frames {
                FrameSource::Analytic => {
                    analytic_frame_2(s.qubit.delta, s.qubit.eps0 + s.drive.waveform().value(t), t)
                }
                FrameSource::Numerical => Ok(frame_2_numerical(&s.qubit, &s.drive, t)),
            },
            System::Double(d) => Ok(frame_4(&d.qubits, &d.drive, t)),
        }
    }
}

/// Fixed-step RK4 settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegratorConfig {
    pub steps_per_period: u32,
    /// Record every `sample_stride`-th step.
    pub sample_stride: u32,
    /// Final time (ns); the integration covers a whole number of steps ≥ t_end.
    pub t_end: f64,
    /// Samples before this time (ns) are not handed to the observer.
    pub record_from: f64,
    /// Per-step invariant assertions (slow).
    pub strict: bool,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            steps_per_period: 400,
            sample_stride: 1,
            t_end: 0.0,
            record_from: 0.0,
            strict: false,
        }
    }
}

impl IntegratorConfig {
    pub const MIN_STEPS_PER_PERIOD: u32 = 64;

    pub fn validate(&self) -> Result<()> {
        if self.steps_per_period < Self::MIN_STEPS_PER_PERIOD {
            return Err(Error::invalid("steps_per_period", "must be at least 64"));
        }
        if self.sample_stride == 0 {
            return Err(Error::invalid("sample_stride", "must be at least 1"));
        }
        if !(self.t_end >= 0.0) || !self.t_end.is_finite() {
            return Err(Error::invalid("t_end", "must be finite and non-negative"));
        }
        Ok(())
    }

    pub fn step(&self, omega: f64) -> f64 {
        units::period(omega) / self.steps_per_period as f64
    }
}

/// One recorded point of a trajectory.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub state: DensityState,
    pub frame: EigenFrame,
}

impl Sample {
    pub fn t(&self) -> f64 {
        self.state.t
    }
}

/// Integrator bookkeeping reported with a trajectory.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TrajectoryMeta {
    pub omega: f64,
    pub steps_per_period: u32,
    pub sample_stride: u32,
    pub step: f64,
    pub steps: u64,
    /// Steps after which the trace drifted by more than 1e-9 and was reset.
    pub renormalizations: u64,
    /// Steps whose minimum eigenvalue fell below −1e-7.
    pub positivity_flags: u64,
    pub min_eigenvalue: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub meta: TrajectoryMeta,
}

/// Prepared diabatic basis state `|↑⟩⟨↑|` at t = 0 in the analytic frame:
/// ρ−− = γ+², ρ+− = ρ−+ = γ+γ−, ρ++ = γ−².
pub fn initial_state_2(qp: &QubitParams, drive: &DriveSpec) -> Result<DensityState> {
    let frame = analytic_frame_2(qp.delta, qp.eps0 + drive.waveform().value(0.0), 0.0)?;
    Ok(DensityState::from_diabatic(
        &diabatic_projector(2, 0),
        &frame,
    ))
}

/// Choice of initial pure state for the two-qubit register.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InitialLevel {
    /// Diabatic basis state, 0 = |↑↑⟩ … 3 = |↓↓⟩.
    Diabatic(usize),
    /// Eigenstate of H0, 1-based in ascending energy.
    Eigen(usize),
}

impl Default for InitialLevel {
    fn default() -> Self {
        InitialLevel::Eigen(1)
    }
}

fn diabatic_projector(dim: usize, index: usize) -> CMatrix {
    let mut p = CMatrix::zeros(dim);
    p[(index, index)] = C64::new(1.0, 0.0);
    p
}

/// Projector onto the chosen state, written in the t = 0 instantaneous frame
/// of H(t) (numerical, isolated-time gauge).
pub fn initial_state_4(
    tp: &TwoQubitParams,
    drive: &DriveSpec,
    level: InitialLevel,
) -> Result<DensityState> {
    let frame = frame_4(tp, drive, 0.0);
    let rho = match level {
        InitialLevel::Diabatic(i) if i < 4 => diabatic_projector(4, i),
        InitialLevel::Eigen(k) if (1..=4).contains(&k) => {
            let st = crate::spectral::eig_hermitian(&crate::model::stationary_hamiltonian_4(tp));
            let v = st.s.column(k - 1);
            CMatrix::from_fn(4, |r, c| v[r] * v[c].conj())
        }
        _ => {
            return Err(Error::invalid(
                "initial_level",
                "diabatic index 0..=3 or eigenstate 1..=4",
            ))
        }
    };
    Ok(DensityState::from_diabatic(&rho, &frame))
}

/// Right-hand side for a single qubit in the instantaneous basis:
///
/// dρ_kk'/dt = −i(E_k − E_k')ρ_kk' − (S⁻¹Ṡ ρ + H.c.)_kk'
///             + (Γ/2)(2ρ++ δ_k− δ_k'− − δ_k+ ρ+k' − δ_k'+ ρ_k+)
///
/// with level 0 = "−" (ground) and level 1 = "+".
pub fn gksl_rhs_2(
    rho: &CMatrix,
    frame: &EigenFrame,
    derivative: &FrameDerivative,
    decay: &SingleQubitDecay,
) -> CMatrix {
    let a = derivative.connection(frame);
    let ar = a * *rho;
    let mut out = -(ar + ar.adjoint());
    let e = frame.energies();
    let gap = units::angular(e[0] - e[1]);
    out[(0, 1)] += C64::new(0.0, -gap) * rho[(0, 1)];
    out[(1, 0)] += C64::new(0.0, gap) * rho[(1, 0)];

    let g = decay.rate;
    let excited = rho[(1, 1)];
    out[(0, 0)] += excited * g;
    out[(1, 1)] -= excited * g;
    out[(0, 1)] -= rho[(0, 1)] * (0.5 * g);
    out[(1, 0)] -= rho[(1, 0)] * (0.5 * g);
    out
}

/// Right-hand side for the two-qubit register in the instantaneous basis:
///
/// dρ_kk'/dt = (ρ S⁻¹Ṡ + H.c.)_kk' − i(E_k − E_k')ρ_kk'
///             + δ_kk' Σ_{n≠k} W_kn ρ_nn − γ_kk' ρ_kk'
pub fn gksl_rhs_4(
    rho: &CMatrix,
    frame: &EigenFrame,
    derivative: &FrameDerivative,
    rates: &RateSet,
) -> CMatrix {
    let n = rho.dim();
    let a = derivative.connection(frame);
    let ra = *rho * a;
    let mut out = ra + ra.adjoint();
    let e = frame.energies();
    for k in 0..n {
        for kp in 0..n {
            let w = units::angular(e[k] - e[kp]);
            out[(k, kp)] += C64::new(0.0, -w) * rho[(k, kp)] - rho[(k, kp)] * rates.gamma[k][kp];
        }
        let gain: f64 = (0..n)
            .filter(|&m| m != k)
            .map(|m| rates.w[k][m] * rho[(m, m)].re)
            .sum();
        out[(k, k)] += gain;
    }
    out
}

/// One concrete form of the equations of motion: how the frame data at a
/// time is obtained, how ρ is stored and how its derivative is formed.
trait Dynamics {
    type Point: Copy;
    type State: Copy;

    fn point(&self, t: f64, previous: &Self::Point) -> Result<Self::Point>;
    fn rhs(&self, rho: &Self::State, point: &Self::Point) -> Self::State;
    /// `rho + k·h`.
    fn axpy(rho: &Self::State, k: &Self::State, h: f64) -> Self::State;
    fn trace(rho: &Self::State) -> f64;
    fn scale(rho: &Self::State, by: f64) -> Self::State;
    fn min_eigenvalue(rho: &Self::State) -> f64;
    fn hermitian_deviation(rho: &Self::State) -> f64;
    fn sample(&self, t: f64, rho: &Self::State, point: &Self::Point) -> Result<Sample>;
}

/// Closed-form single-qubit frame. The connection S̃·dS̃/dt is θ'/2 times
/// [[0, 1], [−1, 0]], so the equations reduce to three real unknowns.
struct AnalyticQubit {
    delta: f64,
    eps0: f64,
    wave: Waveform,
    rate: f64,
}

#[derive(Clone, Copy)]
struct QubitPoint {
    t: f64,
    eps: f64,
    /// ω+− = 2π(E+ − E−) in rad/ns.
    gap: f64,
    /// θ'/2 with θ = atan2(Δ, ε).
    half_rate: f64,
}

/// ρ−−, ρ++ and ρ−+ of a Hermitian 2×2 density matrix.
#[derive(Clone, Copy)]
struct QubitRho {
    low: f64,
    high: f64,
    coh: C64,
}

impl QubitRho {
    fn from_matrix(m: &CMatrix) -> Self {
        QubitRho {
            low: m[(0, 0)].re,
            high: m[(1, 1)].re,
            coh: m[(0, 1)],
        }
    }

    fn to_matrix(self) -> CMatrix {
        let mut m = CMatrix::diagonal(&[self.low, self.high]);
        m[(0, 1)] = self.coh;
        m[(1, 0)] = self.coh.conj();
        m
    }
}

impl Dynamics for AnalyticQubit {
    type Point = QubitPoint;
    type State = QubitRho;

    #[inline]
    fn point(&self, t: f64, _previous: &QubitPoint) -> Result<QubitPoint> {
        let eps = self.eps0 + self.wave.value(t);
        let r2 = self.delta * self.delta + eps * eps;
        if r2 == 0.0 {
            return Err(Error::DegenerateFrame { t });
        }
        Ok(QubitPoint {
            t,
            eps,
            gap: units::angular(r2.sqrt()),
            half_rate: -0.5 * self.delta * self.wave.rate(t) / r2,
        })
    }

    #[inline]
    fn rhs(&self, rho: &QubitRho, p: &QubitPoint) -> QubitRho {
        let flow = 2.0 * p.half_rate * rho.coh.re;
        let decay = self.rate * rho.high;
        QubitRho {
            low: -flow + decay,
            high: flow - decay,
            coh: C64::new(0.0, p.gap) * rho.coh
                - (rho.coh * (0.5 * self.rate))
                - C64::new(p.half_rate * (rho.high - rho.low), 0.0),
        }
    }

    #[inline]
    fn axpy(rho: &QubitRho, k: &QubitRho, h: f64) -> QubitRho {
        QubitRho {
            low: rho.low + h * k.low,
            high: rho.high + h * k.high,
            coh: rho.coh + k.coh * h,
        }
    }

    fn trace(rho: &QubitRho) -> f64 {
        rho.low + rho.high
    }

    fn scale(rho: &QubitRho, by: f64) -> QubitRho {
        QubitRho {
            low: rho.low * by,
            high: rho.high * by,
            coh: rho.coh * by,
        }
    }

    #[inline]
    fn min_eigenvalue(rho: &QubitRho) -> f64 {
        let half = 0.5 * (rho.low - rho.high);
        0.5 * (rho.low + rho.high) - (half * half + rho.coh.norm_sqr()).sqrt()
    }

    fn hermitian_deviation(_rho: &QubitRho) -> f64 {
        0.0
    }

    fn sample(&self, t: f64, rho: &QubitRho, p: &QubitPoint) -> Result<Sample> {
        Ok(Sample {
            state: DensityState {
                t,
                rho: rho.to_matrix(),
            },
            frame: analytic_frame_2(self.delta, p.eps, p.t)?,
        })
    }
}

/// Numerically diagonalized frames with gauge continuation and central
/// differences, for either dimension.
enum FrameDynamics {
    Qubit {
        qubit: QubitParams,
        drive: DriveSpec,
        decay: SingleQubitDecay,
        h_fd: f64,
    },
    Register {
        qubits: TwoQubitParams,
        drive: DriveSpec,
        rates: RateSet,
        h_fd: f64,
    },
}

impl FrameDynamics {
    fn raw_frame(&self, t: f64) -> EigenFrame {
        match self {
            FrameDynamics::Qubit { qubit, drive, .. } => frame_2_numerical(qubit, drive, t),
            FrameDynamics::Register { qubits, drive, .. } => frame_4(qubits, drive, t),
        }
    }

    fn h_fd(&self) -> f64 {
        match self {
            FrameDynamics::Qubit { h_fd, .. } | FrameDynamics::Register { h_fd, .. } => *h_fd,
        }
    }
}

impl Dynamics for FrameDynamics {
    type Point = (EigenFrame, FrameDerivative);
    type State = CMatrix;

    fn point(&self, t: f64, previous: &Self::Point) -> Result<Self::Point> {
        let frame = continuous_frame(&self.raw_frame(t), &previous.0)?;
        let derivative = frame_derivative(|s| Ok(self.raw_frame(s)), &frame, self.h_fd())?;
        Ok((frame, derivative))
    }

    fn rhs(&self, rho: &CMatrix, p: &Self::Point) -> CMatrix {
        match self {
            FrameDynamics::Qubit { decay, .. } => gksl_rhs_2(rho, &p.0, &p.1, decay),
            FrameDynamics::Register { rates, .. } => gksl_rhs_4(rho, &p.0, &p.1, rates),
        }
    }

    fn axpy(rho: &CMatrix, k: &CMatrix, h: f64) -> CMatrix {
        *rho + k.scale(h)
    }

    fn trace(rho: &CMatrix) -> f64 {
        rho.trace().re
    }

    fn scale(rho: &CMatrix, by: f64) -> CMatrix {
        rho.scale(by)
    }

    fn min_eigenvalue(rho: &CMatrix) -> f64 {
        min_eigenvalue(rho)
    }

    fn hermitian_deviation(rho: &CMatrix) -> f64 {
        rho.hermitian_deviation()
    }

    fn sample(&self, t: f64, rho: &CMatrix, p: &Self::Point) -> Result<Sample> {
        Ok(Sample {
            state: DensityState { t, rho: *rho },
            frame: p.0,
        })
    }
}

/// Positivity loss beyond this aborts the integration.
pub const POSITIVITY_ABORT: f64 = 1e-5;

/// Integrates from `initial` (expressed in `initial_frame`) and calls
/// `observer` on every `sample_stride`-th step at or after
/// `config.record_from`, including the start when it qualifies.
pub fn evolve_from(
    system: &System,
    initial: &DensityState,
    initial_frame: &EigenFrame,
    config: &IntegratorConfig,
    observer: impl FnMut(&Sample),
) -> Result<TrajectoryMeta> {
    config.validate()?;
    if initial.dim() != system.dim() || initial_frame.dim() != system.dim() {
        return Err(Error::DimensionMismatch {
            expected: system.dim(),
            found: initial.dim(),
        });
    }
    match *system {
        System::Single(s) if s.frames == FrameSource::Analytic => {
            let dynamics = AnalyticQubit {
                delta: s.qubit.delta,
                eps0: s.qubit.eps0,
                wave: s.drive.waveform(),
                rate: s.decay.rate,
            };
            let seed = QubitPoint {
                t: initial.t,
                eps: 0.0,
                gap: 0.0,
                half_rate: 0.0,
            };
            let start = dynamics.point(initial.t, &seed)?;
            let rho = QubitRho::from_matrix(&initial.rho);
            integrate(&dynamics, system, rho, start, initial, config, observer)
        }
        System::Single(s) => {
            let dynamics = FrameDynamics::Qubit {
                qubit: s.qubit,
                drive: s.drive,
                decay: s.decay,
                h_fd: default_stencil(s.drive.omega),
            };
            let seed = (*initial_frame, FrameDerivative::zero(initial.t, 2));
            let start = dynamics.point(initial.t, &seed)?;
            integrate(
                &dynamics,
                system,
                initial.rho,
                start,
                initial,
                config,
                observer,
            )
        }
        System::Double(d) => {
            let dynamics = FrameDynamics::Register {
                qubits: d.qubits,
                drive: d.drive,
                rates: d.rates,
                h_fd: default_stencil(d.drive.omega),
            };
            let seed = (*initial_frame, FrameDerivative::zero(initial.t, 4));
            let start = dynamics.point(initial.t, &seed)?;
            integrate(
                &dynamics,
                system,
                initial.rho,
                start,
                initial,
                config,
                observer,
            )
        }
    }
}

fn integrate<D: Dynamics>(
    dynamics: &D,
    system: &System,
    mut rho: D::State,
    mut point: D::Point,
    initial: &DensityState,
    config: &IntegratorConfig,
    mut observer: impl FnMut(&Sample),
) -> Result<TrajectoryMeta> {
    let omega = system.drive().omega;
    let h = config.step(omega);
    let n_steps = ((config.t_end / h) - 1e-9).ceil().max(0.0) as u64;
    let t0 = initial.t;
    let mut meta = TrajectoryMeta {
        omega,
        steps_per_period: config.steps_per_period,
        sample_stride: config.sample_stride,
        step: h,
        steps: n_steps,
        min_eigenvalue: D::min_eigenvalue(&rho),
        ..TrajectoryMeta::default()
    };
    let record_from = config.record_from - 1e-9 * h;
    if t0 >= record_from {
        observer(&dynamics.sample(t0, &rho, &point)?);
    }

    let stride = config.sample_stride as u64;
    for step in 1..=n_steps {
        let t = t0 + (step - 1) as f64 * h;
        let t_now = t0 + step as f64 * h;
        let mid = dynamics.point(t + 0.5 * h, &point)?;
        let end = dynamics.point(t_now, &mid)?;

        let k1 = dynamics.rhs(&rho, &point);
        let k2 = dynamics.rhs(&D::axpy(&rho, &k1, 0.5 * h), &mid);
        let k3 = dynamics.rhs(&D::axpy(&rho, &k2, 0.5 * h), &mid);
        let k4 = dynamics.rhs(&D::axpy(&rho, &k3, h), &end);
        rho = D::axpy(&rho, &k1, h / 6.0);
        rho = D::axpy(&rho, &k2, h / 3.0);
        rho = D::axpy(&rho, &k3, h / 3.0);
        rho = D::axpy(&rho, &k4, h / 6.0);

        let tr = D::trace(&rho);
        if (tr - 1.0).abs() > DensityState::TRACE_TOL {
            rho = D::scale(&rho, 1.0 / tr);
            meta.renormalizations += 1;
        }
        let min = D::min_eigenvalue(&rho);
        meta.min_eigenvalue = meta.min_eigenvalue.min(min);
        if min < -DensityState::POSITIVITY_TOL {
            meta.positivity_flags += 1;
            if min < -POSITIVITY_ABORT {
                return Err(Error::PositivityViolation {
                    t: t_now,
                    min_eigenvalue: min,
                });
            }
        }
        point = end;
        let due = step % stride == 0 && t_now >= record_from;
        if config.strict || due {
            let sample = dynamics.sample(t_now, &rho, &point)?;
            if config.strict {
                strict_checks(D::hermitian_deviation(&rho), &sample.frame, t_now)?;
            }
            if due {
                observer(&sample);
            }
        }
    }
    Ok(meta)
}

fn strict_checks(herm: f64, frame: &EigenFrame, t: f64) -> Result<()> {
    if herm > 1e-10 {
        return Err(Error::InvariantViolation {
            invariant: "hermiticity",
            t,
            deviation: herm,
        });
    }
    let unitarity = frame.unitarity_error();
    if unitarity > 1e-10 {
        return Err(Error::InvariantViolation {
            invariant: "frame unitarity",
            t,
            deviation: unitarity,
        });
    }
    Ok(())
}

/// Integrates from `initial`, starting in the system's own frame at `initial.t`,
/// and records every `sample_stride`-th step.
pub fn evolve(
    system: &System,
    initial: &DensityState,
    config: &IntegratorConfig,
) -> Result<Trajectory> {
    let frame = system.frame_at(initial.t)?;
    let mut samples = Vec::new();
    let meta = evolve_from(system, initial, &frame, config, |s| samples.push(*s))?;
    Ok(Trajectory { samples, meta })
}
