//! Physical parameters, drive signals and the driven Hamiltonians.
//!
//! Diabatic (flux) basis ordering: index 0 is |↑⟩ (|↑↑⟩ for two qubits) and
//! the last index is |↓⟩ (|↓↓⟩). All Hamiltonians are returned in GHz·h.

use libm::atan;
use num_traits::Float;

use crate::linalg::{sigma_x, sigma_z, CMatrix};
use crate::{Error, Result};

/// Static single-qubit energies in GHz·h.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitParams {
    /// Tunneling amplitude Δ.
    pub delta: f64,
    /// Static bias ε0.
    pub eps0: f64,
}

impl QubitParams {
    pub fn new(delta: f64, eps0: f64) -> Result<Self> {
        let qp = QubitParams { delta, eps0 };
        qp.validate()?;
        Ok(qp)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta >= 0.0) || !self.delta.is_finite() {
            return Err(Error::invalid("delta", "must be finite and non-negative"));
        }
        if !self.eps0.is_finite() {
            return Err(Error::invalid("eps0", "must be finite"));
        }
        Ok(())
    }

    /// Level splitting δE = √(Δ² + ε0²) of the undriven qubit (GHz·h).
    pub fn splitting(&self) -> f64 {
        self.delta.hypot(self.eps0)
    }
}

/// Two flux qubits with a σz⊗σz coupling. `j > 0` is the ferromagnetic
/// convention; either sign is accepted.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubitParams {
    pub q1: QubitParams,
    pub q2: QubitParams,
    pub j: f64,
}

impl TwoQubitParams {
    pub fn new(q1: QubitParams, q2: QubitParams, j: f64) -> Result<Self> {
        let tp = TwoQubitParams { q1, q2, j };
        tp.validate()?;
        Ok(tp)
    }

    pub fn validate(&self) -> Result<()> {
        self.q1.validate()?;
        self.q2.validate()?;
        if !self.j.is_finite() {
            return Err(Error::invalid("j", "must be finite"));
        }
        Ok(())
    }
}

/// Lorentzian resonator response between the source and the qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResonatorFilter {
    /// Resonator angular frequency ω0 (rad/ns).
    pub omega0: f64,
    /// Full width at half maximum κ of the amplitude response (rad/ns).
    pub kappa: f64,
    /// Whether the phase lag φ(ω) is applied to the drive.
    pub apply_phase: bool,
}

impl ResonatorFilter {
    pub fn new(omega0: f64, kappa: f64) -> Result<Self> {
        let f = ResonatorFilter {
            omega0,
            kappa,
            apply_phase: true,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega0 > 0.0) || !self.omega0.is_finite() {
            return Err(Error::invalid("omega0", "must be positive"));
        }
        if !(self.kappa > 0.0) || !self.kappa.is_finite() {
            return Err(Error::invalid("kappa", "must be positive"));
        }
        Ok(())
    }

    /// Quality factor Q = √3·ω0/κ.
    pub fn q(&self) -> f64 {
        3f64.sqrt() * self.omega0 / self.kappa
    }

    fn detuning(&self, omega: f64) -> f64 {
        2.0 * self.q() * (omega - self.omega0) / self.omega0
    }
}

/// Amplitude and phase transmitted through the resonator at drive frequency
/// `omega`: `A(ω) = A/√(1+x²)`, `φ(ω) = −arctan x` with `x = 2Q(ω−ω0)/ω0`.
pub fn filter_amplitude(filter: &ResonatorFilter, amplitude: f64, omega: f64) -> (f64, f64) {
    let x = filter.detuning(omega);
    (amplitude / (1.0 + x * x).sqrt(), -atan(x))
}

/// Microwave drive `A cos(ωt)` applied identically to every qubit bias.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DriveSpec {
    /// Source amplitude A (GHz·h).
    pub amplitude: f64,
    /// Angular frequency ω (rad/ns).
    pub omega: f64,
    pub filter: Option<ResonatorFilter>,
}

impl DriveSpec {
    pub fn new(amplitude: f64, omega: f64) -> Result<Self> {
        let d = DriveSpec {
            amplitude,
            omega,
            filter: None,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn with_filter(mut self, filter: ResonatorFilter) -> Self {
        self.filter = Some(filter);
        self
    }

    pub fn with_omega(mut self, omega: f64) -> Self {
        self.omega = omega;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.amplitude >= 0.0) || !self.amplitude.is_finite() {
            return Err(Error::invalid(
                "amplitude",
                "must be finite and non-negative",
            ));
        }
        if !(self.omega > 0.0) || !self.omega.is_finite() {
            return Err(Error::invalid("omega", "must be positive"));
        }
        if let Some(f) = &self.filter {
            f.validate()?;
        }
        Ok(())
    }

    /// Amplitude and phase seen by the qubit after the optional filter.
    pub fn waveform(&self) -> Waveform {
        let (amplitude, phase) = match &self.filter {
            None => (self.amplitude, 0.0),
            Some(f) => {
                let (a, phi) = filter_amplitude(f, self.amplitude, self.omega);
                (a, if f.apply_phase { phi } else { 0.0 })
            }
        };
        Waveform {
            amplitude,
            omega: self.omega,
            phase,
        }
    }
}

/// Effective drive `amplitude · cos(ωt + phase)` with the filter folded in.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Waveform {
    pub amplitude: f64,
    pub omega: f64,
    pub phase: f64,
}

impl Waveform {
    #[inline]
    pub fn value(&self, t: f64) -> f64 {
        self.amplitude * (self.omega * t + self.phase).cos()
    }

    /// Time derivative of [`Waveform::value`] (GHz·h per ns).
    #[inline]
    pub fn rate(&self, t: f64) -> f64 {
        -self.amplitude * self.omega * (self.omega * t + self.phase).sin()
    }
}

/// Instantaneous bias ε(t) = ε0 + A(ω) cos(ωt + φ(ω)) in GHz·h.
pub fn bias_at(qp: &QubitParams, drive: &DriveSpec, t: f64) -> f64 {
    qp.eps0 + drive.waveform().value(t)
}

/// Hermitian matrix of dimension 2 or 4, in GHz·h.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HermitianOperator(CMatrix);

impl HermitianOperator {
    /// Relative tolerance on `‖A − A†‖/‖A‖`.
    pub const TOLERANCE: f64 = 1e-12;

    pub fn new(m: CMatrix) -> Result<Self> {
        if m.dim() != 2 && m.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: m.dim(),
            });
        }
        let deviation = m.hermitian_deviation();
        if deviation > Self::TOLERANCE * m.norm().max(f64::MIN_POSITIVE) {
            return Err(Error::NonHermitian { deviation });
        }
        Ok(HermitianOperator(m))
    }

    pub(crate) fn new_unchecked(m: CMatrix) -> Self {
        HermitianOperator(m)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }
}

/// −½(ε σz + Δ σx) for a given instantaneous bias.
pub(crate) fn qubit_matrix(delta: f64, eps: f64) -> CMatrix {
    (sigma_z().scale(eps) + sigma_x().scale(delta)).scale(-0.5)
}

/// Single-qubit Hamiltonian H(t) = −½[ε(t) σz + Δ σx].
pub fn hamiltonian_2(qp: &QubitParams, drive: &DriveSpec, t: f64) -> HermitianOperator {
    HermitianOperator::new_unchecked(qubit_matrix(qp.delta, bias_at(qp, drive, t)))
}

/// Stationary single-qubit Hamiltonian H0 = −½(ε0 σz + Δ σx).
pub fn stationary_hamiltonian_2(qp: &QubitParams) -> HermitianOperator {
    HermitianOperator::new_unchecked(qubit_matrix(qp.delta, qp.eps0))
}

fn two_qubit_matrix(tp: &TwoQubitParams, eps1: f64, eps2: f64) -> CMatrix {
    let id = CMatrix::identity(2);
    let h1 = qubit_matrix(tp.q1.delta, eps1).kron(&id);
    let h2 = id.kron(&qubit_matrix(tp.q2.delta, eps2));
    let zz = sigma_z().kron(&sigma_z()).scale(0.5 * tp.j);
    h1 + h2 + zz
}

/// Two-qubit Hamiltonian in the basis |↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩.
pub fn hamiltonian_4(tp: &TwoQubitParams, drive: &DriveSpec, t: f64) -> HermitianOperator {
    let v = drive.waveform().value(t);
    HermitianOperator::new_unchecked(two_qubit_matrix(tp, tp.q1.eps0 + v, tp.q2.eps0 + v))
}

/// Stationary part H0 of the two-qubit Hamiltonian.
pub fn stationary_hamiltonian_4(tp: &TwoQubitParams) -> HermitianOperator {
    HermitianOperator::new_unchecked(two_qubit_matrix(tp, tp.q1.eps0, tp.q2.eps0))
}

/// Time-dependent part V(t) = −½ A cos(ωt) (σz⊗1 + 1⊗σz).
pub fn drive_term_4(drive: &DriveSpec, t: f64) -> HermitianOperator {
    HermitianOperator::new_unchecked(total_sigma_z().scale(-0.5 * drive.waveform().value(t)))
}

/// σz⊗1 + 1⊗σz, the operator both the drive and the bath couple to.
pub fn total_sigma_z() -> CMatrix {
    let id = CMatrix::identity(2);
    sigma_z().kron(&id) + id.kron(&sigma_z())
}

/// σz on qubit `which` (0 or 1) of the two-qubit register.
pub fn qubit_sigma_z(which: usize) -> CMatrix {
    let id = CMatrix::identity(2);
    if which == 0 {
        sigma_z().kron(&id)
    } else {
        id.kron(&sigma_z())
    }
}
