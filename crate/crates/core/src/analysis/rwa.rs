//! Rotating-wave analytics near a K-photon resonance: the stationary Bloch
//! vector, the time-averaged diabatic occupation built from it, the
//! multiphoton Bloch–Siegert shift and the resonance positions.
//!
//! Energies are taken in GHz·h and converted to rad/ns where they meet times.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_traits::Float;

use super::bessel::{bessel_j, bessel_j_table};
use crate::dissipation::SingleQubitDecay;
use crate::model::{DriveSpec, QubitParams};
use crate::{units, Error, Result};

/// Parameters of the K-photon rotating-wave problem.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RwaParams {
    /// Photon number K ≥ 1.
    pub k: u32,
    /// Energy relaxation time T1 (ns).
    pub t1: f64,
    /// Decoherence time T2 (ns).
    pub t2: f64,
    /// Effective coupling Δ_K = Δ·J_K(A/ħω) (GHz·h).
    pub delta_k: f64,
    /// Equilibrium population difference Z⁽⁰⁾.
    pub z0: f64,
}

impl RwaParams {
    /// Builds the parameters for drive `drive` (after its filter), taking
    /// T1 and T2 from the amplitude-damping channel and Z⁽⁰⁾ = 1.
    pub fn new(
        qp: &QubitParams,
        drive: &DriveSpec,
        k: u32,
        decay: &SingleQubitDecay,
    ) -> Result<Self> {
        let p = RwaParams {
            k,
            t1: decay.t1(),
            t2: decay.t2(),
            delta_k: effective_coupling(qp, drive, k)?,
            z0: 1.0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::invalid("k", "photon number must be at least 1"));
        }
        if !(self.t1 > 0.0) || !(self.t2 > 0.0) {
            return Err(Error::invalid("t1/t2", "relaxation times must be positive"));
        }
        if !(0.0..=1.0).contains(&self.z0) {
            return Err(Error::invalid("z0", "must lie in [0, 1]"));
        }
        if !self.delta_k.is_finite() {
            return Err(Error::invalid("delta_k", "must be finite"));
        }
        Ok(())
    }

    fn parity(&self) -> f64 {
        if self.k.is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }
}

/// Δ_K = Δ·J_K(A/ħω) in GHz·h, with A the amplitude after the drive filter.
pub fn effective_coupling(qp: &QubitParams, drive: &DriveSpec, k: u32) -> Result<f64> {
    let w = drive.waveform();
    Ok(qp.delta * bessel_j(k as i32, w.amplitude / units::linear(w.omega))?)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

/// Detuning Kω − ε0/ħ, coupling Δ_K/ħ and 1/T2 in rad/ns and 1/ns.
fn angular_terms(rp: &RwaParams, eps0: f64, omega: f64) -> (f64, f64, f64) {
    (
        rp.k as f64 * omega - units::angular(eps0),
        units::angular(rp.delta_k),
        1.0 / rp.t2,
    )
}

/// Stationary point of the rotating-frame Bloch equations:
///
/// X = (−1)^{K+1}(Kħω − ε0)Δ_K Z⁽⁰⁾/D, Y = (−1)^K (ħ/T2)Δ_K Z⁽⁰⁾/D,
/// Z = Z⁽⁰⁾[1 − (T1/T2)Δ_K²/D], D = (Kħω − ε0)² + (ħ/T2)² + (T1/T2)Δ_K².
pub fn rwa_stationary(rp: &RwaParams, eps0: f64, omega: f64) -> BlochVector {
    let (det, dk, g) = angular_terms(rp, eps0, omega);
    let ratio = rp.t1 / rp.t2;
    let d = det * det + g * g + ratio * dk * dk;
    let s = rp.parity();
    BlochVector {
        x: -s * det * dk * rp.z0 / d,
        y: s * g * dk * rp.z0 / d,
        z: rp.z0 * (1.0 - ratio * dk * dk / d),
    }
}

/// Right-hand side (dX/dt, dY/dt, dZ/dt) of the rotating-frame Bloch equations.
pub fn bloch_rhs(rp: &RwaParams, eps0: f64, omega: f64, v: &BlochVector) -> [f64; 3] {
    let (det, dk, g) = angular_terms(rp, eps0, omega);
    let s = rp.parity();
    [
        -det * v.y - g * v.x,
        det * v.x - g * v.y + s * dk * v.z,
        -s * dk * v.y - (v.z - rp.z0) / rp.t1,
    ]
}

/// Stationary upper-level occupation written directly as a Lorentzian:
///
/// ρ̄++ = (1 − Z⁽⁰⁾)/2 + Z⁽⁰⁾ (Δ_K²/2) / [Δ_K² + (Kħω − ε0)² T2/T1 + ħ²/(T1T2)].
pub fn rwa_excited_population(rp: &RwaParams, eps0: f64, omega: f64) -> f64 {
    let (det, dk, _) = angular_terms(rp, eps0, omega);
    let lorentzian = 0.5 * dk * dk / (dk * dk + det * det * rp.t2 / rp.t1 + 1.0 / (rp.t1 * rp.t2));
    0.5 * (1.0 - rp.z0) + rp.z0 * lorentzian
}

/// Nodes of the periodic trapezoid rule used for the quadratures I1, I2.
pub const QUADRATURE_NODES: usize = 4096;

/// Period averages
/// I1 = ⟨ε(τ)/√(Δ²+ε²(τ))⟩ and I2 = ⟨Δ cos(Kτ)/√(Δ²+ε²(τ))⟩,
/// ε(τ) = ε0 + A cos τ, by the periodic trapezoid rule.
pub fn quadratures(delta: f64, eps0: f64, amplitude: f64, k: u32, nodes: usize) -> (f64, f64) {
    let h = TAU / nodes as f64;
    let (mut i1, mut i2) = (0.0, 0.0);
    for j in 0..nodes {
        let tau = j as f64 * h;
        let eps = eps0 + amplitude * tau.cos();
        let r = delta.hypot(eps);
        if r == 0.0 {
            continue;
        }
        i1 += eps / r;
        i2 += delta * (k as f64 * tau).cos() / r;
    }
    (i1 / nodes as f64, i2 / nodes as f64)
}

/// Advisory bound on Δ/√(A·ħω) beyond which the rotating-wave description is
/// not expected to hold.
pub const VALIDITY_BOUND: f64 = 0.3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RwaAverage {
    pub p_down: f64,
    pub p_up: f64,
    pub bloch: BlochVector,
    pub i1: f64,
    pub i2: f64,
    /// Δ/√(A·ħω).
    pub validity_ratio: f64,
    /// Set when `validity_ratio` exceeds [`VALIDITY_BOUND`].
    pub warning: bool,
}

/// Time-averaged diabatic occupation ρ̄↓↓ = ½(1 − I1·Z − I2·X).
pub fn rwa_averaged_population(qp: &QubitParams, drive: &DriveSpec, rp: &RwaParams) -> RwaAverage {
    let w = drive.waveform();
    let bloch = rwa_stationary(rp, qp.eps0, w.omega);
    let (i1, i2) = quadratures(qp.delta, qp.eps0, w.amplitude, rp.k, QUADRATURE_NODES);
    let p_down = 0.5 * (1.0 - i1 * bloch.z - i2 * bloch.x);
    let validity_ratio = qp.delta / (w.amplitude * units::linear(w.omega)).sqrt();
    RwaAverage {
        p_down,
        p_up: 1.0 - p_down,
        bloch,
        i1,
        i2,
        validity_ratio,
        warning: !(validity_ratio <= VALIDITY_BOUND),
    }
}

/// Analytic ρ̄↓↓ across `omegas` for a fixed photon number, with Δ_K, T1, T2
/// re-evaluated at every frequency.
pub fn rwa_curve(
    qp: &QubitParams,
    drive: &DriveSpec,
    k: u32,
    decay: &SingleQubitDecay,
    omegas: &[f64],
) -> Result<Vec<f64>> {
    omegas
        .iter()
        .map(|&omega| {
            let d = drive.with_omega(omega);
            let rp = RwaParams::new(qp, &d, k, decay)?;
            Ok(rwa_averaged_population(qp, &d, &rp).p_down)
        })
        .collect()
}

pub const DEFAULT_L_MAX: u32 = 200;

/// Result of the truncated Bloch–Siegert sum.
#[derive(Clone, Debug, PartialEq)]
pub struct BlochSiegert {
    /// δ_K in GHz (shift of ω/2π).
    pub shift: f64,
    pub l_max: u32,
    /// Σ |terms| over the last ten orders on either side of the window.
    pub truncation_estimate: f64,
    /// Orders dropped because |ε0 + lħω| < 1e-9 GHz·h (besides l = −K).
    pub excluded: Vec<i32>,
}

/// Denominators closer to zero than this (GHz·h) are dropped.
pub const RESONANT_DENOMINATOR: f64 = 1e-9;

/// δ_K = Δ²/(2hK) Σ_{l≠−K, |l|≤l_max} J_l²(A/ħω)/(ε0 + lħω).
pub fn bloch_siegert_shift(
    qp: &QubitParams,
    drive: &DriveSpec,
    k: u32,
    l_max: u32,
) -> Result<BlochSiegert> {
    if k == 0 {
        return Err(Error::invalid("k", "photon number must be at least 1"));
    }
    if l_max < k {
        return Err(Error::invalid("l_max", "must reach the resonant order"));
    }
    let w = drive.waveform();
    let f = units::linear(w.omega);
    let j = bessel_j_table(l_max, w.amplitude / f)?;
    let mut sum = 0.0;
    let mut tail = 0.0;
    let mut excluded = Vec::new();
    let tail_start = l_max.saturating_sub(10);
    for l in -(l_max as i32)..=(l_max as i32) {
        if l == -(k as i32) {
            continue;
        }
        let den = qp.eps0 + l as f64 * f;
        if den.abs() < RESONANT_DENOMINATOR {
            excluded.push(l);
            continue;
        }
        let jl = j[l.unsigned_abs() as usize];
        let term = jl * jl / den;
        sum += term;
        if l.unsigned_abs() > tail_start {
            tail += term.abs();
        }
    }
    let prefactor = qp.delta * qp.delta / (2.0 * k as f64);
    Ok(BlochSiegert {
        shift: prefactor * sum,
        l_max,
        truncation_estimate: prefactor * tail,
        excluded,
    })
}

/// Resonance positions ω_K = δE/(Kħ) in rad/ns.
pub fn resonance_positions(qp: &QubitParams, ks: &[u32]) -> Result<Vec<f64>> {
    ks.iter()
        .map(|&k| {
            if k == 0 {
                Err(Error::invalid("k", "photon number must be at least 1"))
            } else {
                Ok(units::angular(qp.splitting()) / k as f64)
            }
        })
        .collect()
}

/// Distance between the K and K−1 resonances (rad/ns, negative since ω_K < ω_{K−1}).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResonanceSpacing {
    /// ω_K − ω_{K−1} = δE/ħ·(1/K − 1/(K−1)).
    pub exact: f64,
    /// Large-K form −δE/(ħK²).
    pub large_k: f64,
}

pub fn resonance_spacing(qp: &QubitParams, k: u32) -> Result<ResonanceSpacing> {
    if k < 2 {
        return Err(Error::invalid("k", "spacing needs K ≥ 2"));
    }
    let e = units::angular(qp.splitting());
    let k = k as f64;
    Ok(ResonanceSpacing {
        exact: e * (1.0 / k - 1.0 / (k - 1.0)),
        large_k: -e / (k * k),
    })
}
