//! Instantaneous eigenframes S(t) and their time derivatives.
//!
//! Columns of `S` are the eigenvectors of H(t) written in the diabatic basis,
//! so a diabatic density matrix maps to the instantaneous basis as S†ρS.
//! Column phases are fixed in two ways: an isolated diagonalization makes the
//! largest-magnitude component of each column real and positive, and along a
//! trajectory [`continuous_frame`] overrides that choice so consecutive frames
//! have real positive overlaps.

use libm::atan2;
use num_traits::Float;

use crate::linalg::{jacobi_eigh, CMatrix, C64, MAX_DIM};
use crate::model::{hamiltonian_4, DriveSpec, HermitianOperator, QubitParams, TwoQubitParams};
use crate::{units, Error, Result};

/// Ascending eigenenergies (GHz·h) and the unitary transfer matrix at time `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenFrame {
    pub t: f64,
    energies: [f64; MAX_DIM],
    pub s: CMatrix,
}

impl EigenFrame {
    pub fn new(t: f64, energies: &[f64], s: CMatrix) -> Self {
        let mut e = [0.0; MAX_DIM];
        e[..energies.len()].copy_from_slice(energies);
        EigenFrame { t, energies: e, s }
    }

    pub fn dim(&self) -> usize {
        self.s.dim()
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies[..self.dim()]
    }

    pub fn at_time(mut self, t: f64) -> Self {
        self.t = t;
        self
    }

    /// Diabatic operator → instantaneous basis (S† A S).
    pub fn to_instantaneous(&self, a: &CMatrix) -> CMatrix {
        self.s.adjoint() * *a * self.s
    }

    /// Instantaneous-basis operator → diabatic basis (S A S†).
    pub fn to_diabatic(&self, a: &CMatrix) -> CMatrix {
        self.s * *a * self.s.adjoint()
    }

    /// `‖S†S − 1‖`.
    pub fn unitarity_error(&self) -> f64 {
        (self.s.adjoint() * self.s - CMatrix::identity(self.dim())).norm()
    }

    /// `‖H − S diag(E) S†‖`.
    pub fn reconstruction_error(&self, h: &CMatrix) -> f64 {
        (*h - self.s * CMatrix::diagonal(self.energies()) * self.s.adjoint()).norm()
    }

    fn with_column_phase(mut self, col: usize, phase: C64) -> Self {
        for r in 0..self.dim() {
            self.s[(r, col)] *= phase;
        }
        self
    }
}

/// Approximation of dS/dt paired with the frame it was taken about.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameDerivative {
    pub t: f64,
    pub ds_dt: CMatrix,
}

impl FrameDerivative {
    pub fn zero(t: f64, dim: usize) -> Self {
        FrameDerivative {
            t,
            ds_dt: CMatrix::zeros(dim),
        }
    }

    /// The connection `S†·dS/dt`, anti-Hermitian for an exact derivative.
    pub fn connection(&self, frame: &EigenFrame) -> CMatrix {
        frame.s.adjoint() * self.ds_dt
    }
}

/// Makes the largest-magnitude component of every column real and positive.
fn fix_gauge(mut frame: EigenFrame) -> EigenFrame {
    let n = frame.dim();
    for c in 0..n {
        let col = frame.s.column(c);
        let mut best = 0;
        let mut best_mag = -1.0;
        for (r, z) in col.iter().enumerate().take(n) {
            // Ties resolved toward the lowest index.
            if z.norm() > best_mag * (1.0 + 1e-9) {
                best_mag = z.norm();
                best = r;
            }
        }
        if best_mag > 0.0 {
            let z = col[best];
            frame = frame.with_column_phase(c, z.conj() / z.norm());
        }
    }
    frame
}

fn eig_2(h: &CMatrix) -> EigenFrame {
    let a = h[(0, 0)].re;
    let d = h[(1, 1)].re;
    let b = h[(0, 1)];
    let mean = 0.5 * (a + d);
    let m = 0.5 * (a - d);
    let r = m.hypot(b.norm());
    let theta = atan2(b.norm(), m);
    let phase = if b.norm() > 0.0 {
        b / b.norm()
    } else {
        C64::new(1.0, 0.0)
    };
    let (sh, ch) = ((0.5 * theta).sin(), (0.5 * theta).cos());
    let mut s = CMatrix::zeros(2);
    s[(0, 0)] = phase * sh;
    s[(1, 0)] = C64::new(-ch, 0.0);
    s[(0, 1)] = phase * ch;
    s[(1, 1)] = C64::new(sh, 0.0);
    EigenFrame::new(0.0, &[mean - r, mean + r], s)
}

/// Eigen-decomposition of a Hermitian operator with ascending energies and the
/// isolated-time gauge. Dimension 2 uses closed forms, dimension 4 Jacobi.
/// The returned frame has `t = 0`; use [`EigenFrame::at_time`].
pub fn eig_hermitian(h: &HermitianOperator) -> EigenFrame {
    let m = h.matrix();
    let frame = if m.dim() == 2 {
        eig_2(m)
    } else {
        let eig = jacobi_eigh(m);
        EigenFrame::new(0.0, &eig.values[..m.dim()], eig.vectors)
    };
    fix_gauge(frame)
}

/// Checked variant of [`eig_hermitian`] for raw matrices.
pub fn eig_matrix(m: &CMatrix) -> Result<EigenFrame> {
    Ok(eig_hermitian(&HermitianOperator::new(*m)?))
}

/// Numerical instantaneous frame of the two-qubit Hamiltonian at `t`.
pub fn frame_4(tp: &TwoQubitParams, drive: &DriveSpec, t: f64) -> EigenFrame {
    eig_hermitian(&hamiltonian_4(tp, drive, t)).at_time(t)
}

/// Numerical instantaneous frame of the single-qubit Hamiltonian at `t`.
pub fn frame_2_numerical(qp: &QubitParams, drive: &DriveSpec, t: f64) -> EigenFrame {
    eig_hermitian(&crate::model::hamiltonian_2(qp, drive, t)).at_time(t)
}

/// Mixing angle θ = atan2(Δ, ε), so that γ+ = cos(θ/2) and γ− = sin(θ/2).
#[inline]
fn mixing_angle(delta: f64, eps: f64) -> f64 {
    atan2(delta, eps)
}

/// `γ±(t) = √{[1 ± ε(t)/√(Δ²+ε²(t))]/2}` as `(γ+, γ−)`.
pub fn gammas(delta: f64, eps: f64) -> (f64, f64) {
    let half = 0.5 * mixing_angle(delta, eps);
    (half.cos(), half.sin())
}

/// Analytic single-qubit frame `S̃ = [[γ+, γ−], [γ−, −γ+]]` with energies
/// `E∓ = ∓√(Δ²+ε²)/2`. `S̃` is real, symmetric and its own inverse.
pub fn transfer_2level(qp: &QubitParams, drive: &DriveSpec, t: f64) -> Result<EigenFrame> {
    analytic_frame_2(qp.delta, qp.eps0 + drive.waveform().value(t), t)
}

pub(crate) fn analytic_frame_2(delta: f64, eps: f64, t: f64) -> Result<EigenFrame> {
    if delta == 0.0 && eps == 0.0 {
        return Err(Error::DegenerateFrame { t });
    }
    let (gp, gm) = gammas(delta, eps);
    let s = CMatrix::from_real_rows(&[&[gp, gm], &[gm, -gp]]);
    let half_gap = 0.5 * delta.hypot(eps);
    Ok(EigenFrame::new(t, &[-half_gap, half_gap], s))
}

/// Analytic `dS̃/dt` through `dγ±/dt = ∓γ∓ θ'/2`, θ' = −Δ ε'/(Δ² + ε²).
pub fn transfer_2level_derivative(
    qp: &QubitParams,
    drive: &DriveSpec,
    t: f64,
) -> Result<FrameDerivative> {
    let w = drive.waveform();
    analytic_derivative_2(qp.delta, qp.eps0 + w.value(t), w.rate(t), t)
}

pub(crate) fn analytic_derivative_2(
    delta: f64,
    eps: f64,
    eps_rate: f64,
    t: f64,
) -> Result<FrameDerivative> {
    let r2 = delta * delta + eps * eps;
    if r2 == 0.0 {
        return Err(Error::DegenerateFrame { t });
    }
    let half_rate = -0.5 * delta * eps_rate / r2;
    let (gp, gm) = gammas(delta, eps);
    let ds_dt = CMatrix::from_real_rows(&[&[-gm, gp], &[gp, gm]]).scale(half_rate);
    Ok(FrameDerivative { t, ds_dt })
}

const PERMUTATIONS_4: [[usize; 4]; 24] = [
    [0, 1, 2, 3],
    [0, 1, 3, 2],
    [0, 2, 1, 3],
    [0, 2, 3, 1],
    [0, 3, 1, 2],
    [0, 3, 2, 1],
    [1, 0, 2, 3],
    [1, 0, 3, 2],
    [1, 2, 0, 3],
    [1, 2, 3, 0],
    [1, 3, 0, 2],
    [1, 3, 2, 0],
    [2, 0, 1, 3],
    [2, 0, 3, 1],
    [2, 1, 0, 3],
    [2, 1, 3, 0],
    [2, 3, 0, 1],
    [2, 3, 1, 0],
    [3, 0, 1, 2],
    [3, 0, 2, 1],
    [3, 1, 0, 2],
    [3, 1, 2, 0],
    [3, 2, 0, 1],
    [3, 2, 1, 0],
];
const PERMUTATIONS_2: [[usize; 4]; 2] = [[0, 1, 2, 3], [1, 0, 2, 3]];

/// Relative gap below which two levels count as degenerate.
pub const DEGENERACY_THRESHOLD: f64 = 1e-10;

/// Re-phases (and, near degeneracies, re-orders) the columns of `current` so
/// that every overlap ⟨v_prev|v_cur⟩ is real and positive.
///
/// Fails with [`Error::StepTooLarge`] when the best column matching still has
/// `|Π_k ⟨v_prev,k|v_cur,π(k)⟩| < 0.5`.
pub fn continuous_frame(current: &EigenFrame, previous: &EigenFrame) -> Result<EigenFrame> {
    let n = current.dim();
    if previous.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: previous.dim(),
            found: n,
        });
    }
    let overlap = previous.s.adjoint() * current.s;

    let energies = current.energies();
    let scale = energies
        .iter()
        .fold(0.0f64, |m, e| m.max(e.abs()))
        .max(f64::MIN_POSITIVE);
    let near_degenerate = energies
        .windows(2)
        .any(|w| (w[1] - w[0]).abs() < DEGENERACY_THRESHOLD * scale);
    let identity_ok = (0..n).all(|k| overlap[(k, k)].norm() > 0.5);

    // perm[k] = column of `current` that continues column k of `previous`.
    let mut perm = [0usize, 1, 2, 3];
    if near_degenerate || !identity_ok {
        let candidates: &[[usize; 4]] = if n == 4 {
            &PERMUTATIONS_4
        } else {
            &PERMUTATIONS_2
        };
        let mut best = f64::NEG_INFINITY;
        for p in candidates {
            let score: f64 = (0..n).map(|k| overlap[(k, p[k])].norm_sqr()).sum();
            if score > best + 1e-12 {
                best = score;
                perm = *p;
            }
        }
    }

    let det: f64 = (0..n).map(|k| overlap[(k, perm[k])].norm()).product();
    if det < 0.5 {
        return Err(Error::StepTooLarge { t: current.t, det });
    }

    let mut s = CMatrix::zeros(n);
    let mut e = [0.0; MAX_DIM];
    for k in 0..n {
        let src = perm[k];
        let o = overlap[(k, src)];
        let phase = o.conj() / o.norm();
        for r in 0..n {
            s[(r, k)] = current.s[(r, src)] * phase;
        }
        e[k] = energies[src];
    }
    Ok(EigenFrame::new(current.t, &e[..n], s))
}

/// Default finite-difference stencil: 10⁻⁶ of a drive period.
pub fn default_stencil(omega: f64) -> f64 {
    1e-6 * units::period(omega)
}

/// Central difference `[S(t+h) − S(t−h)]/(2h)` about `center`, with the
/// stencil frames gauge-continued to `center`.
pub fn frame_derivative(
    mut frame_fn: impl FnMut(f64) -> Result<EigenFrame>,
    center: &EigenFrame,
    h_fd: f64,
) -> Result<FrameDerivative> {
    if !(h_fd > 0.0) {
        return Err(Error::invalid("h_fd", "must be positive"));
    }
    let t = center.t;
    let plus = continuous_frame(&frame_fn(t + h_fd)?, center)?;
    let minus = continuous_frame(&frame_fn(t - h_fd)?, center)?;
    Ok(FrameDerivative {
        t,
        ds_dt: (plus.s - minus.s).scale(0.5 / h_fd),
    })
}
