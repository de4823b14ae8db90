//! Bath-induced rates.
//!
//! Two qubits share one Ohmic bath coupled through σz⊗1 + 1⊗σz. The rate
//! tables are built once from the stationary Hamiltonian H0 and indexed by
//! level number; they do not depend on the drive. A single qubit instead
//! relaxes through a phenomenological channel |E−⟩⟨E+| of rate Γ/ħ.

use libm::expm1;

use crate::linalg::{CMatrix, MAX_DIM};
use crate::model::{stationary_hamiltonian_4, total_sigma_z, TwoQubitParams};
use crate::spectral::{eig_hermitian, EigenFrame, DEGENERACY_THRESHOLD};
use crate::{units, Error, Result};

/// Ohmic bath: coupling α and temperature k_B·T in GHz·h.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BathParams {
    pub alpha: f64,
    pub kbt: f64,
}

impl BathParams {
    pub fn new(alpha: f64, kbt: f64) -> Result<Self> {
        if !(alpha >= 0.0) || !alpha.is_finite() {
            return Err(Error::invalid("alpha", "must be finite and non-negative"));
        }
        if !(kbt >= 0.0) || !kbt.is_finite() {
            return Err(Error::invalid("kbt", "must be finite and non-negative"));
        }
        Ok(BathParams { alpha, kbt })
    }
}

/// Ohmic spectral density J(ω) = α ħ ω (ħ = 1, ω in rad/ns).
pub fn spectral_density(bath: &BathParams, omega: f64) -> f64 {
    bath.alpha * omega
}

/// `J(ω)·[coth(ħω/2k_BT) − 1]`, written as `2αω/(e^{ω/k_BT} − 1)` and
/// continued to `2α k_BT` at ω = 0.
pub fn thermal_weight(bath: &BathParams, omega: f64) -> f64 {
    let kt = units::angular(bath.kbt);
    if kt == 0.0 {
        return if omega < 0.0 {
            -2.0 * bath.alpha * omega
        } else {
            0.0
        };
    }
    let x = omega / kt;
    if x == 0.0 {
        return 2.0 * bath.alpha * kt;
    }
    let em1 = expm1(x);
    if em1.is_infinite() {
        return 0.0;
    }
    2.0 * bath.alpha * kt * x / em1
}

/// `(τz⁽¹⁾ + τz⁽²⁾)` in the stationary eigenbasis: S_st† (σz⊗1 + 1⊗σz) S_st.
pub fn coupling_operator(stationary: &EigenFrame) -> CMatrix {
    stationary.to_instantaneous(&total_sigma_z())
}

/// `ReΓ_lmnk = (1/8ħ) Λ_lmnk J(ω_nk)[coth(ħω_nk/2k_BT) − 1]` in 1/ns, with
/// `Λ_lmnk = τ_lm τ_nk` and `ω_nk = (E_n − E_k)/ħ` taken from `frame`, which
/// must be the stationary eigenframe of H0.
pub fn gamma_tensor(
    bath: &BathParams,
    frame: &EigenFrame,
    l: usize,
    m: usize,
    n: usize,
    k: usize,
) -> f64 {
    let tau = coupling_operator(frame);
    gamma_from_tau(bath, frame.energies(), &tau, l, m, n, k)
}

fn gamma_from_tau(
    bath: &BathParams,
    energies: &[f64],
    tau: &CMatrix,
    l: usize,
    m: usize,
    n: usize,
    k: usize,
) -> f64 {
    let lambda = (tau[(l, m)] * tau[(n, k)]).re;
    let omega_nk = units::angular(energies[n] - energies[k]);
    lambda * thermal_weight(bath, omega_nk) / 8.0
}

/// Which levels enter the sum `½ Σ_r (W_rm + W_rn)` of the dephasing rates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DephasingSum {
    /// All levels, including r = m and r = n.
    #[default]
    AllLevels,
    /// Excludes r ∈ {m, n} for m ≠ n. Population loss rates γ_mm are unchanged.
    ExcludeEndpoints,
}

/// Transition rates `W_mn` (n → m) and decoherence rates `γ_mn`, both in 1/ns.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateSet {
    pub w: [[f64; MAX_DIM]; MAX_DIM],
    pub gamma: [[f64; MAX_DIM]; MAX_DIM],
    pub stationary_frame: EigenFrame,
    /// Set when H0 has a (near-)degenerate spectrum; the ω→0 limit was used.
    pub degenerate: bool,
}

impl RateSet {
    pub fn dim(&self) -> usize {
        self.stationary_frame.dim()
    }

    /// Rate matrix `R` of the population block: `dp/dt = R p`.
    pub fn population_generator(&self) -> [[f64; MAX_DIM]; MAX_DIM] {
        let n = self.dim();
        let mut r = [[0.0; MAX_DIM]; MAX_DIM];
        for k in 0..n {
            for j in 0..n {
                if j != k {
                    r[k][j] = self.w[k][j];
                }
            }
            r[k][k] = -self.gamma[k][k];
        }
        r
    }
}

/// Rates for two qubits coupled to the common Ohmic bath.
pub fn rate_set(bath: &BathParams, tp: &TwoQubitParams, variant: DephasingSum) -> RateSet {
    let frame = eig_hermitian(&stationary_hamiltonian_4(tp));
    rate_set_for_frame(bath, &frame, variant)
}

pub(crate) fn rate_set_for_frame(
    bath: &BathParams,
    frame: &EigenFrame,
    variant: DephasingSum,
) -> RateSet {
    let n = frame.dim();
    let e = frame.energies();
    let tau = coupling_operator(frame);
    let re_gamma = |l, m, nn, k| gamma_from_tau(bath, e, &tau, l, m, nn, k);

    let mut w = [[0.0; MAX_DIM]; MAX_DIM];
    for m in 0..n {
        for k in 0..n {
            w[m][k] = 2.0 * re_gamma(k, m, m, k);
        }
    }
    let mut gamma = [[0.0; MAX_DIM]; MAX_DIM];
    for m in 0..n {
        for k in 0..n {
            let sum: f64 = (0..n)
                .filter(|&r| m == k || variant == DephasingSum::AllLevels || (r != m && r != k))
                .map(|r| w[r][m] + w[r][k])
                .sum();
            gamma[m][k] = 0.5 * sum - re_gamma(k, k, m, m) - re_gamma(m, m, k, k);
        }
    }

    let scale = e
        .iter()
        .fold(0.0f64, |a, x| a.max(x.abs()))
        .max(f64::MIN_POSITIVE);
    let degenerate = e
        .windows(2)
        .any(|p| (p[1] - p[0]).abs() < DEGENERACY_THRESHOLD * scale);
    RateSet {
        w,
        gamma,
        stationary_frame: *frame,
        degenerate,
    }
}

/// Single-qubit relaxation channel of rate Γ/ħ (1/ns).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingleQubitDecay {
    pub rate: f64,
}

impl SingleQubitDecay {
    pub fn new(rate: f64) -> Result<Self> {
        if !(rate >= 0.0) || !rate.is_finite() {
            return Err(Error::invalid("rate", "must be finite and non-negative"));
        }
        Ok(SingleQubitDecay { rate })
    }

    /// Channel from Γ given as an energy in GHz·h.
    pub fn from_energy(gamma_ghz: f64) -> Result<Self> {
        Self::new(units::angular(gamma_ghz))
    }

    /// Energy relaxation time T1 = ħ/Γ (ns).
    pub fn t1(&self) -> f64 {
        1.0 / self.rate
    }

    /// Decoherence time T2 = 2ħ/Γ (ns) of the pure relaxation channel.
    pub fn t2(&self) -> f64 {
        2.0 / self.rate
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::QubitParams;
    use core::f64::consts::TAU;

    fn fig2() -> TwoQubitParams {
        TwoQubitParams::new(
            QubitParams::new(1.5, 2.0).unwrap(),
            QubitParams::new(1.0, 4.8).unwrap(),
            0.82,
        )
        .unwrap()
    }

    #[test]
    fn spectral_density_is_linear_and_odd() {
        let bath = BathParams::new(0.01, 1.0).unwrap();
        assert_eq!(spectral_density(&bath, 0.0), 0.0);
        assert!((spectral_density(&bath, TAU) - 0.01 * TAU).abs() < 1e-16);
        assert_eq!(spectral_density(&bath, -2.5), -spectral_density(&bath, 2.5));
    }

    #[test]
    fn zero_temperature_limits() {
        let cold = BathParams::new(0.01, 0.0).unwrap();
        assert_eq!(thermal_weight(&cold, 3.0), 0.0);
        assert_eq!(thermal_weight(&cold, 0.0), 0.0);
        assert!((thermal_weight(&cold, -3.0) - 0.06).abs() < 1e-15);
    }

    #[test]
    fn zero_frequency_limit_matches_laurent_expansion() {
        let bath = BathParams::new(0.01, 1.0).unwrap();
        let frame = eig_hermitian(&stationary_hamiltonian_4(&fig2()));
        let tau = coupling_operator(&frame);
        let lambda = (tau[(1, 1)] * tau[(2, 2)]).re;
        let limit = lambda * bath.alpha * units::angular(bath.kbt) / 4.0;
        assert!((gamma_tensor(&bath, &frame, 1, 1, 2, 2) - limit).abs() < 1e-15);
        // coth expanded near zero: J(ω)[coth(ω/2kT) − 1] → 2αkT − αω + O(ω²).
        let kt = units::angular(bath.kbt);
        let w = 1e-6;
        let coth = 1.0 / (w / (2.0 * kt)).tanh();
        let direct = bath.alpha * w * (coth - 1.0);
        assert!((thermal_weight(&bath, w) - direct).abs() < 1e-9 * direct);
        assert!((thermal_weight(&bath, w) - 2.0 * bath.alpha * kt).abs() < 1e-6);
    }

    #[test]
    fn fig2_rates_are_nonnegative_and_symmetric() {
        let bath = BathParams::new(0.01, 1.0).unwrap();
        let rates = rate_set(&bath, &fig2(), DephasingSum::AllLevels);
        assert!(!rates.degenerate);
        for m in 0..4 {
            for n in 0..4 {
                assert!(rates.w[m][n] >= 0.0);
                assert!((rates.gamma[m][n] - rates.gamma[n][m]).abs() < 1e-15);
                if m != n {
                    assert!(rates.gamma[m][n] >= 0.0);
                }
            }
        }
    }

    #[test]
    fn detailed_balance_for_fig2() {
        let bath = BathParams::new(0.01, 1.0).unwrap();
        let rates = rate_set(&bath, &fig2(), DephasingSum::AllLevels);
        let e = rates.stationary_frame.energies();
        for m in 0..4 {
            for n in 0..4 {
                if m == n {
                    continue;
                }
                let ratio = rates.w[m][n] / rates.w[n][m];
                let expected = (-(e[m] - e[n]) / bath.kbt).exp();
                assert!(
                    (ratio / expected - 1.0).abs() < 1e-9,
                    "{m}{n}: {ratio} vs {expected}"
                );
            }
        }
    }

    #[test]
    fn population_loss_equals_outgoing_rates() {
        let bath = BathParams::new(0.02, 0.7).unwrap();
        let rates = rate_set(&bath, &fig2(), DephasingSum::AllLevels);
        for k in 0..4 {
            let out: f64 = (0..4).filter(|&r| r != k).map(|r| rates.w[r][k]).sum();
            assert!((rates.gamma[k][k] - out).abs() < 1e-14);
        }
    }

    #[test]
    fn no_coupling_means_no_rates() {
        let bath = BathParams::new(0.0, 1.0).unwrap();
        let rates = rate_set(&bath, &fig2(), DephasingSum::AllLevels);
        assert!(rates.w.iter().flatten().all(|&x| x == 0.0));
        assert!(rates.gamma.iter().flatten().all(|&x| x == 0.0));
    }

    #[test]
    fn restricted_sum_drops_only_endpoint_terms() {
        let bath = BathParams::new(0.01, 1.0).unwrap();
        let all = rate_set(&bath, &fig2(), DephasingSum::AllLevels);
        let restricted = rate_set(&bath, &fig2(), DephasingSum::ExcludeEndpoints);
        for k in 0..4 {
            assert_eq!(all.gamma[k][k], restricted.gamma[k][k]);
        }
        let w = &all.w;
        let drop = 0.5 * (w[0][0] + w[0][1] + w[1][0] + w[1][1]);
        assert!((all.gamma[0][1] - restricted.gamma[0][1] - drop).abs() < 1e-14);
    }

    #[test]
    fn cold_bath_only_relaxes_downward() {
        let bath = BathParams::new(0.01, 0.0).unwrap();
        let rates = rate_set(&bath, &fig2(), DephasingSum::AllLevels);
        for m in 0..4 {
            for n in 0..4 {
                if m > n {
                    assert_eq!(rates.w[m][n], 0.0);
                } else if m < n {
                    assert!(rates.w[m][n] >= 0.0);
                }
            }
        }
        assert!(rates.w[0][1] > 0.0);
    }

    #[test]
    fn rates_are_linear_in_alpha() {
        let a = rate_set(
            &BathParams::new(0.01, 1.0).unwrap(),
            &fig2(),
            DephasingSum::AllLevels,
        );
        let b = rate_set(
            &BathParams::new(0.03, 1.0).unwrap(),
            &fig2(),
            DephasingSum::AllLevels,
        );
        for m in 0..4 {
            for n in 0..4 {
                assert!((3.0 * a.w[m][n] - b.w[m][n]).abs() < 1e-14);
                assert!((3.0 * a.gamma[m][n] - b.gamma[m][n]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn single_qubit_times() {
        let d = SingleQubitDecay::from_energy(5e-3).unwrap();
        assert!((d.rate - TAU * 5e-3).abs() < 1e-18);
        assert_eq!(d.t2(), 2.0 * d.t1());
        assert!(SingleQubitDecay::new(-1.0).is_err());
    }
}
