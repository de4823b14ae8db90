//! Unit conventions.
//!
//! Energies enter and leave the crate as `E/h` in GHz. The equations of motion
//! use ħ = 1 with angular frequencies in rad/ns, so an energy of `e` GHz·h is
//! the angular frequency `2π·e` rad/ns.

use core::f64::consts::TAU;

/// Energy in GHz·h → angular frequency in rad/ns.
#[inline]
pub fn angular(energy_ghz: f64) -> f64 {
    TAU * energy_ghz
}

/// Angular frequency in rad/ns → energy in GHz·h (equivalently `ω/2π` in GHz).
#[inline]
pub fn linear(omega: f64) -> f64 {
    omega / TAU
}

/// Drive period `2π/ω` in ns.
#[inline]
pub fn period(omega: f64) -> f64 {
    TAU / omega
}
