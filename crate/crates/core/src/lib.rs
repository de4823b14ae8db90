//! Dissipative dynamics of resonantly driven single and coupled flux qubits.
//!
//! The crate propagates the GKSL master equation in the instantaneous
//! eigenbasis of a periodically driven Hamiltonian, maps multiphoton
//! resonances in time-averaged diabatic occupations, and evaluates the
//! rotating-wave analytics (stationary Bloch solution, multiphoton
//! Bloch–Siegert shift) used to cross-check the numerics.
//!
//! Units: user-facing energies are linear frequencies `E/h` in GHz, drive and
//! resonator frequencies are angular (rad/ns), times are in ns and rates in
//! 1/ns. The conversion `E → 2π·E` happens in [`units::angular`] only.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
// `num_traits::Float` supplies float methods without std; when std is linked
// into the same build (tests, or feature unification with std dependents)
// the inherent methods win and the import goes unused.
#![allow(unused_imports)]
// `!(x > 0.0)` deliberately rejects NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]
// Systems and states are small fixed-size Copy values; boxing them costs more.
#![allow(clippy::large_enum_variant)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod dissipation;
mod error;
pub mod linalg;
pub mod model;
pub mod propagator;
pub mod spectral;
pub mod units;

pub use error::{Error, Result};
pub use linalg::{CMatrix, C64};
