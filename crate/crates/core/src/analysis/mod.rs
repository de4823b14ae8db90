//! Time averaging, resonance scans and the rotating-wave analytics used to
//! interpret them.

mod averaging;
pub mod bessel;
mod reduction;
mod rwa;
mod scan;
mod shift;

pub use averaging::{
    diabatic_population, time_average, time_average_with, AveragingSpec, AveragingWindow,
    TimeAverage, TimeAverager,
};
pub use bessel::{bessel_j, bessel_j_table};
pub use reduction::{
    pair_resonance, polarizations, stationary_populations, two_qubit_reduction_check,
    ReductionReport, ReductionSettings,
};
pub use rwa::{
    bloch_rhs, bloch_siegert_shift, effective_coupling, quadratures, resonance_positions,
    resonance_spacing, rwa_averaged_population, rwa_curve, rwa_excited_population, rwa_stationary,
    BlochSiegert, BlochVector, ResonanceSpacing, RwaAverage, RwaParams, DEFAULT_L_MAX,
    QUADRATURE_NODES, VALIDITY_BOUND,
};
pub use scan::{
    evaluate, linear_grid, resonance_scan, scan_point, ScanPoint, ScanResult, ScanSettings,
};
pub use shift::{default_search, least_squares_shift, CubicSpline, ShiftFit};
