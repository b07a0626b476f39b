//! Numerical tolerances shared by the solvers and their tests.

/// Relative Hermiticity tolerance: `max |M_ij - conj(M_ji)| <= HERMITIAN_TOL * max |M_ij|`.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Jacobi stops once the off-diagonal Frobenius norm falls below this times `||M||_F`.
pub const JACOBI_OFF_DIAG_TOL: f64 = 1e-14;

/// Upper bound on Jacobi sweeps for the fixed small sizes used here.
pub const JACOBI_MAX_SWEEPS: usize = 30;

/// Eigenvalues of a partial transpose above `-PSD_TOL` count as non-negative.
pub const PSD_TOL: f64 = 1e-12;

/// Relative gap under which two energies are considered degenerate.
pub const DEGENERACY_TOL: f64 = 1e-10;

/// Below this `beta * J2` the ratio `sinh(beta J2) / J2` is taken from its series.
pub const SINHC_SERIES_CUTOFF: f64 = 1e-6;

/// Halley iteration for Lambert W_-1.
pub const LAMBERT_TOL: f64 = 1e-14;
pub const LAMBERT_MAX_ITER: usize = 50;

/// Lower end of the field bracket for the optimal-field root.
pub const FIELD_BRACKET_MIN: f64 = 1e-12;

/// Relative step tolerance for the optimal-field root: `|dh| <= FIELD_ROOT_TOL * max(1, h)`.
pub const FIELD_ROOT_TOL: f64 = 1e-10;

/// Inverse-temperature scan for the boundary temperature.
pub const BETA_SCAN_MIN: f64 = 1e-3;
pub const BETA_SCAN_MAX: f64 = 1e3;
pub const BETA_SCAN_POINTS: usize = 600;
pub const BETA_ROOT_TOL: f64 = 1e-14;

/// Relative step for finite-difference derivatives in temperature.
pub const TEMPERATURE_FD_STEP: f64 = 1e-4;

/// Multi-start field search: allowed excess of the unconstrained optimum.
pub const HYPOTHESIS_GAP_TOL: f64 = 1e-6;
