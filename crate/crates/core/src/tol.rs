//! Central table of numerical tolerances.
//!
//! Every comparison threshold used by the library lives here so that the
//! accuracy contract of the whole crate can be read in one place.

/// Maximum `|m[i][j] - conj(m[j][i])|` for a matrix to count as Hermitian
/// when validating a density matrix.
pub const HERMITICITY: f64 = 1e-12;

/// Maximum `|tr(rho) - 1|` for a density matrix.
pub const UNIT_TRACE: f64 = 1e-12;

/// Smallest admissible eigenvalue of a density matrix (round-off floor).
pub const PSD_MIN_EIGENVALUE: f64 = -1e-10;

/// Maximum deviation of `sum_i w_i K_i^dag K_i` from the identity before a
/// Kraus family is rejected as incomplete.
pub const KRAUS_COMPLETENESS: f64 = 1e-10;

/// Asymmetry absorbed by symmetrisation before the eigensolver runs; larger
/// asymmetry is reported as an error instead of being hidden.
pub const EIGEN_SYMMETRIZE: f64 = 1e-10;

/// Jacobi sweep target: off-diagonal Frobenius norm below this terminates.
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-13;

/// Slack on `|v| <= 1` for Bloch vectors produced by physical maps.
pub const BLOCH_BALL: f64 = 1e-10;

/// Probabilities this far outside `[0, 1]` are clamped; anything worse is a
/// model bug and raises an error.
pub const PROBABILITY_CLAMP: f64 = 1e-12;

/// Maximum movement of a sphere average when the node count doubles.
pub const QUADRATURE_STABILITY: f64 = 1e-8;

/// Window around `|v| = 1` in which the pure-state branch of the quantum
/// Fisher information formula applies.
pub const QFI_PURE_BRANCH: f64 = 1e-9;
