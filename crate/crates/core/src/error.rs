use thiserror::Error;

/// Errors raised by the simulation kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A Kraus family does not resolve the identity.
    #[error("kraus family violates completeness, deviation {deviation:.3e}")]
    CompletenessViolation { deviation: f64 },

    /// An operator has the wrong dimension for the requested operation.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// A matrix handed to the eigensolver is not Hermitian.
    #[error("matrix is not hermitian, asymmetry {asymmetry:.3e}")]
    NotHermitian { asymmetry: f64 },

    /// A density matrix candidate does not have unit trace.
    #[error("trace deviates from one by {deviation:.3e}")]
    TraceNotUnit { deviation: f64 },

    /// A density matrix candidate has a clearly negative eigenvalue.
    #[error("matrix is not positive semidefinite, eigenvalue {eigenvalue:.3e}")]
    NotPositiveSemidefinite { eigenvalue: f64 },

    /// A Bloch vector left the unit ball.
    #[error("bloch vector leaves the unit ball, |v| = {norm}")]
    BlochOutOfBall { norm: f64 },

    /// A scalar argument is outside its admissible range.
    #[error("{what} = {value} outside {range}")]
    RangeError {
        what: &'static str,
        value: f64,
        range: &'static str,
    },

    /// Doubling the quadrature nodes moved the result too much.
    #[error("quadrature unstable, doubling nodes moved the result by {delta:.3e}")]
    QuadratureTooCoarse { delta: f64 },

    /// The Bloch vector reaches the sphere with a nonvanishing radial
    /// derivative, so neither branch of the Fisher information formula
    /// applies. This signals an inconsistent backend.
    #[error("bloch vector on the sphere with radial derivative {radial:.3e}")]
    SingularBloch { norm: f64, radial: f64 },
}
