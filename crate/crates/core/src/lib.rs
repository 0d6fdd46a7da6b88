//! Simulation library for bidirectional single-qubit teleportation over a
//! shared Bell resource that is distributed through partially correlated
//! decoherence channels (dephasing and amplitude damping).
//!
//! The crate is organised in four layers:
//!
//! - [`qmath`]: dense complex linear algebra for small operators (tensor
//!   products, Kraus application, partial transpose/trace, a Jacobi
//!   eigensolver, Bloch conversions),
//! - [`noise`]: the correlated two-use channel model and the two physical
//!   time-to-probability decoherence models,
//! - [`bqt`]: the teleportation protocol itself, its closed-form output map
//!   and an independent circuit-level oracle,
//! - [`metrics`]: negativity, teleportation fidelities and quantum Fisher
//!   information of the weight parameter.
//!
//! All public types are immutable value objects and all operations are pure
//! functions, so everything can be evaluated from many threads at once.

pub mod bqt;
mod error;
pub mod metrics;
pub mod noise;
pub mod qmath;
pub mod tol;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
