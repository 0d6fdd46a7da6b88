//! Experiment runner around the teleportation simulator.
//!
//! Sweeps evaluate the requested figures of merit on a `(t, u)` grid for one
//! channel and one time model, writing deterministic CSV tables and simple
//! SVG line plots. Figure presets pin the sweep parameters used by the
//! standard plots; `validate` runs the library's cross-check suite.

pub mod config;
pub mod emit;
mod error;
pub mod presets;
pub mod sweep;
pub mod validate;

pub use error::Error;

/// Result alias for runner operations.
pub type Result<T> = std::result::Result<T, Error>;
