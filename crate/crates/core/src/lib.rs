//! Entanglement measures and WYKO Bell-operator expectation values for the
//! four-qubit family
//!
//! ```text
//! |ψ(θ₁,θ₂)⟩ = cosθ₁/2 (|0000⟩ + |1111⟩) − sinθ₁/2 (|0011⟩ − |1100⟩)
//!            − cosθ₂/2 (|0101⟩ − |1010⟩) + sinθ₂/2 (|0110⟩ + |1001⟩)
//! ```
//!
//! Every closed-form expression is paired with a state-vector computation so
//! the two can be checked against each other:
//!
//! - [`state`]: dense pure states and the family constructors.
//! - [`pauli`]: Pauli strings and sums applied matrix-free to states.
//! - [`measures`]: τₙ and τ₍₄,₈₎, numeric and closed form.
//! - [`bell`]: the WYKO operator, its expectation and the τ₍₄,₈₎ ↔ ⟨B⟩ map.
//! - [`optimizer`]: seeded multi-restart search over measurement settings.
//! - [`sweep`]: grid sweeps and their CSV encoding.
//!
//! Batch work (sweeps, restarts, random-state checks) runs on rayon when the
//! `parallel` feature is enabled; see [`Execution`].

pub mod bell;
pub mod error;
mod exec;
pub mod measures;
pub mod optimizer;
pub mod pauli;
pub mod state;
pub mod sweep;

pub use error::{Error, Result};
pub use exec::Execution;

/// Tolerance used for normalization, range slack and support extraction.
pub const TOLERANCE: f64 = 1e-12;
