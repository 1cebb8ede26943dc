//! Joint active/passive precoding for wideband RIS-aided cell-free networks.
//!
//! The library covers the whole experiment pipeline:
//!
//! * [`config`] / [`model`] — scenario descriptions, stacked precoder and
//!   RIS phase representations, validation;
//! * [`channel`] — Rician/path-loss channel synthesis with deterministic
//!   per-link substreams;
//! * [`metrics`] — SINR, weighted sum-rate, the fractional-programming ratio
//!   terms, and a Monte-Carlo receiver check;
//! * [`fp`] — closed-form auxiliary updates and assembly of the two QCQP
//!   subproblems;
//! * [`ellipsoid`] / [`qcqp`] — Lagrange-dual solvers for the active and
//!   passive subproblems plus phase quantization;
//! * [`optimizer`] — the alternating weighted-sum-rate maximizer;
//! * [`scenario`] / [`sweep`] — the two reference topologies and the
//!   Monte-Carlo sweep harness with CSV output.
//!
//! All numerics are generic over the real scalar type via
//! [`scalar::Scalar`]; `f64` is the working precision (aliases below) and
//! `f32` is available for quick, low-precision experiments.

pub mod channel;
pub mod config;
pub mod ellipsoid;
pub mod fp;
pub mod metrics;
pub mod model;
pub mod optimizer;
pub mod qcqp;
pub mod scalar;
pub mod scenario;
pub mod sweep;
pub mod units;

/// Complex number over a generic real scalar.
pub type Cx<T> = num_complex::Complex<T>;
/// Dynamically sized complex matrix.
pub type CMat<T> = nalgebra::DMatrix<Cx<T>>;
/// Dynamically sized complex column vector.
pub type CVec<T> = nalgebra::DVector<Cx<T>>;

// Concrete aliases at working precision.
pub type C64 = Cx<f64>;
pub type CMat64 = CMat<f64>;
pub type CVec64 = CVec<f64>;
pub type ScenarioConfig64 = config::ScenarioConfig<f64>;
pub type ChannelSet64 = channel::ChannelSet<f64>;
pub type PrecoderStack64 = model::PrecoderStack<f64>;
pub type PhaseConfig64 = model::PhaseConfig<f64>;

pub use channel::{generate_channel_set, generate_channel_set_seeded, ChannelSet, NoiseModel};
pub use config::{ScenarioConfig, SolverOptions, ValidationReport};
pub use model::{NetworkDims, PhaseConfig, PhaseConstraint, PrecoderStack};
pub use scalar::Scalar;
