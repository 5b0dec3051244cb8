//! Simulator for algorithms that combine a single copy of an unknown pure
//! state with a verifier oracle measuring the projector `P = |ψ⟩⟨ψ|`.
//!
//! The crate provides:
//!
//! - [`hilbert`]: dense bipartite pure states, partial traces, Schmidt
//!   decompositions and fidelities;
//! - [`oracle`]: the call-counted verifier oracle, projective subsystem
//!   measurements, reflections and the conditional post-measurement maps
//!   `F₀`/`F₁`;
//! - [`restoration`]: the restore-until-verified loop, its exact expected
//!   running time `χ·d`, and the analytic conditional-success trajectory;
//! - [`tomography`]: three single-copy estimators for subsystem measurement
//!   statistics (restoration sampling, alternating projections, phase
//!   estimation on the two-dimensional Jordan subspace);
//! - [`povm`]: reduction of general POVM statistics to subsystem estimation
//!   through a dilation unitary;
//! - [`money`]: the product-state money cloning attack as an end-to-end
//!   benchmark;
//! - [`runner`]: reproducible, thread-count-independent Monte Carlo driving.
//!
//! All linear algebra is generic over the real scalar through [`Real`];
//! concrete aliases for the common double-precision instantiation are
//! exported at the crate root. States are dense; the practical ceiling is
//! about 2²⁰ amplitudes (see [`hilbert::MAX_AMPLITUDES`]).

pub mod error;
pub mod hilbert;
pub mod money;
pub mod oracle;
pub mod povm;
pub mod restoration;
pub mod runner;
pub mod scalar;
pub mod tomography;

pub use error::{Error, Result};
pub use scalar::{Complex, Real};

/// Double-precision pure state.
pub type PureState64 = hilbert::PureState<f64>;
/// Double-precision density matrix.
pub type DensityMatrix64 = hilbert::DensityMatrix<f64>;
/// Double-precision Schmidt decomposition.
pub type Schmidt64 = hilbert::SchmidtDecomposition<f64>;
/// Double-precision verifier oracle.
pub type VerifierOracle64 = oracle::VerifierOracle<f64>;
/// Double-precision estimate report.
pub type EstimateReport64 = tomography::EstimateReport<f64>;
/// Double-precision POVM description.
pub type PovmSpec64 = povm::PovmSpec<f64>;
