//! Tsallis, Renyi and von Neumann entropies of small density matrices, and
//! the deformed subadditivity inequalities for four-level states that can be
//! read either as a qubit pair or as a single spin-3/2 qudit.
//!
//! Everything is built on a self-contained complex Jacobi eigensolver; all
//! entropies are evaluated on the spectrum, in nats.

#![forbid(unsafe_code)]

pub mod cli;
pub mod entropy;
pub mod error;
pub mod inequalities;
pub mod linalg;
pub mod states;

pub use entropy::{DeformationParam, EntropyKind, EntropyValue, ProbabilityVector};
pub use error::{Error, Result, Violation};
pub use inequalities::{InequalityReport, SweepResult, SweepRow};
pub use linalg::{ComplexMatrix, SpectralDecomposition};
pub use states::{DensityMatrix, Dims, IndexLabeling, WernerParam, XStateParams};
