// negated comparisons are used as NaN-rejecting range guards throughout
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Quantum-reservoir featurization and kernel readout for windowed time series.
//!
//! The pipeline: raw inputs are projected to reservoir coordinates with a
//! Gaussian random projection, injected step by step into a contractive
//! quantum channel simulated exactly on density matrices, read out as
//! Pauli expectation values (exactly or via classical shadows), and fed to
//! a Matern kernel ridge regression.

pub mod bounds;
mod error;
pub mod kernel;
pub mod measure;
pub mod pipeline;
pub mod projection;
pub mod qcore;
pub mod reservoir;
pub mod rng;
pub mod synthdata;

pub use error::{Error, Result};
