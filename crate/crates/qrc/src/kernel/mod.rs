//! Matern profile (with modified Bessel K evaluation), the kernel it
//! induces on measured feature vectors, Gram assembly, kernel ridge
//! regression, and the train/validation hyper-parameter tuner.

mod bessel;
mod krr;
mod matern;
mod tune;

pub use bessel::{bessel_k, bessel_k_general, bessel_k_half_integer};
pub use krr::{
    krr_fit, krr_fit_with_gram, krr_predict, mse, rkhs_norm, KrrModel, KrrModelRecord,
    RidgeConvention,
};
pub use matern::{
    cross_distance_matrix, distance_matrix, gram, gram_from_distances, gram_serial, kernel_eval,
    matern_profile, MaternParams,
};
pub use tune::{tune, TuneResult, TuneTrial, TunerConfig};
