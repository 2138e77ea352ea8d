//! Kernel ridge regression: closed-form fit through an SPD factorization,
//! prediction, and the RKHS norm of a fitted readout.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::matern::{cross_distance_matrix, gram, gram_from_distances, MaternParams};
use crate::measure::FeatureVector;
use crate::{Error, Result};

/// How the regularizer enters the normal equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum RidgeConvention {
    /// (K + N lambda I) alpha = y.
    #[default]
    ScaledByN,
    /// (K + lambda I) alpha = y.
    Plain,
}

impl RidgeConvention {
    pub fn ridge(self, lambda_reg: f64, n: usize) -> f64 {
        match self {
            RidgeConvention::ScaledByN => n as f64 * lambda_reg,
            RidgeConvention::Plain => lambda_reg,
        }
    }
}

/// A trained kernel readout: h(.) = sum_i alpha_i kappa(support_i, .).
#[derive(Debug, Clone)]
pub struct KrrModel {
    pub matern: MaternParams,
    pub lambda_reg: f64,
    pub convention: RidgeConvention,
    pub support: Vec<FeatureVector>,
    pub alpha: DVector<f64>,
    pub y_train: DVector<f64>,
    gram: DMatrix<f64>,
}

fn solve_with_refinement(
    a: &DMatrix<f64>,
    y: &DVector<f64>,
) -> Option<DVector<f64>> {
    // Cholesky first (SPD for any positive ridge); pivoted LU as the
    // fallback for the lambda = 0 near-singular edge.
    enum Factor {
        Chol(nalgebra::linalg::Cholesky<f64, nalgebra::Dyn>),
        Lu(nalgebra::linalg::FullPivLU<f64, nalgebra::Dyn, nalgebra::Dyn>),
    }
    let factor = match nalgebra::linalg::Cholesky::new(a.clone()) {
        Some(c) => Factor::Chol(c),
        None => Factor::Lu(a.clone().full_piv_lu()),
    };
    let solve = |rhs: &DVector<f64>| -> Option<DVector<f64>> {
        match &factor {
            Factor::Chol(c) => Some(c.solve(rhs)),
            Factor::Lu(lu) => lu.solve(rhs),
        }
    };
    let mut x = solve(y)?;
    // two rounds of iterative refinement with the same factorization
    for _ in 0..2 {
        let r = y - a * &x;
        if let Some(dx) = solve(&r) {
            x += dx;
        }
    }
    Some(x)
}

/// Solves (K + ridge I) alpha = y with ridge given by the convention.
/// Residual must satisfy ||(K + ridge I) alpha - y|| <= 1e-8 ||y||.
pub fn krr_fit(
    params: &MaternParams,
    lambda_reg: f64,
    features: &[FeatureVector],
    y: &[f64],
    convention: RidgeConvention,
) -> Result<KrrModel> {
    if features.is_empty() {
        return Err(Error::invalid("need at least one training point"));
    }
    if features.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: features.len(),
            got: y.len(),
        });
    }
    if !(lambda_reg >= 0.0) {
        return Err(Error::invalid("lambda_reg must be >= 0"));
    }
    let k = gram(params, features)?;
    krr_fit_with_gram(params, lambda_reg, features, &k, y, convention)
}

/// Fit against a precomputed Gram matrix (hyper-parameter sweeps reuse
/// the distance matrix, so the Gram arrives ready-made).
pub fn krr_fit_with_gram(
    params: &MaternParams,
    lambda_reg: f64,
    features: &[FeatureVector],
    k: &DMatrix<f64>,
    y: &[f64],
    convention: RidgeConvention,
) -> Result<KrrModel> {
    let n = features.len();
    if k.nrows() != n || k.ncols() != n || y.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: k.nrows(),
        });
    }
    let ridge = convention.ridge(lambda_reg, n);
    let mut a = k.clone();
    for i in 0..n {
        a[(i, i)] += ridge;
    }
    let yv = DVector::from_column_slice(y);
    let alpha = solve_with_refinement(&a, &yv).ok_or_else(|| {
        Error::NumericalRank(
            "kernel system is singular; raise lambda_reg to regularize the solve".into(),
        )
    })?;
    let residual = (&a * &alpha - &yv).norm();
    let scale = yv.norm();
    if residual > 1e-8 * scale && scale > 0.0 {
        return Err(Error::NumericalRank(format!(
            "solve residual {residual:.3e} exceeds 1e-8 * ||y||; raise lambda_reg"
        )));
    }
    Ok(KrrModel {
        matern: *params,
        lambda_reg,
        convention,
        support: features.to_vec(),
        alpha,
        y_train: yv,
        gram: k.clone(),
    })
}

/// Persisted form of a fitted readout: hyper-parameters and dual
/// coefficients, with the support features referenced by their feature
/// cache key rather than stored inline.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KrrModelRecord {
    pub matern: MaternParams,
    pub lambda_reg: f64,
    pub convention: RidgeConvention,
    pub support_cache_key: String,
    pub alpha: Vec<f64>,
}

impl KrrModelRecord {
    /// Rebuilds a usable model given the support features the cache key
    /// points at (and their training labels, for diagnostics).
    pub fn restore(&self, support: &[FeatureVector], y_train: &[f64]) -> Result<KrrModel> {
        if support.len() != self.alpha.len() || y_train.len() != self.alpha.len() {
            return Err(Error::DimensionMismatch {
                expected: self.alpha.len(),
                got: support.len(),
            });
        }
        let k = gram(&self.matern, support)?;
        Ok(KrrModel {
            matern: self.matern,
            lambda_reg: self.lambda_reg,
            convention: self.convention,
            support: support.to_vec(),
            alpha: DVector::from_column_slice(&self.alpha),
            y_train: DVector::from_column_slice(y_train),
            gram: k,
        })
    }
}

impl KrrModel {
    pub fn n_train(&self) -> usize {
        self.support.len()
    }

    /// The persistable view of this model.
    pub fn record(&self, support_cache_key: &str) -> KrrModelRecord {
        KrrModelRecord {
            matern: self.matern,
            lambda_reg: self.lambda_reg,
            convention: self.convention,
            support_cache_key: support_cache_key.to_owned(),
            alpha: self.alpha.iter().cloned().collect(),
        }
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    /// Rescales the dual coefficients in place (norm-budget experiments).
    pub fn scale_alpha(&mut self, factor: f64) {
        self.alpha *= factor;
    }

    /// Predictions on the training inputs via the cached Gram matrix.
    pub fn predict_train(&self) -> DVector<f64> {
        &self.gram * &self.alpha
    }

    pub fn train_mse(&self) -> f64 {
        let r = self.predict_train() - &self.y_train;
        r.norm_squared() / self.n_train() as f64
    }
}

/// y_hat_j = sum_i alpha_i kappa(support_i, new_j).
pub fn krr_predict(model: &KrrModel, features_new: &[FeatureVector]) -> Result<Vec<f64>> {
    if features_new.is_empty() {
        return Ok(Vec::new());
    }
    if features_new[0].len() != model.support[0].len() {
        return Err(Error::DimensionMismatch {
            expected: model.support[0].len(),
            got: features_new[0].len(),
        });
    }
    let dist = cross_distance_matrix(features_new, &model.support)?;
    let k_new = gram_from_distances(&model.matern, &dist)?;
    Ok((k_new * &model.alpha).iter().cloned().collect())
}

/// sqrt(alpha^T K alpha), the RKHS norm of the fitted readout.
pub fn rkhs_norm(model: &KrrModel) -> f64 {
    let quad = model.alpha.dot(&(&model.gram * &model.alpha));
    quad.max(0.0).sqrt()
}

/// Mean squared error between two equal-length slices.
pub fn mse(predictions: &[f64], targets: &[f64]) -> f64 {
    assert_eq!(predictions.len(), targets.len());
    predictions
        .iter()
        .zip(targets)
        .map(|(p, t)| (p - t) * (p - t))
        .sum::<f64>()
        / predictions.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;
    use approx::assert_abs_diff_eq;
    use rand::Rng as _;

    fn params(nu: f64, xi: f64) -> MaternParams {
        MaternParams::new(nu, xi).unwrap()
    }

    fn random_features(n: usize, dim: usize, seed: u64) -> Vec<FeatureVector> {
        let mut rng = rng_from_seed(seed);
        (0..n)
            .map(|_| FeatureVector {
                values: (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect(),
            })
            .collect()
    }

    #[test]
    fn orthonormal_limit_identity_gram() {
        // widely separated points at tiny lengthscale: K ~ I, so alpha ~ y
        let p = params(0.5, 1e-3);
        let feats: Vec<FeatureVector> = (0..4)
            .map(|i| FeatureVector {
                values: vec![i as f64 * 10.0],
            })
            .collect();
        let y = vec![1.0, -2.0, 0.5, 3.0];
        let model = krr_fit(&p, 0.0, &feats, &y, RidgeConvention::ScaledByN).unwrap();
        for (a, b) in model.alpha.iter().zip(&y) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-10);
        }
    }

    #[test]
    fn heavy_regularization_shrinks_to_zero() {
        let p = params(1.5, 1.0);
        let feats = random_features(6, 3, 1);
        let y = vec![1.0, 2.0, -1.0, 0.5, 0.3, -2.0];
        let model = krr_fit(&p, 1e9, &feats, &y, RidgeConvention::ScaledByN).unwrap();
        assert!(model.alpha.norm() < 1e-6);
        let preds = krr_predict(&model, &feats).unwrap();
        assert!(preds.iter().all(|v| v.abs() < 1e-5));
    }

    #[test]
    fn pinned_system_matches_direct_solve() {
        let p = params(1.5, 0.8);
        let feats = random_features(3, 2, 2);
        let y = vec![0.7, -0.2, 1.1];
        let lambda = 0.01;
        let model = krr_fit(&p, lambda, &feats, &y, RidgeConvention::ScaledByN).unwrap();
        // direct dense inverse as the oracle
        let k = gram(&p, &feats).unwrap();
        let a = &k + DMatrix::identity(3, 3) * (3.0 * lambda);
        let inv = a.try_inverse().unwrap();
        let oracle = inv * DVector::from_column_slice(&y);
        for (got, want) in model.alpha.iter().zip(oracle.iter()) {
            assert_abs_diff_eq!(got, want, epsilon = 1e-10);
        }
    }

    #[test]
    fn interpolation_at_zero_ridge() {
        let p = params(1.5, 1.0);
        let feats = random_features(8, 3, 3);
        let mut rng = rng_from_seed(4);
        let y: Vec<f64> = (0..8).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let model = krr_fit(&p, 0.0, &feats, &y, RidgeConvention::ScaledByN).unwrap();
        let preds = krr_predict(&model, &feats).unwrap();
        for (pred, target) in preds.iter().zip(&y) {
            assert_abs_diff_eq!(pred, target, epsilon = 1e-6);
        }
    }

    #[test]
    fn prediction_basics() {
        let p = params(0.5, 1.0);
        let feats = vec![FeatureVector { values: vec![0.0, 0.0] }];
        let y = vec![2.5];
        let model = krr_fit(&p, 0.0, &feats, &y, RidgeConvention::ScaledByN).unwrap();
        // single support point queried at distance 0: prediction = alpha_1
        let preds = krr_predict(&model, &feats).unwrap();
        assert_abs_diff_eq!(preds[0], model.alpha[0], epsilon = 1e-12);

        let mut zeroed = model.clone();
        zeroed.scale_alpha(0.0);
        let preds = krr_predict(&zeroed, &random_features(3, 2, 5)).unwrap();
        assert!(preds.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn rkhs_norm_values() {
        let p = params(0.5, 1e-3);
        // near-identity gram: norm ~ ||alpha||
        let feats: Vec<FeatureVector> = (0..3)
            .map(|i| FeatureVector { values: vec![i as f64 * 50.0] })
            .collect();
        let y = vec![3.0, 4.0, 0.0];
        let model = krr_fit(&p, 0.0, &feats, &y, RidgeConvention::ScaledByN).unwrap();
        assert_abs_diff_eq!(rkhs_norm(&model), 5.0, epsilon = 1e-9);

        let mut zeroed = model.clone();
        zeroed.scale_alpha(0.0);
        assert_eq!(rkhs_norm(&zeroed), 0.0);

        // pinned 3x3 case against a direct quadratic form
        let p = params(1.5, 1.0);
        let feats = random_features(3, 2, 6);
        let y = vec![0.4, -1.0, 0.8];
        let model = krr_fit(&p, 0.05, &feats, &y, RidgeConvention::ScaledByN).unwrap();
        let k = gram(&p, &feats).unwrap();
        let direct = (model.alpha.transpose() * &k * &model.alpha)[(0, 0)].sqrt();
        assert_abs_diff_eq!(rkhs_norm(&model), direct, epsilon = 1e-12);
    }

    #[test]
    fn monotone_regularization_path() {
        let p = params(1.5, 1.0);
        let feats = random_features(12, 3, 7);
        let mut rng = rng_from_seed(8);
        let y: Vec<f64> = (0..12).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut prev = -1.0;
        for exp in (-12..=2).step_by(2) {
            let lambda = 10f64.powi(exp);
            let model = krr_fit(&p, lambda, &feats, &y, RidgeConvention::ScaledByN).unwrap();
            let cur = model.train_mse();
            assert!(
                cur >= prev - 1e-12,
                "train MSE not monotone: {prev} -> {cur} at lambda {lambda}"
            );
            prev = cur;
        }
    }

    #[test]
    fn scaled_readout_identity() {
        // scaling an interpolant's alpha by c makes the training MSE
        // exactly (1 - c)^2 ||y||^2 / N
        let p = params(1.5, 1.0);
        let feats = random_features(6, 3, 9);
        let mut rng = rng_from_seed(10);
        let y: Vec<f64> = (0..6).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let model = krr_fit(&p, 0.0, &feats, &y, RidgeConvention::ScaledByN).unwrap();
        let norm_sq: f64 = y.iter().map(|v| v * v).sum();
        for c in [0.0, 0.25, 0.5, 0.9, 1.0] {
            let mut scaled = model.clone();
            scaled.scale_alpha(c);
            let expect = (1.0 - c) * (1.0 - c) * norm_sq / 6.0;
            assert_abs_diff_eq!(scaled.train_mse(), expect, epsilon = 1e-8);
        }
    }

    #[test]
    fn ridge_conventions_differ_by_n() {
        let p = params(1.5, 1.0);
        let feats = random_features(5, 2, 11);
        let y = vec![1.0, 0.0, -1.0, 0.5, 0.2];
        let scaled = krr_fit(&p, 0.01, &feats, &y, RidgeConvention::ScaledByN).unwrap();
        let plain = krr_fit(&p, 0.05, &feats, &y, RidgeConvention::Plain).unwrap();
        for (a, b) in scaled.alpha.iter().zip(plain.alpha.iter()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn singular_system_reports_rank_error() {
        let p = params(1.5, 1.0);
        // duplicated support point at lambda = 0: K is exactly singular
        let f = FeatureVector { values: vec![0.3, 0.3] };
        let feats = vec![f.clone(), f];
        let y = vec![1.0, -1.0];
        let err = krr_fit(&p, 0.0, &feats, &y, RidgeConvention::ScaledByN).unwrap_err();
        assert!(matches!(err, Error::NumericalRank(_)), "got {err:?}");
    }

    #[test]
    fn model_record_round_trips() {
        let p = params(1.5, 0.9);
        let feats = random_features(6, 3, 14);
        let y = vec![0.6, -0.3, 1.2, 0.0, -0.9, 0.4];
        let model = krr_fit(&p, 0.01, &feats, &y, RidgeConvention::ScaledByN).unwrap();
        let record = model.record("cachekey123");
        let json = serde_json::to_string(&record).unwrap();
        let parsed: KrrModelRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.support_cache_key, "cachekey123");
        let restored = parsed.restore(&feats, &y).unwrap();
        let fresh = krr_predict(&model, &random_features(3, 3, 15)).unwrap();
        let again = krr_predict(&restored, &random_features(3, 3, 15)).unwrap();
        assert_eq!(fresh, again);
        assert!(parsed.restore(&feats[..3], &y[..3]).is_err());
    }

    #[test]
    fn length_mismatch_rejected() {
        let p = params(1.5, 1.0);
        let feats = random_features(4, 2, 12);
        let y = vec![1.0, 2.0, 3.0, 4.0];
        let model = krr_fit(&p, 0.1, &feats, &y, RidgeConvention::ScaledByN).unwrap();
        let wrong = random_features(2, 3, 13);
        assert!(krr_predict(&model, &wrong).is_err());
        assert!(krr_fit(&p, 0.1, &feats, &[1.0], RidgeConvention::ScaledByN).is_err());
    }
}
