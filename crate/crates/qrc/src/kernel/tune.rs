//! Hyper-parameter selection: a grid over the smoothness nu and a
//! bounded golden-section search over log10(xi), scored by validation
//! MSE of a lightly regularized fit on a deterministic split.

use serde::{Deserialize, Serialize};

use super::krr::{krr_fit_with_gram, mse, RidgeConvention};
use super::matern::{
    cross_distance_matrix, distance_matrix, gram_from_distances, MaternParams,
};
use crate::measure::FeatureVector;
use crate::rng::rng_from_seed;
use crate::{Error, Result};

const GOLDEN_RATIO: f64 = 1.618_033_988_749_895;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TunerConfig {
    pub nu_grid: Vec<f64>,
    /// Search bounds for xi, in raw units; the search runs in log10.
    pub xi_bounds: (f64, f64),
    pub val_ratio: f64,
    /// Small ridge stabilizing the tuning solves.
    pub lambda_reg: f64,
    /// Evaluation budget per nu for the xi search.
    pub xi_maxiter: usize,
    pub split_seed: u64,
    pub convention: RidgeConvention,
}

impl Default for TunerConfig {
    fn default() -> Self {
        Self {
            nu_grid: vec![0.5, 1.5, 2.5, 5.0],
            xi_bounds: (1e-3, 1e3),
            val_ratio: 0.2,
            lambda_reg: 1e-6,
            xi_maxiter: 80,
            split_seed: 0,
            convention: RidgeConvention::default(),
        }
    }
}

impl TunerConfig {
    fn validate(&self) -> Result<()> {
        if self.nu_grid.is_empty() {
            return Err(Error::invalid("nu grid is empty"));
        }
        if !(self.xi_bounds.0 > 0.0 && self.xi_bounds.0 < self.xi_bounds.1) {
            return Err(Error::invalid("xi bounds must be ordered and positive"));
        }
        if !(0.0 < self.val_ratio && self.val_ratio < 1.0) {
            return Err(Error::invalid("val_ratio must lie in (0, 1)"));
        }
        if self.xi_maxiter < 4 {
            return Err(Error::invalid("xi_maxiter must be at least 4"));
        }
        Ok(())
    }
}

/// One scored hyper-parameter evaluation.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TuneTrial {
    pub nu: f64,
    pub xi: f64,
    pub val_mse: f64,
}

/// Tuning outcome: the selected parameters, their validation MSE, and
/// every trial in evaluation order.
#[derive(Debug, Clone)]
pub struct TuneResult {
    pub params: MaternParams,
    pub val_mse: f64,
    pub trials: Vec<TuneTrial>,
}

/// Deterministic Fisher-Yates split into (train, validation) index sets,
/// each sorted ascending.
fn split_indices(n: usize, val_ratio: f64, seed: u64) -> (Vec<usize>, Vec<usize>) {
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = rng_from_seed(seed);
    use rand::Rng as _;
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
    let n_val = ((n as f64 * val_ratio).round() as usize).clamp(1, n - 1);
    let mut val: Vec<usize> = order[..n_val].to_vec();
    let mut train: Vec<usize> = order[n_val..].to_vec();
    val.sort_unstable();
    train.sort_unstable();
    (train, val)
}

/// Selects (nu, xi) minimizing validation MSE. Ties break toward smaller
/// nu, then smaller xi.
pub fn tune(cfg: &TunerConfig, features: &[FeatureVector], y: &[f64]) -> Result<TuneResult> {
    cfg.validate()?;
    if features.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: features.len(),
            got: y.len(),
        });
    }
    if features.len() < 5 {
        return Err(Error::invalid(format!(
            "need at least 5 samples to split, got {}",
            features.len()
        )));
    }
    let (train_idx, val_idx) = split_indices(features.len(), cfg.val_ratio, cfg.split_seed);
    let train_feats: Vec<FeatureVector> = train_idx.iter().map(|&i| features[i].clone()).collect();
    let val_feats: Vec<FeatureVector> = val_idx.iter().map(|&i| features[i].clone()).collect();
    let train_y: Vec<f64> = train_idx.iter().map(|&i| y[i]).collect();
    let val_y: Vec<f64> = val_idx.iter().map(|&i| y[i]).collect();

    // distances do not depend on (nu, xi); computed once per split
    let train_dist = distance_matrix(&train_feats)?;
    let val_dist = cross_distance_matrix(&val_feats, &train_feats)?;

    let mut trials = Vec::new();
    let mut best: Option<(f64, f64, f64)> = None; // (mse, nu, xi)

    for &nu in &cfg.nu_grid {
        let evaluate = |xi: f64, trials: &mut Vec<TuneTrial>| -> Result<f64> {
            let params = MaternParams::new(nu, xi)?;
            let k_train = gram_from_distances(&params, &train_dist)?;
            let model = krr_fit_with_gram(
                &params,
                cfg.lambda_reg,
                &train_feats,
                &k_train,
                &train_y,
                cfg.convention,
            )?;
            let k_val = gram_from_distances(&params, &val_dist)?;
            let preds: Vec<f64> = (k_val * &model.alpha).iter().cloned().collect();
            let score = mse(&preds, &val_y);
            trials.push(TuneTrial {
                nu,
                xi,
                val_mse: score,
            });
            Ok(score)
        };

        // golden-section on log10(xi); on ties the bracket moves left,
        // steering degenerate objectives toward the lower bound
        let (mut lo, mut hi) = (cfg.xi_bounds.0.log10(), cfg.xi_bounds.1.log10());
        let mut evals = 0usize;
        let mut c = hi - (hi - lo) / GOLDEN_RATIO;
        let mut d = lo + (hi - lo) / GOLDEN_RATIO;
        let mut fc = evaluate(10f64.powf(c), &mut trials)?;
        let mut fd = evaluate(10f64.powf(d), &mut trials)?;
        evals += 2;
        while evals < cfg.xi_maxiter && (hi - lo) > 1e-6 {
            if fc <= fd {
                hi = d;
                d = c;
                fd = fc;
                c = hi - (hi - lo) / GOLDEN_RATIO;
                fc = evaluate(10f64.powf(c), &mut trials)?;
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + (hi - lo) / GOLDEN_RATIO;
                fd = evaluate(10f64.powf(d), &mut trials)?;
            }
            evals += 1;
        }

        // best evaluated point for this nu, ties toward smaller xi
        let mut nu_best: Option<(f64, f64)> = None;
        for t in trials.iter().filter(|t| t.nu == nu) {
            let better = match nu_best {
                None => true,
                Some((bm, bx)) => t.val_mse < bm || (t.val_mse == bm && t.xi < bx),
            };
            if better {
                nu_best = Some((t.val_mse, t.xi));
            }
        }
        let (score, xi) = nu_best.expect("xi search ran");
        // strict comparison: the grid is scanned ascending, so equal
        // scores keep the smaller nu
        if best.is_none_or(|(bm, _, _)| score < bm) {
            best = Some((score, nu, xi));
        }
    }

    let (val_mse, nu, xi) = best.expect("at least one trial");
    Ok(TuneResult {
        params: MaternParams::new(nu, xi)?,
        val_mse,
        trials,
    })
}
