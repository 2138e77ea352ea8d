//! The three-term generalization bound for RKHS-ball readouts trained on
//! strided windows of a beta-mixing process, plus helpers for geometric
//! mixing profiles and the window-process mixing upper bound.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Everything the bound needs. `beta_g` is the user-supplied mixing
/// coefficient of the input/output process at the window gap; it is
/// never estimated from data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundInputs {
    /// Number of training windows; must be even (the blocking argument
    /// splits it into mu = N/2 pairs).
    pub n_windows: usize,
    pub w: usize,
    /// RKHS norm budget.
    pub lambda_cap: f64,
    /// Label bound sup |y|.
    pub upsilon_y: f64,
    pub nu: f64,
    pub xi: f64,
    pub r_subs: usize,
    /// Number of measured observables per sub-reservoir.
    pub n_obs: usize,
    /// Largest contraction factor across sub-reservoirs.
    pub lambda_star: f64,
    pub delta: f64,
    pub beta_g: f64,
}

/// The evaluated bound. When delta' <= 0 the confidence budget is spent
/// on dependence and the bound is vacuous: every term except the
/// truncation term is reported as +infinity.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BoundReport {
    pub rademacher_term: f64,
    pub mixing_penalty: f64,
    pub truncation_term: f64,
    pub total: f64,
    pub delta_prime: f64,
    pub vacuous: bool,
}

/// Evaluates the three displayed terms:
/// `4 sqrt(2) L (L+Y) / sqrt(N)`, plus `3 (L+Y)^2 sqrt(log(4/delta')) /
/// sqrt(N)`, plus `(4 L (L+Y) / xi) sqrt(nu R |O| / (nu-1)) lambda_star^w`,
/// with `delta' = delta - 4 (N/2 - 1) beta_g`.
pub fn bound(inputs: &BoundInputs) -> Result<BoundReport> {
    if inputs.n_windows == 0 || !inputs.n_windows.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "N must be even and positive, got {}",
            inputs.n_windows
        )));
    }
    if !(inputs.nu > 1.0) {
        return Err(Error::invalid(format!(
            "nu > 1 required by the truncation term, got {}",
            inputs.nu
        )));
    }
    if !(inputs.xi > 0.0) {
        return Err(Error::invalid("xi must be positive"));
    }
    if !(0.0 < inputs.delta && inputs.delta < 1.0) {
        return Err(Error::invalid("delta must lie in (0, 1)"));
    }
    if !(inputs.beta_g >= 0.0) {
        return Err(Error::invalid("beta_g must be >= 0"));
    }
    if !(0.0 < inputs.lambda_star && inputs.lambda_star < 1.0) {
        return Err(Error::invalid("lambda_star must lie in (0, 1)"));
    }
    if inputs.r_subs == 0 || inputs.n_obs == 0 {
        return Err(Error::invalid("need R >= 1 and |O| >= 1"));
    }
    let n = inputs.n_windows as f64;
    let mu = inputs.n_windows / 2;
    let delta_prime = inputs.delta - 4.0 * (mu as f64 - 1.0) * inputs.beta_g;

    let l = inputs.lambda_cap;
    let ly = l + inputs.upsilon_y;
    let truncation_term = 4.0 * l * ly / inputs.xi
        * (inputs.nu * (inputs.r_subs * inputs.n_obs) as f64 / (inputs.nu - 1.0)).sqrt()
        * inputs.lambda_star.powi(inputs.w as i32);

    if delta_prime <= 0.0 {
        return Ok(BoundReport {
            rademacher_term: f64::INFINITY,
            mixing_penalty: f64::INFINITY,
            truncation_term,
            total: f64::INFINITY,
            delta_prime,
            vacuous: true,
        });
    }
    let rademacher_term = 4.0 * 2f64.sqrt() * l * ly / n.sqrt();
    let mixing_penalty = 3.0 * ly * ly * (4.0 / delta_prime).ln().sqrt() / n.sqrt();
    Ok(BoundReport {
        rademacher_term,
        mixing_penalty,
        truncation_term,
        total: rademacher_term + mixing_penalty + truncation_term,
        delta_prime,
        vacuous: false,
    })
}

/// Geometric mixing profile beta_0 e^{-beta_1 k} evaluated at gap `g`.
pub fn beta_from_geometric(beta0: f64, beta1: f64, g: f64) -> Result<f64> {
    if !(beta0 >= 0.0) {
        return Err(Error::invalid("beta0 must be >= 0"));
    }
    if !(beta1 > 0.0) {
        return Err(Error::invalid("beta1 must be positive"));
    }
    if !(g >= 0.0) {
        return Err(Error::invalid("gap must be >= 0"));
    }
    Ok(beta0 * (-beta1 * g).exp())
}

/// Mixing coefficient of the strided window process at block distance k:
/// bounded by the input/output coefficient at gap k*s - w.
pub fn window_mixing_upper<F>(beta_io_at: F, k: usize, s: usize, w: usize) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if k * s <= w {
        return Err(Error::invalid(format!(
            "k*s = {} must exceed w = {w} for the window-mixing bound",
            k * s
        )));
    }
    Ok(beta_io_at((k * s - w) as f64))
}
