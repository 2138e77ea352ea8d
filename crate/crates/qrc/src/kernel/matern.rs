//! Unit-variance Matern profile and the kernel it induces on feature
//! vectors, plus Gram matrix assembly.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::bessel::bessel_k;
use crate::measure::FeatureVector;
use crate::{Error, Result};

/// Matern smoothness and lengthscale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaternParams {
    pub nu: f64,
    pub xi: f64,
}

impl MaternParams {
    pub fn new(nu: f64, xi: f64) -> Result<Self> {
        if !(nu > 0.0) || !nu.is_finite() {
            return Err(Error::invalid(format!("nu must be finite and positive, got {nu}")));
        }
        if !(xi > 0.0) || !xi.is_finite() {
            return Err(Error::invalid(format!("xi must be finite and positive, got {xi}")));
        }
        Ok(Self { nu, xi })
    }
}

/// phi(s) = 2^{1-nu}/Gamma(nu) (sqrt(2 nu) s / xi)^nu K_nu(sqrt(2 nu) s / xi),
/// with phi(0) = 1 taken as the limit value.
pub fn matern_profile(params: &MaternParams, s: f64) -> Result<f64> {
    if s < 0.0 || !s.is_finite() {
        return Err(Error::invalid(format!("distance must be finite and >= 0, got {s}")));
    }
    if s == 0.0 {
        return Ok(1.0);
    }
    let nu = params.nu;
    let z = (2.0 * nu).sqrt() * s / params.xi;
    let value = 2f64.powf(1.0 - nu) / gamma(nu) * z.powf(nu) * bessel_k(nu, z)?;
    // the profile is mathematically in (0, 1]; round-off can poke above 1
    Ok(value.min(1.0))
}

/// kappa(a, b) = phi(||a - b||).
pub fn kernel_eval(params: &MaternParams, a: &FeatureVector, b: &FeatureVector) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    matern_profile(params, a.euclidean_distance(b))
}

fn check_consistent(features: &[FeatureVector]) -> Result<usize> {
    let Some(first) = features.first() else {
        return Err(Error::invalid("need at least one feature vector"));
    };
    for f in features {
        if f.len() != first.len() {
            return Err(Error::DimensionMismatch {
                expected: first.len(),
                got: f.len(),
            });
        }
    }
    Ok(first.len())
}

/// Pairwise Euclidean distances, symmetric with a zero diagonal.
pub fn distance_matrix(features: &[FeatureVector]) -> Result<DMatrix<f64>> {
    check_consistent(features)?;
    let n = features.len();
    let mut d = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let dist = features[i].euclidean_distance(&features[j]);
            d[(i, j)] = dist;
            d[(j, i)] = dist;
        }
    }
    Ok(d)
}

/// Rectangular distances between two feature sets.
pub fn cross_distance_matrix(
    rows: &[FeatureVector],
    cols: &[FeatureVector],
) -> Result<DMatrix<f64>> {
    let lr = check_consistent(rows)?;
    let lc = check_consistent(cols)?;
    if lr != lc {
        return Err(Error::DimensionMismatch {
            expected: lr,
            got: lc,
        });
    }
    let mut d = DMatrix::zeros(rows.len(), cols.len());
    for i in 0..rows.len() {
        for j in 0..cols.len() {
            d[(i, j)] = rows[i].euclidean_distance(&cols[j]);
        }
    }
    Ok(d)
}

/// Applies the profile elementwise to a distance matrix.
pub fn gram_from_distances(params: &MaternParams, dist: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let mut k = DMatrix::zeros(dist.nrows(), dist.ncols());
    for j in 0..dist.ncols() {
        for i in 0..dist.nrows() {
            k[(i, j)] = matern_profile(params, dist[(i, j)])?;
        }
    }
    Ok(k)
}

/// Gram matrix K_ij = kappa(f_i, f_j): symmetric, unit diagonal. Rows
/// evaluate their strict upper triangle in parallel; the lower half is
/// mirrored afterwards.
#[cfg(feature = "parallel")]
pub fn gram(params: &MaternParams, features: &[FeatureVector]) -> Result<DMatrix<f64>> {
    check_consistent(features)?;
    let n = features.len();
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (i + 1..n)
                .map(|j| kernel_eval(params, &features[i], &features[j]))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut k = DMatrix::identity(n, n);
    for (i, row) in rows.iter().enumerate() {
        for (offset, v) in row.iter().enumerate() {
            let j = i + 1 + offset;
            k[(i, j)] = *v;
            k[(j, i)] = *v;
        }
    }
    Ok(k)
}

#[cfg(not(feature = "parallel"))]
pub fn gram(params: &MaternParams, features: &[FeatureVector]) -> Result<DMatrix<f64>> {
    gram_serial(params, features)
}

/// Sequential Gram assembly; the benchmark baseline.
pub fn gram_serial(params: &MaternParams, features: &[FeatureVector]) -> Result<DMatrix<f64>> {
    check_consistent(features)?;
    let n = features.len();
    let mut k = DMatrix::identity(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = kernel_eval(params, &features[i], &features[j])?;
            k[(i, j)] = v;
            k[(j, i)] = v;
        }
    }
    Ok(k)
}
