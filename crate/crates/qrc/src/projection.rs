//! Gaussian random projection of raw d-dimensional inputs to the n
//! reservoir coordinates, plus the qubit-count sizing rule and an
//! empirical distortion checker.

use nalgebra::{DMatrix, DVector};
use rand::Rng as _;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::rng::rng_from_seed;
use crate::{Error, Result};

/// Default constant in the qubit sizing rule; standard proofs of the
/// quadratic-distortion bound give constants in [4, 8].
pub const DEFAULT_SIZING_CONSTANT: f64 = 4.0;

/// A seeded n x d projection with i.i.d. N(0, 1/n) entries.
///
/// Only (seed, n, d) are persisted; the matrix regenerates bit-exactly.
#[derive(Debug, Clone)]
pub struct JlProjector {
    matrix: DMatrix<f64>,
    seed: u64,
    n: usize,
    d: usize,
}

/// Persisted form of a projector: dimensions and seed only.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
pub struct ProjectorSpec {
    pub n: usize,
    pub d: usize,
    pub seed: u64,
}

impl JlProjector {
    /// Entries are drawn row-major from the projector RNG stream.
    pub fn new(n: usize, d: usize, seed: u64) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::invalid("projector dimensions must be positive"));
        }
        let mut rng = rng_from_seed(seed);
        let std = (1.0 / n as f64).sqrt();
        let mut matrix = DMatrix::zeros(n, d);
        for r in 0..n {
            for c in 0..d {
                let g: f64 = rng.sample(StandardNormal);
                matrix[(r, c)] = g * std;
            }
        }
        Ok(Self { matrix, seed, n, d })
    }

    pub fn from_spec(spec: ProjectorSpec) -> Result<Self> {
        Self::new(spec.n, spec.d, spec.seed)
    }

    /// Builds a projector around an explicit matrix (test injection).
    pub fn from_matrix(matrix: DMatrix<f64>) -> Self {
        let (n, d) = (matrix.nrows(), matrix.ncols());
        Self {
            matrix,
            seed: 0,
            n,
            d,
        }
    }

    pub fn spec(&self) -> ProjectorSpec {
        ProjectorSpec {
            n: self.n,
            d: self.d,
            seed: self.seed,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// z = Pi x.
    pub fn project(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: x.len(),
            });
        }
        let v = DVector::from_column_slice(x);
        let z = &self.matrix * v;
        Ok(z.iter().cloned().collect())
    }
}

/// Qubit count needed for distortion eps_pr at failure rate delta_pr over
/// w*N points: ceil(C * eps^-2 * ln(w N / delta)).
pub fn required_qubits(
    eps_pr: f64,
    delta_pr: f64,
    w: usize,
    n_windows: usize,
    constant: f64,
) -> Result<usize> {
    if !(0.0..1.0).contains(&eps_pr) || eps_pr == 0.0 {
        return Err(Error::invalid("eps_pr must lie in (0, 1)"));
    }
    if !(0.0..1.0).contains(&delta_pr) || delta_pr == 0.0 {
        return Err(Error::invalid("delta_pr must lie in (0, 1)"));
    }
    if w == 0 || n_windows == 0 {
        return Err(Error::invalid("w and N must be positive"));
    }
    if !(constant > 0.0) {
        return Err(Error::invalid("sizing constant must be positive"));
    }
    let points = (w as f64) * (n_windows as f64);
    let value = constant * eps_pr.powi(-2) * (points / delta_pr).ln();
    Ok(value.ceil() as usize)
}

/// Result of the exhaustive pairwise distortion check.
#[derive(Debug, Clone, Copy)]
pub struct DistortionReport {
    /// Largest ratio ||Pi u - Pi v||^2 / ||u - v||^2 observed.
    pub max_over: f64,
    /// Smallest such ratio.
    pub max_under: f64,
    pub pass: bool,
}

/// Checks (1 - eps)||u-v||^2 <= ||Pi u - Pi v||^2 <= (1 + eps)||u-v||^2
/// over all pairs; identical points are skipped.
pub fn check_distortion(
    projector: &JlProjector,
    points: &[Vec<f64>],
    eps: f64,
) -> Result<DistortionReport> {
    if points.len() < 2 {
        return Err(Error::invalid("need at least 2 points"));
    }
    let projected: Vec<Vec<f64>> = points
        .iter()
        .map(|p| projector.project(p))
        .collect::<Result<_>>()?;
    let mut max_over = 1.0f64;
    let mut max_under = 1.0f64;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let orig: f64 = points[i]
                .iter()
                .zip(&points[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            if orig == 0.0 {
                continue;
            }
            let proj: f64 = projected[i]
                .iter()
                .zip(&projected[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            let ratio = proj / orig;
            max_over = max_over.max(ratio);
            max_under = max_under.min(ratio);
        }
    }
    let pass = max_over <= 1.0 + eps && max_under >= 1.0 - eps;
    Ok(DistortionReport {
        max_over,
        max_under,
        pass,
    })
}
