//! Reservoir readout: exact Pauli expectation features, the classical
//! shadow estimator with random single-qubit bases and median-of-means,
//! the snapshot-budget planner, and the dataset injectivity audit.

use num_complex::Complex64;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::qcore::{expectation, CMatrix, DensityOperator, ObservableSet, PauliLetter};
use crate::rng::Rng;
use crate::{Error, Result};

/// Default constant in the snapshot budget; the variance-bound constant
/// from the shadow estimation literature.
pub const DEFAULT_BUDGET_CONSTANT: f64 = 34.0;

/// The moment-map output for one window: expectation values laid out
/// r-major with the observable order fixed by the `ObservableSet`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub values: Vec<f64>,
}

impl FeatureVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn euclidean_distance(&self, other: &FeatureVector) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

/// One classical shadow: a random measurement basis per qubit and the
/// observed outcome bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    pub bases: Vec<PauliLetter>,
    pub outcomes: Vec<u8>,
}

/// Snapshot budget and median-of-means grouping for one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShadowPlan {
    pub total_snapshots: usize,
    pub groups: usize,
}

impl ShadowPlan {
    pub fn new(total_snapshots: usize, groups: usize) -> Result<Self> {
        if groups == 0 || total_snapshots < groups {
            return Err(Error::invalid(format!(
                "need at least one snapshot per group (M={total_snapshots}, B={groups})"
            )));
        }
        Ok(Self {
            total_snapshots,
            groups,
        })
    }

    /// Snapshots per group; any remainder beyond B * per_group is dropped.
    pub fn per_group(&self) -> usize {
        self.total_snapshots / self.groups
    }

    pub fn used_snapshots(&self) -> usize {
        self.per_group() * self.groups
    }
}

/// Exact moment map: values are traces Tr(O rho), magnitude <= 1 + 1e-10.
pub fn exact_features(states: &[DensityOperator], obs: &ObservableSet) -> Result<FeatureVector> {
    let mut values = Vec::with_capacity(states.len() * obs.len());
    for rho in states {
        if rho.n() != obs.n() {
            return Err(Error::DimensionMismatch {
                expected: 1usize << obs.n(),
                got: rho.dim(),
            });
        }
        for p in obs.strings() {
            let v = expectation(rho, p)?;
            if v.abs() > 1.0 + 1e-10 {
                return Err(Error::invalid(format!(
                    "expectation {v} of {} outside [-1, 1]",
                    p.label()
                )));
            }
            values.push(v);
        }
    }
    Ok(FeatureVector { values })
}

/// In-place rho -> G rho G&dagger; for a single-qubit gate G on `qubit`.
fn conjugate_single_qubit(rho: &mut CMatrix, g: &CMatrix, qubit: usize, n: usize) {
    let dim = 1usize << n;
    let shift = n - 1 - qubit;
    let mask = 1usize << shift;
    let (g00, g01, g10, g11) = (g[(0, 0)], g[(0, 1)], g[(1, 0)], g[(1, 1)]);
    // row mix
    for i0 in 0..dim {
        if i0 & mask != 0 {
            continue;
        }
        let i1 = i0 | mask;
        for c in 0..dim {
            let a = rho[(i0, c)];
            let b = rho[(i1, c)];
            rho[(i0, c)] = g00 * a + g01 * b;
            rho[(i1, c)] = g10 * a + g11 * b;
        }
    }
    // column mix with G adjoint
    for c0 in 0..dim {
        if c0 & mask != 0 {
            continue;
        }
        let c1 = c0 | mask;
        for r in 0..dim {
            let a = rho[(r, c0)];
            let b = rho[(r, c1)];
            rho[(r, c0)] = a * g00.conj() + b * g01.conj();
            rho[(r, c1)] = a * g10.conj() + b * g11.conj();
        }
    }
}

/// Rotation taking the eigenbasis of the chosen Pauli onto the
/// computational basis: X -> H, Y -> H S&dagger;, Z -> identity.
fn basis_rotation(letter: PauliLetter) -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let c = Complex64::new;
    match letter {
        PauliLetter::X => {
            CMatrix::from_row_slice(2, 2, &[c(s, 0.), c(s, 0.), c(s, 0.), c(-s, 0.)])
        }
        PauliLetter::Y => {
            CMatrix::from_row_slice(2, 2, &[c(s, 0.), c(0., -s), c(s, 0.), c(0., s)])
        }
        PauliLetter::Z | PauliLetter::I => CMatrix::identity(2, 2),
    }
}

/// Born probabilities of computational outcomes after rotating `rho`
/// into the product basis `bases`.
fn outcome_distribution(rho: &DensityOperator, bases: &[PauliLetter]) -> Vec<f64> {
    let n = rho.n();
    let mut m = rho.data().clone();
    for (q, &b) in bases.iter().enumerate() {
        if !matches!(b, PauliLetter::Z) {
            conjugate_single_qubit(&mut m, &basis_rotation(b), q, n);
        }
    }
    let mut probs: Vec<f64> = (0..rho.dim()).map(|i| m[(i, i)].re.max(0.0)).collect();
    let total: f64 = probs.iter().sum();
    if total > 0.0 {
        for p in &mut probs {
            *p /= total;
        }
    }
    probs
}

fn sample_index(probs: &[f64], rng: &mut Rng) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (i, p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    probs.len() - 1
}

/// Draws one snapshot: uniform i.i.d. bases over {X, Y, Z} per qubit,
/// then outcome bits from the exact Born distribution of the rotated
/// state (no trajectory unraveling).
pub fn collect_snapshot(rho: &DensityOperator, rng: &mut Rng) -> Result<Snapshot> {
    Ok(collect_snapshots(rho, 1, rng)?.pop().expect("one snapshot"))
}

/// Batched snapshot collection. The RNG stream is bases then outcome per
/// snapshot, in order; outcome distributions are cached per distinct
/// basis combination, which leaves the stream unchanged.
pub fn collect_snapshots(rho: &DensityOperator, m: usize, rng: &mut Rng) -> Result<Vec<Snapshot>> {
    rho.validate()?;
    let n = rho.n();
    let letters = [PauliLetter::X, PauliLetter::Y, PauliLetter::Z];
    let mut cache: std::collections::HashMap<Vec<PauliLetter>, Vec<f64>> =
        std::collections::HashMap::new();
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        let bases: Vec<PauliLetter> = (0..n).map(|_| letters[rng.gen_range(0..3)]).collect();
        let probs = cache
            .entry(bases.clone())
            .or_insert_with(|| outcome_distribution(rho, &bases));
        let idx = sample_index(probs, rng);
        let outcomes: Vec<u8> = (0..n).map(|q| ((idx >> (n - 1 - q)) & 1) as u8).collect();
        out.push(Snapshot { bases, outcomes });
    }
    Ok(out)
}

/// Single-snapshot inverted estimate of one observable: 3^|support| times
/// the outcome-eigenvalue product when every supported qubit was measured
/// in the matching basis, else 0.
pub fn single_shot_estimate(snapshot: &Snapshot, obs: &crate::qcore::PauliString) -> f64 {
    let mut value = 1.0;
    for (q, letter) in obs.letters().iter().enumerate() {
        match letter {
            PauliLetter::I => {}
            l => {
                if snapshot.bases[q] != *l {
                    return 0.0;
                }
                value *= 3.0 * (1.0 - 2.0 * f64::from(snapshot.outcomes[q]));
            }
        }
    }
    value
}

fn median(mut values: Vec<f64>) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite group means"));
    let m = values.len();
    if m % 2 == 1 {
        values[m / 2]
    } else {
        0.5 * (values[m / 2 - 1] + values[m / 2])
    }
}

/// Estimates every observable from one state's snapshots by
/// median-of-means over `plan.groups` consecutive blocks.
pub fn estimate_from_snapshots(
    snapshots: &[Snapshot],
    obs: &ObservableSet,
    plan: &ShadowPlan,
) -> Vec<f64> {
    let per_group = plan.per_group();
    obs.strings()
        .iter()
        .map(|p| {
            let means: Vec<f64> = (0..plan.groups)
                .map(|g| {
                    let block = &snapshots[g * per_group..(g + 1) * per_group];
                    block.iter().map(|s| single_shot_estimate(s, p)).sum::<f64>()
                        / per_group as f64
                })
                .collect();
            median(means)
        })
        .collect()
}

/// Shadow moment map over R states: per state, `plan` snapshots are
/// drawn and every observable is estimated by median-of-means; the
/// feature layout matches `exact_features`.
pub fn estimate_features(
    states: &[DensityOperator],
    obs: &ObservableSet,
    plan: &ShadowPlan,
    rng: &mut Rng,
) -> Result<FeatureVector> {
    let mut values = Vec::with_capacity(states.len() * obs.len());
    for rho in states {
        if rho.n() != obs.n() {
            return Err(Error::DimensionMismatch {
                expected: 1usize << obs.n(),
                got: rho.dim(),
            });
        }
        let snapshots = collect_snapshots(rho, plan.used_snapshots(), rng)?;
        values.extend(estimate_from_snapshots(&snapshots, obs, plan));
    }
    Ok(FeatureVector { values })
}

/// Snapshot budget ceil(C (3/2)^k eps^-2 ln |O|) for target accuracy
/// eps_cs over n_obs observables of locality k.
pub fn snapshot_budget(k: usize, eps_cs: f64, n_obs: usize, constant: f64) -> Result<usize> {
    if k == 0 {
        return Err(Error::invalid("locality k must be at least 1"));
    }
    if !(0.0 < eps_cs && eps_cs < 1.0) {
        return Err(Error::invalid("eps_cs must lie in (0, 1)"));
    }
    if n_obs == 0 {
        return Err(Error::invalid("need at least one observable"));
    }
    if !(constant > 0.0) {
        return Err(Error::invalid("budget constant must be positive"));
    }
    let value = constant * 1.5f64.powi(k as i32) * eps_cs.powi(-2) * (n_obs as f64).ln();
    Ok(value.ceil() as usize)
}

/// Result of the pairwise feature-collision audit.
#[derive(Debug, Clone)]
pub struct InjectivityReport {
    pub min_pairwise_distance: f64,
    pub collisions: Vec<(usize, usize)>,
}

/// Exhaustive pairwise Euclidean distances; a collision is any pair
/// closer than `tol` (1e-8 is appropriate for exact features).
pub fn injectivity_audit(features: &[FeatureVector], tol: f64) -> Result<InjectivityReport> {
    if features.len() < 2 {
        return Err(Error::invalid("need at least 2 feature vectors"));
    }
    let mut min_dist = f64::INFINITY;
    let mut collisions = Vec::new();
    for i in 0..features.len() {
        for j in i + 1..features.len() {
            let d = features[i].euclidean_distance(&features[j]);
            min_dist = min_dist.min(d);
            if d < tol {
                collisions.push((i, j));
            }
        }
    }
    Ok(InjectivityReport {
        min_pairwise_distance: min_dist,
        collisions,
    })
}
