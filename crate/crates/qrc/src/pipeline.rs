//! Dataset-level featurization: every window is embedded under the full
//! multiplexed reservoir and measured into a feature vector. Windows are
//! independent, so the default build fans them out with rayon; the
//! serial path is kept callable for benchmarking and for builds without
//! the `parallel` feature.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::measure::{estimate_features, exact_features, FeatureVector, ShadowPlan};
use crate::projection::JlProjector;
use crate::qcore::ObservableSet;
use crate::reservoir::Reservoir;
use crate::rng::{derive_seed, rng_from_seed};
use crate::Result;

/// How reservoir states become feature vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MeasurementBackend {
    /// Exact traces; the noiseless moment map.
    Exact,
    /// Classical shadows with median-of-means. Each window gets its own
    /// RNG stream derived from `seed` and the window index, so results
    /// do not depend on scheduling.
    Shadows { plan: ShadowPlan, seed: u64 },
}

fn embed_one(
    index: usize,
    window: &[Vec<f64>],
    reservoir: &Reservoir,
    projector: &JlProjector,
    obs: &ObservableSet,
    backend: &MeasurementBackend,
) -> Result<FeatureVector> {
    let states = reservoir.embed_multiplexed(window, projector)?;
    match backend {
        MeasurementBackend::Exact => exact_features(&states, obs),
        MeasurementBackend::Shadows { plan, seed } => {
            let mut rng = rng_from_seed(derive_seed(*seed, "shadow-window", index as u64));
            estimate_features(&states, obs, plan, &mut rng)
        }
    }
}

/// Featurizes every window, in parallel when the `parallel` feature is
/// enabled. Output order always matches input order.
#[cfg(feature = "parallel")]
pub fn embed_dataset(
    windows: &[Vec<Vec<f64>>],
    reservoir: &Reservoir,
    projector: &JlProjector,
    obs: &ObservableSet,
    backend: &MeasurementBackend,
) -> Result<Vec<FeatureVector>> {
    windows
        .par_iter()
        .enumerate()
        .map(|(i, w)| embed_one(i, w, reservoir, projector, obs, backend))
        .collect()
}

#[cfg(not(feature = "parallel"))]
pub fn embed_dataset(
    windows: &[Vec<Vec<f64>>],
    reservoir: &Reservoir,
    projector: &JlProjector,
    obs: &ObservableSet,
    backend: &MeasurementBackend,
) -> Result<Vec<FeatureVector>> {
    embed_dataset_serial(windows, reservoir, projector, obs, backend)
}

/// Single-threaded featurization; the benchmark baseline.
pub fn embed_dataset_serial(
    windows: &[Vec<Vec<f64>>],
    reservoir: &Reservoir,
    projector: &JlProjector,
    obs: &ObservableSet,
    backend: &MeasurementBackend,
) -> Result<Vec<FeatureVector>> {
    windows
        .iter()
        .enumerate()
        .map(|(i, w)| embed_one(i, w, reservoir, projector, obs, backend))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reservoir::{ReservoirConfig, Topology, DEFAULT_LAMBDA_RANGE};
    use crate::rng::rng_from_seed;
    use rand::Rng as _;

    fn setup(
        n_windows: usize,
    ) -> (Vec<Vec<Vec<f64>>>, Reservoir, JlProjector, ObservableSet) {
        let config =
            ReservoirConfig::sample(3, 2, Topology::ring(3), DEFAULT_LAMBDA_RANGE, 31).unwrap();
        let reservoir = Reservoir::new(config).unwrap();
        let projector = JlProjector::new(3, 3, 32).unwrap();
        let obs = ObservableSet::k_local(3, 2).unwrap();
        let mut rng = rng_from_seed(33);
        let windows: Vec<Vec<Vec<f64>>> = (0..n_windows)
            .map(|_| {
                (0..6)
                    .map(|_| (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect())
                    .collect()
            })
            .collect();
        (windows, reservoir, projector, obs)
    }

    #[test]
    fn parallel_and_serial_agree_bit_exactly() {
        let (windows, reservoir, projector, obs) = setup(8);
        let backend = MeasurementBackend::Exact;
        let par = embed_dataset(&windows, &reservoir, &projector, &obs, &backend).unwrap();
        let ser = embed_dataset_serial(&windows, &reservoir, &projector, &obs, &backend).unwrap();
        assert_eq!(par, ser);
    }

    #[test]
    fn shadow_backend_is_schedule_independent() {
        let (windows, reservoir, projector, obs) = setup(5);
        let backend = MeasurementBackend::Shadows {
            plan: ShadowPlan::new(200, 10).unwrap(),
            seed: 77,
        };
        let a = embed_dataset(&windows, &reservoir, &projector, &obs, &backend).unwrap();
        let b = embed_dataset_serial(&windows, &reservoir, &projector, &obs, &backend).unwrap();
        assert_eq!(a, b);
        // per-window streams: permuting windows permutes nothing else
        let c = embed_dataset(&windows, &reservoir, &projector, &obs, &backend).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn feature_length_is_r_times_observables() {
        let (windows, reservoir, projector, obs) = setup(2);
        let feats =
            embed_dataset(&windows, &reservoir, &projector, &obs, &MeasurementBackend::Exact)
                .unwrap();
        assert_eq!(feats[0].len(), 2 * obs.len());
    }
}
