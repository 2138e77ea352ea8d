//! Shadow-backend fidelity at the headline featurizer scale (n = 5,
//! R = 3, 2-local observables, 1000 snapshots per circuit).

use qrc::measure::ShadowPlan;
use qrc::pipeline::{embed_dataset, MeasurementBackend};
use qrc::projection::JlProjector;
use qrc::qcore::ObservableSet;
use qrc::reservoir::{Reservoir, ReservoirConfig, Topology, DEFAULT_LAMBDA_RANGE};
use qrc::rng::rng_from_seed;
use rand::Rng as _;

#[test]
fn thousand_snapshot_features_track_exact_features() {
    let config =
        ReservoirConfig::sample(5, 3, Topology::ring(5), DEFAULT_LAMBDA_RANGE, 91).unwrap();
    let reservoir = Reservoir::new(config).unwrap();
    let projector = JlProjector::new(5, 3, 92).unwrap();
    let obs = ObservableSet::k_local(5, 2).unwrap();
    let mut rng = rng_from_seed(93);
    let windows: Vec<Vec<Vec<f64>>> = (0..20)
        .map(|_| {
            (0..25)
                .map(|_| (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect()
        })
        .collect();

    let exact = embed_dataset(
        &windows,
        &reservoir,
        &projector,
        &obs,
        &MeasurementBackend::Exact,
    )
    .unwrap();
    let shadows = embed_dataset(
        &windows,
        &reservoir,
        &projector,
        &obs,
        &MeasurementBackend::Shadows {
            plan: ShadowPlan::new(1000, 10).unwrap(),
            seed: 94,
        },
    )
    .unwrap();

    // weight-2 strings have single-shot std up to 3, so a group of 100
    // snapshots has std 0.3 and the median of 10 groups about 0.12; the
    // max over 6300 coordinates then concentrates near 4.5 sigma
    let mut worst: f64 = 0.0;
    let mut total = 0.0;
    let mut count = 0usize;
    for (e, s) in exact.iter().zip(&shadows) {
        for (a, b) in e.values.iter().zip(&s.values) {
            let dev = (a - b).abs();
            worst = worst.max(dev);
            total += dev;
            count += 1;
        }
    }
    let mean = total / count as f64;
    assert!(
        worst <= 0.65,
        "max shadow deviation {worst:.3} implausibly large for 1000 snapshots"
    );
    assert!(
        mean <= 0.12,
        "mean shadow deviation {mean:.3} implausibly large for 1000 snapshots"
    );
    println!("shadow deviation at M=1000: mean {mean:.4}, max {worst:.4} over {count} coordinates");
}
