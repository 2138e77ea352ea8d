//! Parallel vs sequential throughput for the two hot paths: window
//! featurization and Gram assembly. Run with
//! `cargo bench -p qrc` (the parallel side needs the default features).

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qrc::kernel::{gram, gram_serial, MaternParams};
use qrc::measure::FeatureVector;
use qrc::pipeline::{embed_dataset, embed_dataset_serial, MeasurementBackend};
use qrc::projection::JlProjector;
use qrc::qcore::ObservableSet;
use qrc::reservoir::{Reservoir, ReservoirConfig, Topology, DEFAULT_LAMBDA_RANGE};
use qrc::rng::rng_from_seed;
use rand::Rng as _;

fn bench_embedding(c: &mut Criterion) {
    let config =
        ReservoirConfig::sample(4, 2, Topology::ring(4), DEFAULT_LAMBDA_RANGE, 2024).unwrap();
    let reservoir = Reservoir::new(config).unwrap();
    let projector = JlProjector::new(4, 3, 11).unwrap();
    let obs = ObservableSet::k_local(4, 2).unwrap();
    let mut rng = rng_from_seed(12);
    let windows: Vec<Vec<Vec<f64>>> = (0..48)
        .map(|_| {
            (0..10)
                .map(|_| (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect()
        })
        .collect();
    let backend = MeasurementBackend::Exact;

    let mut group = c.benchmark_group("embed_dataset");
    group.sample_size(10);
    group.bench_function(BenchmarkId::new("parallel", windows.len()), |b| {
        b.iter(|| embed_dataset(&windows, &reservoir, &projector, &obs, &backend).unwrap())
    });
    group.bench_function(BenchmarkId::new("serial", windows.len()), |b| {
        b.iter(|| embed_dataset_serial(&windows, &reservoir, &projector, &obs, &backend).unwrap())
    });
    group.finish();
}

fn bench_gram(c: &mut Criterion) {
    let mut rng = rng_from_seed(13);
    let features: Vec<FeatureVector> = (0..192)
        .map(|_| FeatureVector {
            values: (0..315).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        })
        .collect();
    let params = MaternParams::new(1.5, 1.0).unwrap();

    let mut group = c.benchmark_group("gram");
    group.sample_size(10);
    group.bench_function(BenchmarkId::new("parallel", features.len()), |b| {
        b.iter(|| gram(&params, &features).unwrap())
    });
    group.bench_function(BenchmarkId::new("serial", features.len()), |b| {
        b.iter(|| gram_serial(&params, &features).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_embedding, bench_gram);
criterion_main!(benches);
