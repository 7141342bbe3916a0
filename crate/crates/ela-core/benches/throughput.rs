//! Compares sequential and rayon-parallel execution of the dataset
//! pipeline (Sobol' sampling → evaluation → feature extraction), which is
//! the dominant cost of every experiment.

use criterion::{criterion_group, criterion_main, Criterion};
use ela_core::exec::Execution;
use ela_core::features::FeatureOptions;
use ela_core::pipeline::{generate_dataset, DatasetSpec};

fn dataset_generation(c: &mut Criterion) {
    let spec = DatasetSpec {
        dimension: 3,
        sample_size: 150,
        functions: vec![1, 6, 12, 15, 21, 24],
        instances: vec![1],
        repetitions: 2,
        master_seed: 42,
    };
    let opts = FeatureOptions::default();

    let mut group = c.benchmark_group("dataset-generation");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| generate_dataset(&spec, &opts, Execution::Sequential).unwrap())
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter(|| generate_dataset(&spec, &opts, Execution::Parallel).unwrap())
    });
    group.finish();
}

criterion_group!(benches, dataset_generation);
criterion_main!(benches);
