use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use primfree::bialg::counital_filtration;
use primfree::lie::{all_primitives, certify_prim_free};
use primfree::models::{fqsym_model, nsym_model, tensor_model};
use primfree::par;

fn pipeline(c: &mut Criterion) {
    let fqsym = fqsym_model(4).unwrap();
    let tensor = tensor_model(2, 6).unwrap();
    let nsym = nsym_model(6).unwrap();

    let mut g = c.benchmark_group("certify_fqsym_4");
    g.sample_size(10);
    g.bench_function(BenchmarkId::new("parallel", 4), |b| b.iter(|| certify_prim_free(&fqsym).unwrap()));
    g.bench_function(BenchmarkId::new("sequential", 4), |b| {
        b.iter(|| par::sequential(|| certify_prim_free(&fqsym).unwrap()))
    });
    g.finish();

    let mut g = c.benchmark_group("primitives_tensor2_6");
    g.sample_size(20);
    g.bench_function("parallel", |b| b.iter(|| all_primitives(&tensor).unwrap()));
    g.bench_function("sequential", |b| b.iter(|| par::sequential(|| all_primitives(&tensor).unwrap())));
    g.finish();

    let mut g = c.benchmark_group("filtration_nsym_6");
    g.sample_size(20);
    g.bench_function("parallel", |b| b.iter(|| counital_filtration(&nsym).unwrap()));
    g.bench_function("sequential", |b| {
        b.iter(|| par::sequential(|| counital_filtration(&nsym).unwrap()))
    });
    g.finish();
}

criterion_group!(benches, pipeline);
criterion_main!(benches);
