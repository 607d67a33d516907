use criterion::{black_box, criterion_group, criterion_main, Criterion};
use qbf_core::bf_weights::{validate_central_weight, CentralWeightSpec};
use qbf_core::sl2_oracle::verify_norm_formula;
use qbf_core::{
    character_product_decompose, tensor_decompose, weight_multiplicities, Precision, RootSystem,
    Weight,
};

fn rs(name: &str) -> RootSystem {
    RootSystem::new(&name.parse().unwrap()).unwrap()
}

fn freudenthal(c: &mut Criterion) {
    let mut g = c.benchmark_group("freudenthal");
    for (name, mu) in [
        ("A3", vec![2, 1, 2]),
        ("G2", vec![2, 2]),
        ("F4", vec![1, 0, 0, 1]),
    ] {
        let r = rs(name);
        let mu = Weight::new(mu);
        g.bench_function(format!("{name} {mu}"), |b| {
            b.iter(|| weight_multiplicities(&r, black_box(&mu)).unwrap())
        });
    }
    g.finish();
}

fn fusion(c: &mut Criterion) {
    let mut g = c.benchmark_group("fusion");
    let r = rs("G2");
    let (l, m) = (Weight::from([2, 1]), Weight::from([1, 2]));
    g.bench_function("klimyk G2 (2,1)x(1,2)", |b| {
        b.iter(|| tensor_decompose(&r, black_box(&l), black_box(&m)).unwrap())
    });
    g.bench_function("character product G2 (2,1)x(1,2)", |b| {
        b.iter(|| character_product_decompose(&r, black_box(&l), black_box(&m)).unwrap())
    });
    g.finish();
}

fn central_weight(c: &mut Criterion) {
    let r = rs("B2");
    let spec = CentralWeightSpec::beta_norm(2.0).unwrap();
    c.bench_function("validate beta_norm B2 height 3", |b| {
        b.iter(|| validate_central_weight(&r, &spec, 3, Precision::default()).unwrap())
    });
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("sl2 oracle");
    g.sample_size(10);
    for (q, m, n) in [(0.5, 2, 3), (0.3, 6, 6)] {
        g.bench_function(format!("q={q} m={m} n={n}"), |b| {
            b.iter(|| verify_norm_formula(q, m, n, 1e-8, Precision::default()).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, freudenthal, fusion, central_weight, oracle);
criterion_main!(benches);
