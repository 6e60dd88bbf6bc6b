use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use padic_hl::dynamics::{hl_cauchy_multi, hl_cauchy_step, simulate_s, AlphaList};
use padic_hl::limitlaw::{pmf_contour, pmf_k1, pmf_k2, pmf_series, ContourSpec, LimitLawParams};
use padic_hl::padicmat::{sample_additive_haar, snf};
use padic_hl::qcore::rat;
use padic_hl::{Extent, Signature};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn limit_law(c: &mut Criterion) {
    let k1 = LimitLawParams::new(1, rat(1, 2), 1.0).unwrap();
    let k2 = LimitLawParams::new(2, rat(1, 2), 1.0).unwrap();
    let k3 = LimitLawParams::new(3, rat(1, 2), 1.0).unwrap();
    let s1 = Signature::new(vec![0]).unwrap();
    let s2 = Signature::new(vec![2, 0]).unwrap();
    let s3 = Signature::new(vec![2, 0, 0]).unwrap();
    c.bench_function("pmf_k1_closed", |b| b.iter(|| pmf_k1(0.5, 1.0, black_box(0))));
    c.bench_function("pmf_k2_closed", |b| b.iter(|| pmf_k2(0.5, 1.0, black_box(0), 2)));
    c.bench_function("pmf_series_k1", |b| b.iter(|| pmf_series(&k1, black_box(&s1)).unwrap()));
    c.bench_function("pmf_series_k2", |b| b.iter(|| pmf_series(&k2, black_box(&s2)).unwrap()));
    c.bench_function("pmf_series_k3", |b| b.iter(|| pmf_series(&k3, black_box(&s3)).unwrap()));
    let spec = ContourSpec::default();
    c.bench_function("pmf_contour_k1", |b| b.iter(|| pmf_contour(&k1, black_box(&s1), &spec).unwrap()));
}

fn matrices(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [3usize, 20] {
        let a = sample_additive_haar(n, 2, 32, &mut rng).unwrap();
        c.bench_function(&format!("snf_{n}x{n}_p2_K32"), |b| b.iter(|| snf(black_box(&a))));
    }
    c.bench_function("sample_haar_20x20", |b| b.iter(|| sample_additive_haar(20, 2, 32, &mut rng).unwrap()));
}

fn dynamics(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let lam = Signature::new(vec![2, 1, 0]).unwrap();
    let zero20 = Signature::new(vec![0; 20]).unwrap();
    let zero30 = Signature::new(vec![0; 30]).unwrap();
    c.bench_function("hl_cauchy_step_n3", |b| b.iter(|| hl_cauchy_step(&lam, 0.25, Extent::Finite(3), 0.5, &mut rng).unwrap()));
    c.bench_function("hl_cauchy_powers_of_t_n20", |b| {
        b.iter(|| hl_cauchy_multi(&zero20, &AlphaList::PowersOfT, Extent::Finite(20), 0.5, &mut rng).unwrap())
    });
    let t = rat(1, 2);
    c.bench_function("walk_n30_tau1024", |b| b.iter(|| simulate_s(Extent::Finite(30), &zero30, 1024.0, &t, &mut rng).unwrap()));
}

criterion_group!(benches, limit_law, matrices, dynamics);
criterion_main!(benches);
