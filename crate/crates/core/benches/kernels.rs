use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hecke_core::center::gamma_basis;
use hecke_core::named::{elem_sym_normalized, xbar, ybar};
use hecke_core::verify::random_element;
use hecke_core::{AlgebraContext, Exec, Permutation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn product(c: &mut Criterion) {
    let mut g = c.benchmark_group("product");
    g.sample_size(10);
    for n in [4, 5] {
        let ctx = AlgebraContext::new(n).unwrap();
        let (a, b) = (xbar(&ctx).unwrap(), ybar(&ctx).unwrap());
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, n), &n, |bench, _| {
                bench.iter(|| black_box(a.mul_with(&b, exec).unwrap()))
            });
        }
    }
    g.finish();
}

fn symmetric_functions(c: &mut Criterion) {
    let mut g = c.benchmark_group("elementary_symmetric");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, 6), |bench| {
            bench.iter(|| {
                // fresh context so the memo does not short-circuit
                let ctx = AlgebraContext::new(6).unwrap().with_exec(exec);
                black_box(elem_sym_normalized(&ctx, 3).unwrap())
            })
        });
    }
    g.finish();
}

fn class_basis(c: &mut Criterion) {
    let mut g = c.benchmark_group("gamma_basis");
    g.sample_size(10);
    for n in [4, 5] {
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, n), &n, |bench, &n| {
                bench.iter(|| {
                    let ctx = AlgebraContext::new(n).unwrap().with_exec(exec);
                    black_box(gamma_basis(&ctx).unwrap())
                })
            });
        }
    }
    g.finish();
}

fn batch(c: &mut Criterion) {
    let perms = Permutation::all(5);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let pairs: Vec<_> =
        (0..256).map(|_| (random_element(&mut rng, &perms, 8), random_element(&mut rng, &perms, 8))).collect();
    let mut g = c.benchmark_group("batch_products");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, pairs.len()), |bench| {
            bench.iter(|| black_box(exec.map(&pairs, |(a, b)| a * b)))
        });
    }
    g.finish();
}

criterion_group!(benches, product, symmetric_functions, class_basis, batch);
criterion_main!(benches);
