use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use bethe_lab::aba::laurent_in_site;
use bethe_lab::asm::dwbc_partition_brute;
use bethe_lab::exec::Exec;
use bethe_lab::field::Scalar;
use bethe_lab::params::{Sampler, Twist};
use bethe_lab::verify::{run_suite, Suite, VerifyConfig};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn lattice_sum(c: &mut Criterion) {
    let mut group = c.benchmark_group("dwbc_partition_brute");
    group.sample_size(10);
    for n in [4usize, 5] {
        let mut s = Sampler::new(n as u64);
        let def = s.deformation();
        let w = s.generic(&def, n, &[]);
        let zeta: Vec<Scalar> = s.generic(&def, n, &w).into_iter().map(Scalar::rational).collect();
        let w: Vec<Scalar> = w.into_iter().map(Scalar::rational).collect();
        for (label, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(label, n), &n, |b, _| {
                b.iter(|| dwbc_partition_brute(&zeta, &w, &def, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn laurent_fit(c: &mut Criterion) {
    let mut group = c.benchmark_group("laurent_in_site");
    group.sample_size(10);
    for n in [3usize, 4] {
        let p = Sampler::new(40 + n as u64).model(n, Twist::Pi);
        for (label, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(label, n), &n, |b, _| {
                b.iter(|| laurent_in_site(&p, 1, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_all");
    group.sample_size(10);
    let cfg = VerifyConfig::new(3, None, None, 7).unwrap();
    for (label, exec) in MODES {
        group.bench_function(label, |b| b.iter(|| run_suite(Suite::All, &cfg, exec)));
    }
    group.finish();
}

criterion_group!(benches, lattice_sum, laurent_fit, suite);
criterion_main!(benches);
