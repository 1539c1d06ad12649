//! Spectrum-sweep throughput: rayon fan-out against the sequential map.
//! Build with `--no-default-features` to bench the fallback path of
//! `par_map` itself.

use criterion::{criterion_group, criterion_main, Criterion};

use ncqm::exact::Rat;
use ncqm::hydrogen::{delta_e_general, uncertainty_bound, PhysicalParams, QuantumNumbers};
use ncqm::par::{par_map, seq_map};
use num::One;

fn states(nmax: u32) -> Vec<QuantumNumbers> {
    let mut qs = Vec::new();
    for n in 1..=nmax {
        for l in 0..n {
            for m in -(l as i32)..=l as i32 {
                qs.push(QuantumNumbers::new(n, l, m).unwrap());
            }
        }
    }
    qs
}

fn row(q: QuantumNumbers, p: &PhysicalParams) -> (Rat, Rat) {
    (
        delta_e_general(q, p).unwrap(),
        uncertainty_bound(q, p).unwrap(),
    )
}

fn bench_sweep(c: &mut Criterion) {
    let p = PhysicalParams::new(Rat::one(), 1e-3, 1).unwrap();
    let items = states(5);
    let mut g = c.benchmark_group("spectrum-sweep-n5");
    g.sample_size(10);
    g.bench_function("parallel", |b| {
        b.iter(|| par_map(items.clone(), |q| row(q, &p)))
    });
    g.bench_function("sequential", |b| {
        b.iter(|| seq_map(items.clone(), |q| row(q, &p)))
    });
    g.finish();
}

criterion_group!(benches, bench_sweep);
criterion_main!(benches);
