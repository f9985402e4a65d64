use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use tourmap_core::distance::{DistanceMatrix, Metric};
use tourmap_core::embedding::{mds, MDS_TOL};
use tourmap_core::generators::{child_seed, gen_uniform};

/// Planar-ish synthetic matrix: Euclidean distances of seeded points plus
/// deterministic jitter so the optimum is not exactly reachable.
fn synthetic_matrix(m: usize) -> DistanceMatrix {
    let ids = (0..m).map(|i| format!("p{i:03}")).collect();
    let pts: Vec<[f64; 2]> = (0..m)
        .map(|i| {
            let i = i as f64;
            [(i * 37.3) % 11.0, (i * 59.9) % 7.0]
        })
        .collect();
    let mut values = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..m {
            if i != j {
                let d = ((pts[i][0] - pts[j][0]).powi(2) + (pts[i][1] - pts[j][1]).powi(2)).sqrt();
                values[i * m + j] = d + 0.05 * (((i * m + j) % 7) as f64 / 7.0);
            }
        }
    }
    for i in 0..m {
        for j in 0..i {
            let v = values[j * m + i];
            values[i * m + j] = v;
        }
    }
    DistanceMatrix::from_values(ids, Metric::Ged, 0, 1.0, true, values).unwrap()
}

fn stress_majorization(c: &mut Criterion) {
    let mut g = c.benchmark_group("mds");
    g.sample_size(10);
    for m in [100usize, 200] {
        let dm = synthetic_matrix(m);
        g.bench_with_input(BenchmarkId::from_parameter(m), &dm, |b, dm| {
            b.iter(|| mds(black_box(dm), 1, 300, MDS_TOL).unwrap().stress)
        });
    }
    g.finish();
}

fn uniform_generation(c: &mut Criterion) {
    c.bench_function("gen_uniform_12_x100", |b| {
        b.iter(|| {
            (0..100u64)
                .map(|i| {
                    gen_uniform(12, child_box(i)).unwrap().outdegree(0)
                })
                .sum::<usize>()
        })
    });
}

fn child_box(i: u64) -> u64 {
    child_seed(black_box(42), "bench_uniform", i)
}

criterion_group!(benches, stress_majorization, uniform_generation);
criterion_main!(benches);
