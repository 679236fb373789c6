use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nullcert::algebra::enumerate_monomials;
use nullcert::dual::{default_ordering, patch_dual_certificate};
use nullcert::exec;
use nullcert::graph::{essential_graph_ordered, girth_with, is_forest, Graph};
use nullcert::{Execution, PrimeField};

fn modes() -> Vec<(&'static str, Execution)> {
    let mut m = vec![("sequential", Execution::Sequential)];
    #[cfg(feature = "parallel")]
    m.push(("parallel", Execution::Parallel));
    m
}

fn patching(c: &mut Criterion) {
    let f = PrimeField::new(7).unwrap();
    let mut group = c.benchmark_group("patch");
    group.sample_size(10);
    for (n, d) in [(31, 0), (41, 1)] {
        let g = Graph::cycle(n);
        for (name, mode) in modes() {
            group.bench_with_input(BenchmarkId::new(name, format!("C{n}_d{d}")), &g, |b, g| {
                b.iter(|| patch_dual_certificate(g, 3, d, f, None, mode).unwrap())
            });
        }
    }
    group.finish();
}

fn essential_sweep(c: &mut Criterion) {
    let g = Graph::cycle(41);
    let h = g.relabel(&default_ordering(&g));
    let vertices: Vec<u32> = h.vertices().collect();
    let monomials = enumerate_monomials(&vertices, 3, 3);
    let mut group = c.benchmark_group("essential_sweep_C41_deg3");
    group.sample_size(10);
    for (name, mode) in modes() {
        group.bench_function(name, |b| {
            b.iter(|| {
                exec::map(mode, &monomials, |m| {
                    let support: Vec<u32> = m.support().collect();
                    is_forest(&essential_graph_ordered(&h, &support))
                })
            })
        });
    }
    group.finish();
}

fn girth_bfs(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = 600u32;
    let edges: Vec<(u32, u32)> = (0..3 * n)
        .map(|_| (rng.gen_range(1..=n), rng.gen_range(1..=n)))
        .filter(|(u, v)| u != v)
        .collect();
    let g = Graph::new(n, edges).unwrap();
    let mut group = c.benchmark_group("girth_random_600");
    for (name, mode) in modes() {
        group.bench_function(name, |b| b.iter(|| girth_with(&g, mode)));
    }
    group.finish();
}

criterion_group!(benches, patching, essential_sweep, girth_bfs);
criterion_main!(benches);
