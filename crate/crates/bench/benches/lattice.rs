use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use og10_lattice::catalog::{make_e8, make_leech, make_og10_l};
use og10_lattice::exact::{hnf, snf};
use og10_lattice::isometry::e8_swap_involution;
use og10_lattice::og10::{coinvariant_wall_scan, contradiction_table};
use og10_lattice::reduction::{minimal_norm, short_vectors, EnumOptions};
use og10_lattice::IntMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(-50..=50)).collect())
        .collect();
    IntMatrix::from_rows(&rows)
}

fn normal_forms(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    c.bench_function("hnf 12x12", |b| {
        b.iter_batched(
            || random_matrix(&mut rng, 12),
            |m| hnf(&m),
            BatchSize::SmallInput,
        )
    });
    c.bench_function("snf 12x12", |b| {
        b.iter_batched(
            || random_matrix(&mut rng, 12),
            |m| snf(&m),
            BatchSize::SmallInput,
        )
    });
    let l = make_og10_l();
    c.bench_function("snf og10 gram", |b| b.iter(|| snf(l.gram())));
}

fn enumeration(c: &mut Criterion) {
    let e8 = make_e8();
    c.bench_function("e8 vectors up to norm 4", |b| {
        b.iter(|| short_vectors(&e8, 4).unwrap())
    });
    let leech = make_leech().unwrap();
    let mut group = c.benchmark_group("leech");
    group.sample_size(10);
    group.bench_function("minimal norm", |b| b.iter(|| minimal_norm(&leech).unwrap()));
    group.finish();
}

fn proof_steps(c: &mut Criterion) {
    c.bench_function("contradiction table", |b| b.iter(contradiction_table));
    let g = e8_swap_involution();
    let mut group = c.benchmark_group("walls");
    group.sample_size(10);
    group.bench_function("e8-swap coinvariant scan", |b| {
        b.iter(|| coinvariant_wall_scan(&g, &EnumOptions::default()).unwrap())
    });
    group.finish();
}

criterion_group!(benches, normal_forms, enumeration, proof_steps);
criterion_main!(benches);
