use charkern::group::{conjugacy_classes, normal_subgroups};
use charkern::invariants::analyze;
use charkern::{dixon_character_table, GroupSpec};
use charkern_bench::fixtures;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn character_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("character_table");
    group.sample_size(10);
    for (name, g) in fixtures() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| dixon_character_table(g).unwrap())
        });
    }
    group.finish();
}

fn lattices(c: &mut Criterion) {
    let mut group = c.benchmark_group("normal_subgroups");
    group.sample_size(10);
    for (name, g) in fixtures() {
        let table = dixon_character_table(&g).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(name), &(g, table), |b, (g, t)| {
            b.iter(|| normal_subgroups(g, t))
        });
    }
    group.finish();
}

fn classes_and_analysis(c: &mut Criterion) {
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(10);
    let fixtures = fixtures();
    let (_, ut4) = &fixtures[1];
    group.bench_function("conjugacy_classes/ut4-3", |b| b.iter(|| conjugacy_classes(ut4)));
    group.bench_function("analyze/ut4-3", |b| b.iter(|| analyze(ut4.clone()).unwrap()));
    group.bench_function("build/ut4-3", |b| {
        b.iter(|| charkern::build_group(&GroupSpec::unitriangular(4, 3)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, character_tables, lattices, classes_and_analysis);
criterion_main!(benches);
