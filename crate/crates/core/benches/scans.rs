use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use permrat::derivation::{derive_n3, specialize_n3};
use permrat::exec::Exec;
use permrat::fields::make_field;
use permrat::mpoly::resultant_with;
use permrat::search::{count_on_conjugates, is_permutation, ProblemInstance, DEFAULT_BUDGET};

fn executors() -> Vec<(&'static str, Exec)> {
    vec![("sequential", Exec::sequential()), ("parallel", Exec::default())]
}

fn permutation_scan(c: &mut Criterion) {
    let cfg = make_field(13, 4).unwrap();
    let inst = ProblemInstance::new(cfg.clone(), cfg.one()).unwrap();
    let mut group = c.benchmark_group("is_permutation/p13n4");
    for (name, exec) in executors() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| is_permutation(&inst, DEFAULT_BUDGET, &exec).unwrap())
        });
    }
    group.finish();
}

fn intersection_count(c: &mut Criterion) {
    let sys = derive_n3().unwrap();
    let cfg = make_field(31, 3).unwrap();
    let sp = specialize_n3(&sys, 31, 6).unwrap();
    let polys = [sp.g, sp.q];
    let mut group = c.benchmark_group("count_on_conjugates/p31n3");
    group.sample_size(10);
    for (name, exec) in executors() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| count_on_conjugates(&polys, &cfg, DEFAULT_BUDGET, &exec).unwrap())
        });
    }
    group.finish();
}

fn resultant(c: &mut Criterion) {
    let sys = derive_n3().unwrap();
    let y3 = sys.g.vars().index_of("Y3").unwrap();
    let mut group = c.benchmark_group("resultant/G_Q_Y3");
    group.sample_size(10);
    for (name, exec) in executors() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| resultant_with(&sys.g, &sys.q, y3, &exec))
        });
    }
    group.finish();
}

criterion_group!(benches, permutation_scan, intersection_count, resultant);
criterion_main!(benches);
