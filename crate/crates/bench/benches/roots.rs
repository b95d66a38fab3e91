use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use domroots::density::{construct_witness, SearchBudget};
use domroots::dompoly::{dom_poly_closed_form, dom_poly_inclusion_exclusion};
use domroots::rational::{parse_rational, pow10_inv};
use domroots::realroots::{isolate_real_roots, star_root};
use domroots::Family;
use domroots_bench::{negative_window, petersen};

fn isolation(c: &mut Criterion) {
    let tol = pow10_inv(9);
    let mut group = c.benchmark_group("isolate");
    let pet = dom_poly_inclusion_exclusion(&petersen()).unwrap().into_poly();
    group.bench_function("petersen", |b| {
        let w = negative_window(&pet);
        b.iter(|| isolate_real_roots(black_box(&pet), &w, &tol).unwrap())
    });
    for k in [10, 40, 160] {
        let p = dom_poly_closed_form(Family::Star(k)).unwrap().into_poly();
        let w = negative_window(&p);
        group.bench_with_input(BenchmarkId::new("star", k), &p, |b, p| {
            b.iter(|| isolate_real_roots(black_box(p), &w, &tol).unwrap())
        });
    }
    group.finish();
}

fn star_roots(c: &mut Criterion) {
    let tol = pow10_inv(9);
    let mut group = c.benchmark_group("star_root");
    for k in [10, 100, 1000] {
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| star_root(black_box(k), &tol).unwrap())
        });
    }
    group.finish();
}

fn witness(c: &mut Criterion) {
    let budget = SearchBudget::default();
    let mut group = c.benchmark_group("witness");
    group.sample_size(10);
    for (z, eps) in [("-1.5", "0.05"), ("-2.5", "0.1"), ("-5", "0.1")] {
        let (zq, eq) = (parse_rational(z).unwrap(), parse_rational(eps).unwrap());
        group.bench_function(format!("z={z},eps={eps}"), |b| {
            b.iter(|| construct_witness(black_box(&zq), &eq, &budget).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, isolation, star_roots, witness);
criterion_main!(benches);
