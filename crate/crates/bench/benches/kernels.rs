use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use rslab::fourier::{indicator_spectrum, CharacterTable, FourierContext};
use rslab::randmodel::{sample_instance, SampleModel};
use rslab::recovery;
use rslab::rng::SeedSpec;
use rslab::rscode::{weight_distribution_brute, weight_distribution_exact, RsCode};
use rslab::{Field, FieldElem};

fn field_mul(c: &mut Criterion) {
    for (p, k) in [(13, 1), (2, 4), (2, 8)] {
        let f = Field::gf(p, k).unwrap();
        let els: Vec<FieldElem> = f.elements().collect();
        c.bench_function(&format!("mul all pairs GF({})", f.q()), |b| {
            b.iter(|| {
                let mut acc = FieldElem::ZERO;
                for &x in &els {
                    for &y in &els {
                        acc = f.add(acc, f.mul(x, y));
                    }
                }
                black_box(acc)
            })
        });
    }
}

fn decide(c: &mut Criterion) {
    let f = Field::gf(2, 4).unwrap();
    let code = RsCode::full(&f, 8).unwrap();
    let insts: Vec<_> = (0..64)
        .map(|t| sample_instance(&f, 16, SampleModel::Iid { p: 0.25 }, SeedSpec::new(7, t)).unwrap())
        .collect();
    c.bench_function("decide RS[16,8] p=0.25 x64", |b| {
        b.iter(|| insts.iter().filter(|i| recovery::decide(&code, i).unwrap()).count())
    });
    let small = RsCode::full(&f, 2).unwrap();
    let dense: Vec<_> = (0..64)
        .map(|t| sample_instance(&f, 16, SampleModel::Iid { p: 0.5 }, SeedSpec::new(8, t)).unwrap())
        .collect();
    c.bench_function("count RS[16,2] p=0.5 x64", |b| {
        b.iter(|| dense.iter().map(|i| recovery::count(&small, i, 0).unwrap().count).sum::<u64>())
    });
}

fn weights(c: &mut Criterion) {
    let f = Field::gf(2, 4).unwrap();
    let code = RsCode::full(&f, 2).unwrap();
    c.bench_function("wtdist exact RS[16,2]", |b| b.iter(|| weight_distribution_exact(black_box(&code)).unwrap()));
    c.bench_function("wtdist brute RS[16,2]", |b| b.iter(|| weight_distribution_brute(black_box(&code)).unwrap()));
}

fn spectrum(c: &mut Criterion) {
    let f = Field::gf(2, 4).unwrap();
    let table = CharacterTable::new(&f);
    let subset: Vec<FieldElem> = (0..16).step_by(3).map(FieldElem).collect();
    c.bench_function("indicator spectrum GF(16)", |b| b.iter(|| indicator_spectrum(&table, black_box(&subset))));
    let g5 = Field::gf(5, 1).unwrap();
    let code = RsCode::full(&g5, 2).unwrap();
    let ctx = FourierContext::new(&code).unwrap();
    let inst = sample_instance(&g5, 5, SampleModel::Iid { p: 0.6 }, SeedSpec::new(9, 0)).unwrap();
    c.bench_function("fourier decompose RS[5,2]", |b| b.iter(|| ctx.decompose(black_box(&inst)).unwrap()));
}

criterion_group!(benches, field_mul, decide, weights, spectrum);
criterion_main!(benches);
