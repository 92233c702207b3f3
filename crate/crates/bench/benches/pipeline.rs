use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use unirat::certify::{certify_unirational, section_search_oracle, SectionLimits};
use unirat::conicbundle::{nonsplit_locus, ConicBundle};
use unirat::coversynth::{synth_requiv_cover, synth_unirational_cover};
use unirat::gf::{Field, FiniteField};
use unirat::p1curve::{ClosedPoint, RatPoint};
use unirat_bench::{prescribed, random_bundle, random_map, random_poly, rng};

fn factoring(c: &mut Criterion) {
    let k9 = Field::new(3, 2, Some(vec![1, 0, 1])).unwrap();
    let f = random_poly(&k9, 32, &mut rng(1));
    c.bench_function("factor degree 32 over F_9", |b| b.iter(|| black_box(&f).factor(&k9)));
}

fn residues(c: &mut Criterion) {
    let k = Field::prime(7).unwrap();
    let mut r = rng(2);
    let bundles: Vec<ConicBundle> = (0..16).map(|_| random_bundle(&k, 4, &mut r)).collect();
    c.bench_function("non-split locus, 16 bundles of degree 4 over F_7", |b| {
        b.iter(|| bundles.iter().map(|x| nonsplit_locus(x).len()).sum::<usize>())
    });
}

fn fibres(c: &mut Criterion) {
    let k = Field::prime(5).unwrap();
    let mut r = rng(3);
    let phi = random_map(&k, 8, &mut r);
    let pts: Vec<ClosedPoint> = (1..=3).flat_map(|d| ClosedPoint::of_degree(d, &k)).collect();
    c.bench_function("fibres of a degree-8 map over all points of degree ≤ 3 over F_5", |b| {
        b.iter(|| pts.iter().map(|s| phi.fibre(s).len()).sum::<usize>())
    });
}

fn synthesis(c: &mut Criterion) {
    let k = Field::prime(7).unwrap();
    let mut r = rng(4);
    let star = prescribed(&k, &[1, 1, 1, 2, 3], &mut r);
    let locus = nonsplit_locus(&star);
    c.bench_function("unirational cover, locus degrees 1,1,1,2,3 over F_7", |b| {
        b.iter(|| synth_unirational_cover(black_box(&locus)).unwrap())
    });

    let k5 = Field::prime(5).unwrap();
    let two = prescribed(&k5, &[1, 1, 2], &mut r);
    let locus2 = nonsplit_locus(&two);
    let (s0, s1) = (RatPoint::Finite(k5.zero()), RatPoint::Finite(k5.one()));
    c.bench_function("R-equivalence cover, locus degrees 1,1,2 over F_5", |b| {
        b.iter(|| synth_requiv_cover(black_box(&locus2), s0, s1).unwrap())
    });

    c.bench_function("certify-unirational end to end over F_7", |b| {
        b.iter_batched(|| star.clone(), |x| certify_unirational(&x, 0), BatchSize::SmallInput)
    });
}

fn sections(c: &mut Criterion) {
    let k = Field::prime(3).unwrap();
    let b = ConicBundle::from_ints(&[0, 1], &[-1], &[-1], &k).unwrap();
    c.bench_function("section oracle exhausting degree 2 over F_3", |bch| {
        bch.iter(|| section_search_oracle(black_box(&b), 2, &SectionLimits::default()))
    });
}

criterion_group!(benches, factoring, residues, fibres, synthesis, sections);
criterion_main!(benches);
