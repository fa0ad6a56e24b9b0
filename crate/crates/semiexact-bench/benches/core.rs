use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use semiexact::builtins::cyclic_group;
use semiexact::{
    builtin_semiring, connecting_morphism, enumerate_commutative_monoids, hom_enumerate,
    junction_verdict, monoid_corpus, validate_morphism, zero_morphism, Diagram, SemiringFamily,
};

fn bench_monoid_enumeration(c: &mut Criterion) {
    c.bench_function("enumerate_commutative_monoids(5)", |b| {
        b.iter(|| enumerate_commutative_monoids(std::hint::black_box(5)).unwrap().len())
    });
}

fn bench_hom_enumeration(c: &mut Criterion) {
    let corpus = monoid_corpus(4).unwrap();
    // the largest pair dominates: two order-4 objects
    let big: Vec<_> = corpus.objects.iter().filter(|o| o.order == 4).collect();
    let (a, b_obj) = (big[0].clone(), big[big.len() - 1].clone());
    c.bench_function("hom_enumerate(order 4, order 4)", |b| {
        b.iter(|| hom_enumerate(&a, &b_obj).unwrap().len())
    });
}

fn bench_junction_verdict(c: &mut Criterion) {
    let ring = builtin_semiring(SemiringFamily::Zmod, 4).unwrap();
    let z2 = cyclic_group(2, ring.clone()).unwrap();
    let z4 = cyclic_group(4, ring).unwrap();
    let f = validate_morphism("f", z2.clone(), z4.clone(), vec![0, 2]).unwrap();
    let g = validate_morphism("g", z4, z2, vec![0, 1, 0, 1]).unwrap();
    c.bench_function("junction_verdict(Z2 -> Z4 -> Z2)", |b| {
        b.iter_batched(
            || (f.clone(), g.clone()),
            |(f, g)| junction_verdict(&f, &g).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn bench_snake_certificate(c: &mut Criterion) {
    let ring = builtin_semiring(SemiringFamily::Zmod, 4).unwrap();
    let z2 = cyclic_group(2, ring.clone()).unwrap();
    let z4 = cyclic_group(4, ring).unwrap();
    let f = validate_morphism("f", z2.clone(), z4.clone(), vec![0, 2]).unwrap();
    let g = validate_morphism("g", z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
    let a1 = zero_morphism(&z2, &z2).unwrap();
    let a2 = validate_morphism("a2", z4.clone(), z4.clone(), vec![0, 2, 0, 2]).unwrap();
    let a3 = zero_morphism(&z2, &z2).unwrap();
    let d = Diagram::new(
        vec![vec![z2.clone(), z4.clone(), z2.clone()], vec![z2.clone(), z4, z2]],
        vec![vec![f.clone(), g.clone()], vec![f, g]],
        vec![vec![a1, a2, a3]],
    )
    .unwrap();
    c.bench_function("connecting_morphism(canonical)", |b| {
        b.iter(|| connecting_morphism(std::hint::black_box(&d)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_monoid_enumeration,
    bench_hom_enumeration,
    bench_junction_verdict,
    bench_snake_certificate
);
criterion_main!(benches);
