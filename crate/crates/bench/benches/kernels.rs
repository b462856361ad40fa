//! Benchmarks for the hot kernels: word rewriting, star products,
//! coupling-table construction, and the symmetry-preserving ordering on
//! the matrix algebra.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qspace::{
    cg_table, m2_sympres_ordering, monomials_of_degree, normal_form, star, AlgebraDescriptor,
    AlgebraKind, HSeries, HalfInt, NCPoly, OrderingKind, OrderingMap,
};

const ORDER: usize = 8;

fn random_word(rng: &mut ChaCha8Rng, gen_count: u8, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.gen_range(0..gen_count)).collect()
}

fn random_poly(rng: &mut ChaCha8Rng, alg: &AlgebraDescriptor, max_degree: u32) -> NCPoly {
    let mut p = NCPoly::zero(alg, ORDER);
    for _ in 0..4 {
        let degree = rng.gen_range(0..=max_degree);
        let monos = monomials_of_degree(alg.kind.gen_count(), degree);
        let mono = monos[rng.gen_range(0..monos.len())];
        p.add_term(mono, HSeries::from_int(rng.gen_range(-3i64..=3), ORDER));
    }
    p
}

fn bench_normal_form(c: &mut Criterion) {
    let m2 = AlgebraDescriptor::new(AlgebraKind::M2);
    c.bench_function("normal_form/m2 word of length 10", |b| {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        b.iter_batched(
            || random_word(&mut rng, 4, 10),
            |word| normal_form(&m2, &word, ORDER).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn bench_star(c: &mut Criterion) {
    for (algebra, kind) in [
        (AlgebraKind::Plane, OrderingKind::Normal),
        (AlgebraKind::Plane, OrderingKind::SymPres),
        (AlgebraKind::M2, OrderingKind::SymPres),
    ] {
        let classical = AlgebraDescriptor::new(algebra.classical());
        let map = OrderingMap::new(kind, algebra, ORDER);
        // Prime the graded-matrix caches so the benchmark isolates the
        // product itself.
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let warm = random_poly(&mut rng, &classical, 4);
        star(&map, &warm, &warm).unwrap();
        let name = format!("star/{} {} degree 4", algebra.name(), kind.name());
        c.bench_function(&name, |b| {
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            b.iter_batched(
                || {
                    (
                        random_poly(&mut rng, &classical, 4),
                        random_poly(&mut rng, &classical, 4),
                    )
                },
                |(p, q)| star(&map, &p, &q).unwrap(),
                BatchSize::SmallInput,
            )
        });
    }
}

fn bench_cg_table(c: &mut Criterion) {
    // Tables are memoized globally, so steady-state callers pay only the
    // lookup; that shared-cache access is what this measures.
    c.bench_function("cg_table/cached lookup 2 x 3/2 deformed", |b| {
        b.iter(|| cg_table(HalfInt::from_twice(4), HalfInt::from_twice(3), true, ORDER).unwrap())
    });
}

fn bench_m2_ordering(c: &mut Criterion) {
    let classical = AlgebraDescriptor::new(AlgebraKind::M2Classical);
    let map = OrderingMap::new(OrderingKind::SymPres, AlgebraKind::M2, ORDER);
    // Prime the graded-matrix caches up to degree 6.
    let warm = NCPoly::monomial(
        &classical,
        monomials_of_degree(4, 6)[0],
        HSeries::one(ORDER),
        ORDER,
    );
    map.apply(&warm).unwrap();
    c.bench_function("sympres apply/m2 degree-6 polynomial (warm)", |b| {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        b.iter_batched(
            || random_poly(&mut rng, &classical, 6),
            |p| map.apply(&p).unwrap(),
            BatchSize::SmallInput,
        )
    });
    // The one-shot entry point pays for its matrices each call.
    c.bench_function("sympres image/m2 degree-6 polynomial (cold map)", |b| {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        b.iter_batched(
            || random_poly(&mut rng, &classical, 6),
            |p| m2_sympres_ordering(&p).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(
    benches,
    bench_normal_form,
    bench_star,
    bench_cg_table,
    bench_m2_ordering
);
criterion_main!(benches);
