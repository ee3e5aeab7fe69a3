use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use racahkit_core::exact::monomials_of_degree;
use racahkit_core::harmonics::{build_basis, fischer_decompose, BasisOrder};
use racahkit_core::racah::RacahContext;
use racahkit_core::su11::model_vars;
use racahkit_core::{LaurentPoly, ModelKind, ParamScalar, Subset};

fn dense(n: usize, k: u32) -> LaurentPoly {
    let terms = monomials_of_degree(n, k).into_iter().enumerate().map(|(i, e)| (e, ParamScalar::int(i as i64 % 7 - 3)));
    LaurentPoly::from_terms(&model_vars(n), terms.collect::<Vec<_>>())
}

fn casimirs(c: &mut Criterion) {
    let ctx = RacahContext::new(4, ModelKind::Bargmann).unwrap();
    let a = Subset::new(4, [1, 2]).unwrap();
    let b = Subset::new(4, [1, 2, 3]).unwrap();
    c.bench_function("Casimir commutator check, n=4", |bench| bench.iter(|| ctx.check_commute(black_box(&a), black_box(&b)).unwrap()));
}

fn bases(c: &mut Criterion) {
    for kind in ModelKind::ALL {
        c.bench_function(&format!("chain basis n=4 k=3, {kind}"), |bench| {
            bench.iter(|| build_basis(4, black_box(3), kind, BasisOrder::Standard).unwrap())
        });
    }
}

fn fischer(c: &mut Criterion) {
    let mut group = c.benchmark_group("Fischer decomposition");
    group.sample_size(10);
    for (n, k) in [(3, 3), (4, 4)] {
        let p = dense(n, k);
        group.bench_function(format!("dense n={n} k={k}"), |bench| {
            bench.iter(|| fischer_decompose(black_box(&p), ModelKind::Bargmann).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, casimirs, bases, fischer);
criterion_main!(benches);
