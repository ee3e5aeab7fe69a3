use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use racahkit_core::exact::{int, Param, ParamPoly};

fn linear(i: usize, c: i64) -> ParamPoly {
    &ParamPoly::param(Param::Nu(i)) + &ParamPoly::constant(int(c))
}

fn product(factors: &[ParamPoly]) -> ParamPoly {
    factors.iter().fold(ParamPoly::one(), |acc, f| &acc * f)
}

fn gcd(c: &mut Criterion) {
    let common = product(&[linear(1, 1), linear(2, 3), linear(1, 5), linear(3, 2)]);
    let a = &common * &product(&[linear(2, 7), linear(3, 1), linear(1, 9)]);
    let b = &common * &product(&[linear(1, 4), linear(2, 2), linear(3, 6)]);
    c.bench_function("gcd of shared linear factors, 3 parameters", |bench| bench.iter(|| ParamPoly::gcd(black_box(&a), black_box(&b))));
    c.bench_function("product of seven linear factors", |bench| {
        bench.iter(|| &common * black_box(&product(&[linear(2, 7), linear(3, 1), linear(1, 9)])))
    });
}

criterion_group!(benches, gcd);
criterion_main!(benches);
