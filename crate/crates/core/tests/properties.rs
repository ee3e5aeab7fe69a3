use std::collections::BTreeMap;

use proptest::prelude::*;
use racahkit_core::exact::{int, Exponent, LaurentPoly, Param, ParamPoly, ParamScalar, Vars};
use racahkit_core::grammar::{parse_op, parse_poly};
use racahkit_core::harmonics::{ck_extend, ck_inverse, ck_translation, fischer_decompose, fischer_decompose_linear, is_harmonic};
use racahkit_core::su11::model_vars;
use racahkit_core::transforms::laplace_poly;
use racahkit_core::{GaugeExponent, ModelKind, WeylOp};

fn coeff() -> impl Strategy<Value = ParamScalar> {
    (-3i64..=3, 0u8..3).prop_map(|(c, kind)| {
        let base = ParamScalar::int(c);
        match kind {
            0 => base,
            1 => &base * &ParamScalar::nu(1),
            _ => &base * &(&ParamScalar::nu(2) + &ParamScalar::ratio(1, 2)),
        }
    })
}

fn poly_in(vars: Vars, lo: i32) -> impl Strategy<Value = LaurentPoly> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(lo..3, n), coeff()), 0..4)
        .prop_map(move |terms| LaurentPoly::from_terms(&vars, terms.into_iter().map(|(e, c)| (Exponent(e), c))))
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    poly_in(model_vars(2), 0)
}

fn op_in(vars: Vars, lo: i32) -> impl Strategy<Value = WeylOp> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(lo..3, n), prop::collection::vec(0..3, n), coeff()), 0..4).prop_map(move |terms| {
        terms.into_iter().fold(WeylOp::zero(&vars), |acc, (x, d, c)| &acc + &WeylOp::term(&vars, Exponent(x), Exponent(d), c))
    })
}

fn op() -> impl Strategy<Value = WeylOp> {
    op_in(model_vars(2), 0)
}

fn gauge() -> impl Strategy<Value = GaugeExponent> {
    prop::collection::vec(coeff(), 2).prop_map(GaugeExponent)
}

fn homogeneous(n: usize, k: u32) -> impl Strategy<Value = LaurentPoly> {
    let monos = racahkit_core::exact::monomials_of_degree(n, k);
    prop::collection::vec(-4i64..=4, monos.len()).prop_map(move |cs| {
        let vars = model_vars(n);
        LaurentPoly::from_terms(&vars, monos.iter().cloned().zip(cs.into_iter().map(ParamScalar::int)))
    })
}

/// Small nonzero polynomials in nu1, nu2 with integer coefficients.
fn param_poly() -> impl Strategy<Value = ParamPoly> {
    prop::collection::vec((0u32..3, 0u32..3, -4i64..=4), 1..4).prop_map(|terms| {
        let p = terms.into_iter().fold(ParamPoly::zero(), |acc, (i, j, c)| {
            let m = &ParamPoly::param(Param::Nu(1)).pow(i) * &ParamPoly::param(Param::Nu(2)).pow(j);
            &acc + &(&m * &ParamPoly::constant(int(c)))
        });
        if p.is_zero() {
            ParamPoly::one()
        } else {
            p
        }
    })
}

/// `p(x -> z^2)` by doubling exponents.
fn squared(p: &LaurentPoly, z: &Vars) -> LaurentPoly {
    LaurentPoly::from_terms(z, p.terms().map(|(e, c)| (Exponent(e.0.iter().map(|v| 2 * v).collect()), c.clone())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn scalar_field_axioms(a in coeff(), b in coeff(), c in coeff()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
    }

    #[test]
    fn substitution_is_a_homomorphism(p in poly(), q in poly(), a in -2i64..=2, b in -2i64..=2, c in coeff()) {
        let target = model_vars(2);
        let x = |i| LaurentPoly::var(&target, i);
        let img1 = &(&x(0).scale(&ParamScalar::int(a)) + &x(1)) + &LaurentPoly::constant(&target, c);
        let img2 = &x(0) - &x(1).scale(&ParamScalar::int(b));
        let images = BTreeMap::from([("x1".to_string(), img1), ("x2".to_string(), img2)]);
        let s = |f: &LaurentPoly| f.substitute_affine(&target, &images).unwrap();
        prop_assert_eq!(s(&(&p * &q)), &s(&p) * &s(&q));
        prop_assert_eq!(s(&(&p + &q)), &s(&p) + &s(&q));
    }

    #[test]
    fn composition_is_associative(a in op(), b in op(), c in op()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn application_is_a_representation(a in op(), b in op(), p in poly()) {
        prop_assert_eq!((&a * &b).apply(&p), a.apply(&b.apply(&p)));
    }

    #[test]
    fn commutator_jacobi_identity(a in op(), b in op(), c in op()) {
        let br = |x: &WeylOp, y: &WeylOp| x.commutator(y).unwrap();
        let sum = &(&br(&a, &br(&b, &c)) + &br(&b, &br(&c, &a))) + &br(&c, &br(&a, &b));
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn gauge_is_a_homomorphism(a in op_in(model_vars(2), -1), b in op_in(model_vars(2), -1), g in gauge()) {
        let conj = |o: &WeylOp| o.gauge_conjugate(&g).unwrap();
        prop_assert_eq!(conj(&(&a * &b)), &conj(&a) * &conj(&b));
        prop_assert_eq!(conj(&a).gauge_conjugate(&g.inverse()).unwrap(), a);
    }

    #[test]
    fn square_change_is_a_homomorphism(a in op(), b in op()) {
        let z = Vars::indexed("z", 2);
        let sq = |o: &WeylOp| o.square_change_of_vars(&z).unwrap();
        prop_assert_eq!(sq(&(&a * &b)), &sq(&a) * &sq(&b));
    }

    #[test]
    fn square_change_intertwines_application(a in op(), p in poly()) {
        let z = Vars::indexed("z", 2);
        let changed = a.square_change_of_vars(&z).unwrap();
        prop_assert_eq!(squared(&a.apply(&p), &z), changed.apply(&squared(&p, &z)));
    }

    #[test]
    fn printed_forms_parse_back(p in poly_in(model_vars(2), -1), a in op_in(model_vars(2), -1)) {
        let vars = model_vars(2);
        prop_assert_eq!(parse_poly(&p.to_string(), &vars).unwrap(), p);
        prop_assert_eq!(parse_op(&a.to_string(), &vars).unwrap(), a);
    }

    #[test]
    fn gcd_divides_and_keeps_common_factor(a in param_poly(), b in param_poly(), c in param_poly()) {
        let (ac, bc) = (&a * &c, &b * &c);
        let g = ParamPoly::gcd(&ac, &bc);
        prop_assert!(ac.div_exact(&g).is_some());
        prop_assert!(bc.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&c).is_some());
    }

    #[test]
    fn laplace_is_linear(p in poly(), q in poly()) {
        prop_assert_eq!(laplace_poly(&(&p + &q)).unwrap(), &laplace_poly(&p).unwrap() + &laplace_poly(&q).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fischer_reconstructs_and_matches_oracle(p in (2usize..=3, 0u32..=3).prop_flat_map(|(n, k)| homogeneous(n, k)), bg in any::<bool>()) {
        let kind = if bg { ModelKind::BarutGirardello } else { ModelKind::Bargmann };
        let d = fischer_decompose(&p, kind).unwrap();
        prop_assert_eq!(d.reconstruct(kind).unwrap(), p.clone());
        for (_, h) in &d.components {
            prop_assert!(is_harmonic(h, kind).unwrap());
        }
        prop_assert_eq!(fischer_decompose_linear(&p, kind).unwrap(), d);
    }

    #[test]
    fn ck_round_trip(p in (1usize..=2, 0u32..=4).prop_flat_map(|(n, k)| homogeneous(n, k)), bg in any::<bool>()) {
        let kind = if bg { ModelKind::BarutGirardello } else { ModelKind::Bargmann };
        let q = ck_extend(&p, kind).unwrap();
        prop_assert!(is_harmonic(&q, kind).unwrap());
        prop_assert_eq!(ck_inverse(&q, kind).unwrap(), p.clone());
        if !bg {
            prop_assert_eq!(q, ck_translation(&p).unwrap());
        }
    }
}
