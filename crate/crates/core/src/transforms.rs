//! The weighted Laplace transform between the BG and Bargmann models, and
//! the identification of the BG model with the Miller Hamiltonian.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{int, monomials_of_degree, Exponent, LaurentPoly, ParamScalar, Rational, Vars};
use crate::harmonics::{basis_element, bg_jacobi_explicit, build_basis, ck_extend, BasisLabel, BasisOrder};
use crate::report::{IdentityCheck, VerificationReport};
use crate::su11::{make_realization, model_vars, ModelKind, Subset};
use crate::weyl::{GaugeExponent, WeylOp};

/// The product transform `x^m -> (2 nu)_m rho^m` in every variable. The
/// image uses the same variable names as the source.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LaplaceMap {
    pub n: usize,
}

impl LaplaceMap {
    pub fn new(n: usize) -> Self {
        LaplaceMap { n }
    }

    /// Image of one monomial's coefficient factor `prod (2 nu_i)_(m_i)`.
    pub fn weight(&self, e: &Exponent) -> Result<ParamScalar> {
        let mut w = ParamScalar::one();
        for (i, &m) in e.0.iter().enumerate() {
            if m < 0 {
                return Err(Error::NegativeExponent);
            }
            w = &w * &ParamScalar::nu(i + 1).scale(&int(2)).pochhammer(m as u32);
        }
        Ok(w)
    }

    pub fn apply(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        if p.vars().len() != self.n {
            return Err(Error::Dimension(format!("transform in {} variables applied to {}", self.n, p.vars().len())));
        }
        let mut terms = Vec::with_capacity(p.len());
        for (e, c) in p.terms() {
            terms.push((e.clone(), c * &self.weight(e)?));
        }
        Ok(LaurentPoly::from_terms(p.vars(), terms))
    }
}

pub fn laplace_poly(p: &LaurentPoly) -> Result<LaurentPoly> {
    LaplaceMap::new(p.vars().len()).apply(p)
}

/// `L(L_a f) = K_a L(f)` for `a` in `{+, -, 0}` over all of `{1..n}` and every
/// monomial `f` of degree at most `degree`.
pub fn verify_intertwine(n: usize, degree: u32) -> Result<VerificationReport> {
    let full = Subset::range(n);
    let bg = make_realization(n, &full, ModelKind::BarutGirardello)?;
    let bargmann = make_realization(n, &full, ModelKind::Bargmann)?;
    let vars = model_vars(n);
    let map = LaplaceMap::new(n);
    let pairs = [("+", &bg.plus, &bargmann.plus), ("-", &bg.minus, &bargmann.minus), ("0", &bg.zero, &bargmann.zero)];
    let mut r = VerificationReport::new("Laplace intertwining", n, None);
    r.record("degree", degree);
    for d in 0..=degree {
        for e in monomials_of_degree(n, d) {
            let f = LaurentPoly::monomial(&vars, e, ParamScalar::one());
            let lf = map.apply(&f)?;
            for (tag, l, k) in pairs {
                let left = map.apply(&l.apply(&f))?;
                let right = k.apply(&lf);
                r.push(IdentityCheck::polys(format!("L(L{tag} {f}) = K{tag} L({f})"), left, right));
            }
        }
    }
    Ok(r)
}

/// `L(CK^BG p) = CK(L p)` for every monomial `p` in `n - 1` variables of degree at most `degree`.
pub fn verify_ck_commutation(n: usize, degree: u32) -> Result<VerificationReport> {
    if n < 2 {
        return Err(Error::InvalidArgument("CK extension needs n >= 2".into()));
    }
    let vars = model_vars(n - 1);
    let mut r = VerificationReport::new("Laplace and CK commute", n, None);
    r.record("degree", degree);
    for d in 0..=degree {
        let checks = monomials_of_degree(n - 1, d)
            .into_par_iter()
            .map(|e| {
                let p = LaurentPoly::monomial(&vars, e, ParamScalar::one());
                let left = laplace_poly(&ck_extend(&p, ModelKind::BarutGirardello)?)?;
                let right = ck_extend(&laplace_poly(&p)?, ModelKind::Bargmann)?;
                Ok(IdentityCheck::polys(format!("L(CK_BG {p}) = CK(L {p})"), left, right))
            })
            .collect::<Result<Vec<_>>>()?;
        checks.into_iter().for_each(|c| r.push(c));
    }
    Ok(r)
}

/// The constant `c` with `L(psi^BG) = c psi` for one label.
pub fn laplace_constant(label: &BasisLabel) -> Result<ParamScalar> {
    let bg = basis_element(label, ModelKind::BarutGirardello, BasisOrder::Standard)?;
    let bargmann = basis_element(label, ModelKind::Bargmann, BasisOrder::Standard)?;
    laplace_poly(&bg)?.proportionality(&bargmann).ok_or(Error::NotProportional)
}

/// Images of the BG basis of degree `k` against the Bargmann basis, with
/// the proportionality constants recorded.
pub fn map_basis_laplace(n: usize, k: u32) -> Result<VerificationReport> {
    if n < 2 {
        return Err(Error::InvalidArgument("basis mapping needs n >= 2".into()));
    }
    let bg = build_basis(n, k, ModelKind::BarutGirardello, BasisOrder::Standard)?;
    let bargmann = build_basis(n, k, ModelKind::Bargmann, BasisOrder::Standard)?;
    let mut r = VerificationReport::new("Laplace maps BG basis to Bargmann basis", n, None);
    r.record("k", k);
    for ((label, p), (_, q)) in bg.iter().zip(&bargmann) {
        let image = laplace_poly(p)?;
        match image.proportionality(q) {
            Some(c) => {
                r.push(IdentityCheck::polys(format!("L(psiBG{label}) = c psi{label}"), image, q.scale(&c)));
                r.record(format!("c{label}"), c);
            }
            None => r.push(IdentityCheck::polys(format!("L(psiBG{label}) proportional to psi{label}"), image, q.clone())),
        }
    }
    Ok(r)
}

/// The explicit Bargmann basis as the Laplace image of the explicit Jacobi
/// product: `L(jacobi) = c psi` for every label, constants recorded.
pub fn verify_bargmann_explicit(n: usize, k: u32) -> Result<VerificationReport> {
    let bargmann = build_basis(n, k, ModelKind::Bargmann, BasisOrder::Standard)?;
    let mut r = VerificationReport::new(format!("explicit Bargmann basis, k={k}"), n, Some(ModelKind::Bargmann));
    for (label, psi) in bargmann {
        let image = laplace_poly(&bg_jacobi_explicit(&label)?)?;
        match image.proportionality(&psi) {
            Some(c) => {
                r.push(IdentityCheck::polys(format!("L(jacobi{label}) = c psi{label}"), image, psi.scale(&c)));
                r.record(format!("c{label}"), c);
            }
            None => r.push(IdentityCheck::polys(format!("L(jacobi{label}) proportional to psi{label}"), image, psi)),
        }
    }
    Ok(r)
}

/// Variables `z1..zn`.
pub fn z_vars(n: usize) -> Vars {
    Vars::indexed("z", n)
}

/// The superintegrable operator on the sphere: angular part and
/// potential coefficients `b_i = (2 nu_i - 1)^2 - 1/4`.
#[derive(Clone, Debug, PartialEq)]
pub struct MillerForm {
    pub n: usize,
    pub b: Vec<ParamScalar>,
    pub angular: WeylOp,
}

pub fn potential_coefficient(i: usize) -> ParamScalar {
    let t = &ParamScalar::nu(i).scale(&int(2)) - &ParamScalar::one();
    &(&t * &t) - &ParamScalar::ratio(1, 4)
}

/// `sum_(i<j) (z_j d_i - z_i d_j)^2`.
pub fn angular_operator(n: usize) -> WeylOp {
    let vars = z_vars(n);
    let mut acc = WeylOp::zero(&vars);
    for i in 0..n {
        for j in i + 1..n {
            let l = &(&WeylOp::x(&vars, j) * &WeylOp::d(&vars, i)) - &(&WeylOp::x(&vars, i) * &WeylOp::d(&vars, j));
            acc = &acc + &(&l * &l);
        }
    }
    acc
}

impl MillerForm {
    pub fn new(n: usize) -> Self {
        MillerForm { n, b: (1..=n).map(potential_coefficient).collect(), angular: angular_operator(n) }
    }

    /// `sum_i b_i z_i^-2` as a multiplication operator.
    pub fn potential(&self) -> WeylOp {
        let vars = z_vars(self.n);
        let mut acc = WeylOp::zero(&vars);
        for (i, b) in self.b.iter().enumerate() {
            let mut e = Exponent::zero(self.n);
            e.0[i] = -2;
            acc = &acc + &WeylOp::term(&vars, e, Exponent::zero(self.n), b.clone());
        }
        acc
    }

    /// The Hamiltonian on the sphere, angular part minus the potential.
    pub fn hamiltonian(&self) -> WeylOp {
        &self.angular - &self.potential()
    }
}

/// `sum_j d_j^2` in `z1..zn`.
pub fn laplacian(n: usize) -> WeylOp {
    let vars = z_vars(n);
    (0..n).fold(WeylOp::zero(&vars), |acc, j| &acc + &(&WeylOp::d(&vars, j) * &WeylOp::d(&vars, j)))
}

/// The gauge `prod z_j^(2 nu_j - 1/2)`.
pub fn miller_gauge(n: usize) -> GaugeExponent {
    GaugeExponent((1..=n).map(|j| &ParamScalar::nu(j).scale(&int(2)) - &ParamScalar::ratio(1, 2)).collect())
}

/// Takes `L-^[n]` through `x = z^2` and the gauge, returning the operator
/// after the change of variables, the gauged `H~`, and the checks.
pub fn miller_reduce(n: usize) -> Result<(WeylOp, WeylOp, VerificationReport)> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let z = z_vars(n);
    let minus = make_realization(n, &Subset::range(n), ModelKind::BarutGirardello)?.minus;
    let changed = minus.square_change_of_vars(&z)?;

    let quarter = ParamScalar::ratio(1, 4);
    let mut h = WeylOp::zero(&z);
    for j in 0..n {
        let mut inv = Exponent::zero(n);
        inv.0[j] = -1;
        let w = &ParamScalar::nu(j + 1).scale(&int(4)) - &ParamScalar::one();
        h = &h + &(&WeylOp::d(&z, j) * &WeylOp::d(&z, j));
        h = &h + &WeylOp::term(&z, inv, Exponent::unit(n, j), w);
    }
    let h_tilde = h.gauge_conjugate(&miller_gauge(n))?;
    let form = MillerForm::new(n);
    let expected = &laplacian(n) - &form.potential();

    let mut r = VerificationReport::new("Miller identification", n, Some(ModelKind::BarutGirardello));
    r.push(IdentityCheck::ops("L- under x = z^2 equals H/4", changed.clone(), h.scale(&quarter)));
    r.push(IdentityCheck::ops("g H g^-1 = Laplacian - sum b_j z_j^-2", h_tilde.clone(), expected));
    r.push(IdentityCheck::ops("no first-order terms after gauging", h_tilde.part_of_order(1), WeylOp::zero(&z)));
    Ok((changed, h_tilde, r))
}

/// `r^2 Laplacian = E(E + n - 2) + sum_(i<j) (z_j d_i - z_i d_j)^2` with `E` the Euler operator.
pub fn sphere_identity_check(n: usize) -> Result<VerificationReport> {
    if n < 2 {
        return Err(Error::InvalidArgument("the sphere identity needs n >= 2".into()));
    }
    let z = z_vars(n);
    let mut r2 = LaurentPoly::zero(&z);
    let mut euler = WeylOp::zero(&z);
    for j in 0..n {
        r2 = &r2 + &LaurentPoly::var(&z, j).pow(2);
        euler = &euler + &(&WeylOp::x(&z, j) * &WeylOp::d(&z, j));
    }
    let left = &WeylOp::multiplication(&r2) * &laplacian(n);
    let shifted = &euler + &WeylOp::scalar(&z, ParamScalar::int(n as i64 - 2));
    let right = &(&euler * &shifted) + &angular_operator(n);
    let mut r = VerificationReport::new("sphere decomposition of the Laplacian", n, None);
    r.push(IdentityCheck::ops("r^2 Laplacian = E(E + n - 2) + angular", left, right));
    Ok(r)
}

/// Generalized binomial `C(a, m) = (a - m + 1)_m / m!`.
fn binom_param(a: &ParamScalar, m: u32) -> ParamScalar {
    let mut f = int(1);
    for i in 2..=m {
        f *= int(i as i64);
    }
    (a - &ParamScalar::int(m as i64 - 1)).pochhammer(m).scale(&f.recip())
}

/// `s^m P_m^(alpha, beta)(2x/s - 1)` from the binomial form of the Jacobi
/// polynomial, `sum_t C(m + alpha, m - t) C(m + beta, t) (x - s)^t x^(m - t)`.
pub fn homogenized_jacobi(m: u32, alpha: &ParamScalar, beta: &ParamScalar, x: &LaurentPoly, s: &LaurentPoly) -> LaurentPoly {
    let ma = alpha + &ParamScalar::int(m as i64);
    let mb = beta + &ParamScalar::int(m as i64);
    let diff = x - s;
    let mut out = LaurentPoly::zero(x.vars());
    for t in 0..=m {
        let c = &binom_param(&ma, m - t) * &binom_param(&mb, t);
        out = &out + &(&diff.pow(t) * &x.pow(m - t)).scale(&c);
    }
    out
}

/// Restriction of the permuted BG basis element to `x1 + ... + xn = 1`
/// and the product of Jacobi factors it is compared with.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperplaneFactorization {
    pub label: BasisLabel,
    pub restricted: LaurentPoly,
    pub product: LaurentPoly,
    pub constant: ParamScalar,
}

/// Parameters `(alpha_k, beta_k)` of the `k`-th factor on the hyperplane.
pub fn hyperplane_parameters(label: &BasisLabel, k: usize) -> (ParamScalar, ParamScalar) {
    let n = label.n();
    let two = int(2);
    let js: u32 = label.j[k..].iter().sum();
    let nus = (k + 1..=n).fold(ParamScalar::zero(), |acc, l| &acc + &ParamScalar::nu(l));
    let alpha = &ParamScalar::int(2 * js as i64 - 1) + &nus.scale(&two);
    let beta = &ParamScalar::nu(k).scale(&two) - &ParamScalar::one();
    (alpha, beta)
}

pub fn hyperplane_eigenfunctions(label: &BasisLabel) -> Result<HyperplaneFactorization> {
    let n = label.n();
    if n < 2 {
        return Err(Error::InvalidArgument("the hyperplane restriction needs n >= 2".into()));
    }
    let psi = basis_element(label, ModelKind::BarutGirardello, BasisOrder::Permuted)?;
    let target = model_vars(n - 1);
    let mut rest = LaurentPoly::one(&target);
    for i in 0..n - 1 {
        rest = &rest - &LaurentPoly::var(&target, i);
    }
    let images = BTreeMap::from([(format!("x{n}"), rest)]);
    let restricted = psi.substitute_affine(&target, &images)?;

    let mut product = LaurentPoly::one(&target);
    let mut s = LaurentPoly::one(&target);
    for k in 1..n {
        let (alpha, beta) = hyperplane_parameters(label, k);
        let x = LaurentPoly::var(&target, k - 1);
        product = &product * &homogenized_jacobi(label.j[k - 1], &alpha, &beta, &x, &s);
        s = &s - &x;
    }
    let constant = restricted.proportionality(&product).ok_or(Error::NotFactorizable)?;
    Ok(HyperplaneFactorization { label: label.clone(), restricted, product, constant })
}

/// Factorization on the hyperplane for every label of degree `k`, constants recorded.
pub fn verify_hyperplane(n: usize, k: u32) -> Result<VerificationReport> {
    let labels = BasisLabel::all(n, k);
    let results: Vec<_> = labels.par_iter().map(hyperplane_eigenfunctions).collect();
    let mut r = VerificationReport::new("hyperplane Jacobi factorization", n, Some(ModelKind::BarutGirardello));
    r.record("k", k);
    for (label, res) in labels.iter().zip(results) {
        match res {
            Ok(f) => {
                r.push(IdentityCheck::polys(format!("restricted psi~{label} = c prod P"), f.restricted, f.product.scale(&f.constant)));
                r.record(format!("c{label}"), f.constant);
            }
            Err(Error::NotFactorizable) => {
                r.push(IdentityCheck::condition(format!("restricted psi~{label} factors"), 0, 1));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(r)
}

/// `b_i` at a numeric value of `nu_i`.
pub fn potential_coefficient_at(i: usize, nu: &Rational) -> Result<Rational> {
    let values = std::collections::HashMap::from([(crate::exact::Param::Nu(i), nu.clone())]);
    potential_coefficient(i).evaluate(&values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::grammar::{parse_op, parse_poly};

    #[test]
    fn laplace_of_monomials() {
        let v = model_vars(1);
        assert_eq!(laplace_poly(&LaurentPoly::one(&v)).unwrap(), LaurentPoly::one(&v));
        assert_eq!(laplace_poly(&parse_poly("x1", &v).unwrap()).unwrap(), parse_poly("2 nu1 x1", &v).unwrap());
        assert_eq!(laplace_poly(&parse_poly("x1^2", &v).unwrap()).unwrap(), parse_poly("2 nu1 (2 nu1 + 1) x1^2", &v).unwrap());
        assert!(matches!(laplace_poly(&parse_poly("x1^-1", &v).unwrap()), Err(Error::NegativeExponent)));
    }

    #[test]
    fn intertwines_small_degree() {
        assert!(verify_intertwine(2, 3).unwrap().pass());
    }

    #[test]
    fn n2_basis_constant() {
        let label = BasisLabel::new(2, vec![1]).unwrap();
        assert_eq!(laplace_constant(&label).unwrap().to_string(), "2 nu1");
        let zero = BasisLabel::new(3, vec![0, 0]).unwrap();
        assert!(laplace_constant(&zero).unwrap().is_one());
    }

    #[test]
    fn miller_single_variable() {
        let (_, h, r) = miller_reduce(1).unwrap();
        assert!(r.pass(), "{r}");
        let expected = parse_op("d1^2 - ((2 nu1 - 1)^2 - 1/4) z1^-2", &z_vars(1)).unwrap();
        assert_eq!(h, expected);
    }

    #[test]
    fn potential_vanishes_at_three_quarters() {
        assert_eq!(potential_coefficient_at(1, &rat(3, 4)).unwrap(), rat(0, 1));
        assert_eq!(potential_coefficient_at(2, &rat(1, 2)).unwrap(), rat(-1, 4));
    }

    #[test]
    fn sphere_identity_small() {
        for n in 2..=3 {
            assert!(sphere_identity_check(n).unwrap().pass());
        }
    }

    #[test]
    fn angular_part_on_harmonic() {
        // z1 z2 is harmonic of degree 2 in three variables: eigenvalue -k(k+n-2) = -6
        let z = z_vars(3);
        let p = parse_poly("z1 z2", &z).unwrap();
        assert_eq!(angular_operator(3).apply(&p), p.scale(&ParamScalar::int(-6)));
    }

    #[test]
    fn hyperplane_small() {
        let f = hyperplane_eigenfunctions(&BasisLabel::new(2, vec![1]).unwrap()).unwrap();
        assert_eq!(f.restricted.vars().len(), 1);
        let zero = hyperplane_eigenfunctions(&BasisLabel::new(3, vec![0, 0]).unwrap()).unwrap();
        assert_eq!(zero.restricted, LaurentPoly::one(&model_vars(2)));
        assert!(zero.constant.is_one());
    }
}
