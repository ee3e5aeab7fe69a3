//! Realization of the Racah algebra on polynomials of degree at most `k` in
//! the `n - 2` variables `u_j = (x_(j+2) - x_(j+1)) / (x1 - x2)`.
//!
//! The printed operators are compared with the Bargmann Casimirs through
//! their matrices on the basis `(x1 - x2)^k u^a` of `H_k`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{int, monomials_of_degree, Exponent, LaurentPoly, Param, ParamScalar, Rational, ScalarMatrix, Vars};
use crate::harmonics::{coords, index_of, nu_sum, u_vars};
use crate::racah::{commuting_pairs, SubsetTriple};
use crate::report::{IdentityCheck, VerificationReport};
use crate::su11::{casimir, model_vars, ModelKind, Subset};
use crate::weyl::WeylOp;

/// Exponent vector `a` of the basis element `u^a`, `|a| <= k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UBasisElement {
    pub a: Vec<u32>,
}

impl UBasisElement {
    pub fn degree(&self) -> u32 {
        self.a.iter().sum()
    }

    /// Number of ambient variables, `n = len(a) + 2`.
    pub fn n(&self) -> usize {
        self.a.len() + 2
    }

    pub fn monomial(&self) -> LaurentPoly {
        let vars = u_vars(self.a.len());
        LaurentPoly::monomial(&vars, Exponent(self.a.iter().map(|&e| e as i32).collect()), ParamScalar::one())
    }

    /// `(x1 - x2)^(k - |a|) (x3 - x2)^a1 (x4 - x3)^a2 ... (xn - x(n-1))^a(n-2)`.
    pub fn x_realization(&self, k: u32) -> Result<LaurentPoly> {
        let d = self.degree();
        if d > k {
            return Err(Error::InvalidArgument(format!("|a| = {d} exceeds k = {k}")));
        }
        let n = self.n();
        let vars = model_vars(n);
        let x = |i: usize| LaurentPoly::var(&vars, i - 1);
        let mut p = (&x(1) - &x(2)).pow(k - d);
        for (j, &e) in self.a.iter().enumerate() {
            p = &p * &(&x(j + 3) - &x(j + 2)).pow(e);
        }
        Ok(p)
    }
}

/// Basis of `Pi_k^(n-2)`, ordered by total degree and then descending lexicographically.
pub fn u_basis(n: usize, k: u32) -> Result<Vec<UBasisElement>> {
    if n < 2 {
        return Err(Error::InvalidArgument("the reduced realization needs n >= 2".into()));
    }
    let mut out = Vec::new();
    for d in 0..=k {
        for e in monomials_of_degree(n - 2, d) {
            out.push(UBasisElement { a: e.0.iter().map(|&v| v as u32).collect() });
        }
    }
    Ok(out)
}

/// Builder for the printed operators in `u1..u(n-2)`.
struct UOps {
    n: usize,
    vars: Vars,
}

impl UOps {
    fn new(n: usize) -> Self {
        UOps { n, vars: u_vars(n - 2) }
    }

    fn scalar(&self, c: ParamScalar) -> WeylOp {
        WeylOp::scalar(&self.vars, c)
    }

    /// `d/du_m`, zero for `m = n - 1` since `u_(n-1) = 0`.
    fn du(&self, m: usize) -> WeylOp {
        if m == self.n - 1 {
            WeylOp::zero(&self.vars)
        } else {
            WeylOp::d(&self.vars, m - 1)
        }
    }

    /// `sum_l u_l d/du_l`.
    fn euler(&self) -> WeylOp {
        (1..=self.n - 2).fold(WeylOp::zero(&self.vars), |acc, l| &acc + &(&WeylOp::x(&self.vars, l - 1) * &self.du(l)))
    }

    /// `d/du_(m-2) - d/du_(m-1)`.
    fn diff(&self, m: usize) -> WeylOp {
        &self.du(m - 2) - &self.du(m - 1)
    }

    /// Multiplication by `u_from + ... + u_to`.
    fn window(&self, from: usize, to: usize) -> WeylOp {
        let s = (from..=to).fold(LaurentPoly::zero(&self.vars), |acc, l| &acc + &LaurentPoly::var(&self.vars, l - 1));
        WeylOp::multiplication(&s)
    }

    fn k(&self) -> WeylOp {
        self.scalar(ParamScalar::param(Param::K))
    }

    fn int(&self, v: i64) -> WeylOp {
        self.scalar(ParamScalar::int(v))
    }

    fn nu(&self, i: usize, c: i64) -> WeylOp {
        self.scalar(ParamScalar::nu(i).scale(&int(c)))
    }
}

fn pair_constant(i: usize, j: usize) -> ParamScalar {
    let s = &ParamScalar::nu(i) + &ParamScalar::nu(j);
    &s * &(&s - &ParamScalar::one())
}

/// The printed operator `C~_B` for a singleton or a pair, symbolic in `k` and the `nu`'s.
pub fn printed_tilde(n: usize, b: &Subset) -> Result<WeylOp> {
    if n < 2 {
        return Err(Error::InvalidArgument("the reduced realization needs n >= 2".into()));
    }
    if b.max() > n {
        return Err(Error::IndexOutOfRange { index: b.max(), n });
    }
    let o = UOps::new(n);
    let idx = b.indices();
    if idx.len() == 1 {
        let i = idx[0];
        return Ok(o.scalar(&ParamScalar::nu(i) * &(&ParamScalar::nu(i) - &ParamScalar::one())));
    }
    if idx.len() != 2 {
        return Err(Error::InvalidArgument(format!("printed formulas cover singletons and pairs, got {b}")));
    }
    let (p, q) = (idx[0], idx[1]);
    let e = o.euler();
    let d1 = o.du(1);
    let op = match (p, q) {
        (1, 2) => {
            // -(k-1-E)(-k-d1+E) + 2nu2(k-E) - 2nu1(-k-d1+E)
            let a = &(&o.k() - &o.int(1)) - &e;
            let b = &(&(-&o.k()) - &d1) + &e;
            let t1 = -&(&a * &b);
            let t2 = &o.nu(2, 2) * &(&o.k() - &e);
            let t3 = &o.nu(1, 2) * &b;
            &(&t1 + &t2) - &t3
        }
        (1, j) => {
            let w = &o.int(1) - &o.window(1, j - 2);
            let dj = o.diff(j);
            let t1 = -&(&(&(&w * &w) * &(&(&o.k() - &o.int(1)) - &e)) * &dj);
            let t2 = &(&o.nu(j, 2) * &w) * &(&o.k() - &e);
            let t3 = &(&o.nu(1, 2) * &w) * &dj;
            &(&t1 + &t2) - &t3
        }
        (2, j) => {
            let w = o.window(1, j - 2);
            let dj = o.diff(j);
            let inner = &(&(&o.int(1) - &o.k()) - &d1) + &e;
            let t1 = -&(&(&(&w * &w) * &inner) * &dj);
            let t2 = &(&o.nu(j, 2) * &w) * &(&(&o.k() + &d1) - &e);
            let t3 = &(&o.nu(2, 2) * &w) * &dj;
            &(&t1 + &t2) + &t3
        }
        (j, i) => {
            // i > j >= 3
            let w = o.window(j - 1, i - 2);
            let (di, dj) = (o.diff(i), o.diff(j));
            let t1 = -&(&(&(&w * &w) * &di) * &dj);
            let t2 = &(&o.nu(j, 2) * &w) * &di;
            let t3 = &(&o.nu(i, 2) * &w) * &dj;
            &(&t1 + &t2) - &t3
        }
    };
    Ok(&op + &o.scalar(pair_constant(p, q)))
}

/// Matrix of a `u`-operator on `Pi_k^(n-2)` with `k` specialized, columns
/// indexed by [`u_basis`]. The flag is false when some image leaves `Pi_k`.
pub fn tilde_matrix(op: &WeylOp, n: usize, k: u32) -> Result<(ScalarMatrix, bool)> {
    let basis = u_basis(n, k)?;
    let exps: Vec<Exponent> = basis.iter().map(|b| Exponent(b.a.iter().map(|&e| e as i32).collect())).collect();
    let index = index_of(&exps);
    let values = HashMap::from([(Param::K, Rational::from_integer((k as i64).into()))]);
    let op = op.substitute_params(&values)?;
    let mut preserved = true;
    let mut cols = Vec::with_capacity(basis.len());
    for b in &basis {
        let image = op.apply(&b.monomial());
        let (inside, outside): (Vec<_>, Vec<_>) = image.terms().partition(|(e, _)| index.contains_key(*e));
        if !outside.is_empty() {
            preserved = false;
        }
        let kept = LaurentPoly::from_terms(image.vars(), inside.into_iter().map(|(e, c)| (e.clone(), c.clone())));
        cols.push(coords(&kept, &index)?);
    }
    Ok((ScalarMatrix::from_columns(cols)?, preserved))
}

/// Matrix of the Bargmann `C_B` on `H_k` in the basis of [`UBasisElement`]
/// realizations, found by an exact linear solve on monomial coefficients.
pub fn gauged_action_matrix(n: usize, k: u32, b: &Subset) -> Result<ScalarMatrix> {
    let basis = u_basis(n, k)?;
    let realized = basis.iter().map(|e| e.x_realization(k)).collect::<Result<Vec<_>>>()?;
    let c = casimir(n, b, ModelKind::Bargmann)?;
    let images: Vec<LaurentPoly> = realized.par_iter().map(|p| c.apply(p)).collect();
    let monos = monomials_of_degree(n, k);
    let index = index_of(&monos);
    let phi = ScalarMatrix::from_columns(realized.iter().map(|p| coords(p, &index)).collect::<Result<Vec<_>>>()?)?;
    let rhs = ScalarMatrix::from_columns(images.iter().map(|p| coords(p, &index)).collect::<Result<Vec<_>>>()?)?;
    phi.solve(&rhs)
}

/// Printed `C~_B` against the gauged Casimir on `Pi_k^(n-2)`, entrywise.
pub fn verify_reduced(n: usize, k: u32, b: &Subset) -> Result<VerificationReport> {
    let printed = printed_tilde(n, b)?;
    let (m, preserved) = tilde_matrix(&printed, n, k)?;
    let g = gauged_action_matrix(n, k, b)?;
    let mut r = VerificationReport::new("reduced realization", n, Some(ModelKind::Bargmann)).with_subsets([b]);
    r.record("k", k);
    r.push(IdentityCheck::condition(format!("C~{b} preserves degree <= {k}"), preserved as i64, 1));
    r.push(IdentityCheck::matrices(format!("printed C~{b} = gauged C{b}"), m, g));
    Ok(r)
}

/// All two-element subsets of `{1..n}`.
pub fn all_pairs(n: usize) -> Vec<Subset> {
    Subset::all(n).into_iter().filter(|s| s.len() == 2).collect()
}

pub fn verify_reduced_pairs(n: usize, k: u32, pairs: &[Subset]) -> Result<Vec<VerificationReport>> {
    pairs.par_iter().map(|b| verify_reduced(n, k, b)).collect()
}

/// Matrices of `C~_A` for every subset, built from the printed pair and
/// singleton operators through `C_A = sum C_ij - (|A|-2) sum C_i`.
pub fn printed_matrices(n: usize, k: u32) -> Result<HashMap<Subset, ScalarMatrix>> {
    let small: Vec<Subset> = Subset::all(n).into_iter().filter(|s| s.len() <= 2).collect();
    let mats =
        small.par_iter().map(|s| Ok((s.clone(), tilde_matrix(&printed_tilde(n, s)?, n, k)?.0))).collect::<Result<HashMap<_, _>>>()?;
    let mut out = mats.clone();
    for a in Subset::all(n).into_iter().filter(|s| s.len() > 2) {
        let idx = a.indices();
        let dim = mats[&Subset::singleton(1)].rows();
        let mut acc = ScalarMatrix::zeros(dim, dim);
        for (p, &i) in idx.iter().enumerate() {
            for &j in &idx[p + 1..] {
                acc = &acc + &mats[&Subset::new(n, [i, j])?];
            }
        }
        let w = ParamScalar::int(-(a.len() as i64 - 2));
        for &i in idx {
            acc = &acc + &mats[&Subset::singleton(i)].scale(&w);
        }
        out.insert(a, acc);
    }
    Ok(out)
}

/// The Racah relations for the printed operators as matrices on `Pi_k^(n-2)`:
/// commutation of nested or disjoint pairs, the rank-one relations for every
/// disjoint triple, and `C~_[n] = (k + |nu|)(k + |nu| - 1)`.
pub fn verify_reduced_racah(n: usize, k: u32) -> Result<VerificationReport> {
    if n < 3 {
        return Err(Error::InvalidArgument("the Racah relations need n >= 3".into()));
    }
    let m = printed_matrices(n, k)?;
    let c = |s: &Subset| &m[s];
    let dim = c(&Subset::singleton(1)).rows();
    let mut r = VerificationReport::new("reduced Racah relations", n, Some(ModelKind::Bargmann));
    r.record("k", k);

    let s = &nu_sum(n) + &ParamScalar::int(k as i64);
    let total = &s * &(&s - &ParamScalar::one());
    r.push(IdentityCheck::matrices(
        format!("C~[{n}] = (k + |nu|)(k + |nu| - 1)"),
        c(&Subset::range(n)).clone(),
        ScalarMatrix::scalar(dim, total),
    ));

    let pairs = commuting_pairs(n);
    let checks: Vec<IdentityCheck> = pairs
        .par_iter()
        .map(|(a, b)| {
            let comm = c(a).commutator(c(b)).expect("square matrices");
            IdentityCheck::matrices(format!("[C~{a}, C~{b}] = 0"), comm, ScalarMatrix::zeros(dim, dim))
        })
        .collect();
    checks.into_iter().for_each(|ch| r.push(ch));

    let triples = SubsetTriple::all(n);
    let checks: Vec<Vec<IdentityCheck>> = triples.par_iter().map(|t| rank1_matrix_checks(t, &c)).collect();
    checks.into_iter().flatten().for_each(|ch| r.push(ch));
    Ok(r)
}

fn rank1_matrix_checks<'a, F>(t: &SubsetTriple, c: &F) -> Vec<IdentityCheck>
where
    F: Fn(&Subset) -> &'a ScalarMatrix,
{
    let (kl, lm, km) = (t.k.union(&t.l), t.l.union(&t.m), t.k.union(&t.m));
    let klm = kl.union(&t.m);
    let (c_kl, c_lm, c_km) = (c(&kl), c(&lm), c(&km));
    let (c_k, c_l, c_m, c_klm) = (c(&t.k), c(&t.l), c(&t.m), c(&klm));
    let comm = |a: &ScalarMatrix, b: &ScalarMatrix| a.commutator(b).expect("square matrices");
    let half = ParamScalar::ratio(1, 2);
    let f = comm(c_kl, c_lm).scale(&half);
    let [a, b, cc] = t.labels();
    let tag = format!("{a} {b} {cc}");
    let mut out = vec![
        IdentityCheck::matrices(format!("{tag}: [C~KL, C~LM] = [C~KM, C~KL]"), comm(c_kl, c_lm), comm(c_km, c_kl)),
        IdentityCheck::matrices(format!("{tag}: [C~KL, C~LM] = [C~LM, C~KM]"), comm(c_kl, c_lm), comm(c_lm, c_km)),
    ];
    let rhs = &(&(c_lm * c_kl) - &(c_kl * c_km)) + &(&(c_l - c_k) * &(c_m - c_klm));
    out.push(IdentityCheck::matrices(format!("{tag}: [C~KL, F]"), comm(c_kl, &f), rhs));
    let rhs = &(&(c_km * c_lm) - &(c_lm * c_kl)) + &(&(c_m - c_l) * &(c_k - c_klm));
    out.push(IdentityCheck::matrices(format!("{tag}: [C~LM, F]"), comm(c_lm, &f), rhs));
    let rhs = &(&(c_kl * c_km) - &(c_km * c_lm)) + &(&(c_k - c_m) * &(c_l - c_klm));
    out.push(IdentityCheck::matrices(format!("{tag}: [C~KM, F]"), comm(c_km, &f), rhs));
    out
}

/// Matrices of `C~_A` for `|A| >= 3` built from the printed pairs against the
/// gauged Casimirs themselves.
pub fn verify_reduced_expansion(n: usize, k: u32) -> Result<VerificationReport> {
    let m = printed_matrices(n, k)?;
    let big: Vec<Subset> = Subset::all(n).into_iter().filter(|s| s.len() > 2).collect();
    let checks = big
        .par_iter()
        .map(|a| Ok(IdentityCheck::matrices(format!("C~{a} = gauged C{a}"), m[a].clone(), gauged_action_matrix(n, k, a)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut r = VerificationReport::new("reduced linear expansion", n, Some(ModelKind::Bargmann));
    r.record("k", k);
    checks.into_iter().for_each(|ch| r.push(ch));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_scalar;

    fn pair(n: usize, a: usize, b: usize) -> Subset {
        Subset::new(n, [a, b]).unwrap()
    }

    #[test]
    fn basis_counts_and_realization() {
        assert_eq!(u_basis(4, 3).unwrap().len(), 10);
        let e = UBasisElement { a: vec![1, 0] };
        let vars = model_vars(4);
        let expected = crate::grammar::parse_poly("(x1 - x2)(x3 - x2)", &vars).unwrap();
        assert_eq!(e.x_realization(2).unwrap(), expected);
    }

    #[test]
    fn c12_on_constant_is_top_eigenvalue() {
        let op = printed_tilde(3, &pair(3, 1, 2)).unwrap();
        let one = LaurentPoly::one(&u_vars(1));
        let image = op.apply(&one);
        let expected = parse_scalar("(k + nu1 + nu2)(k + nu1 + nu2 - 1)").unwrap();
        assert_eq!(image, LaurentPoly::constant(&u_vars(1), expected));
    }

    #[test]
    fn singleton_is_central_constant() {
        let g = gauged_action_matrix(3, 2, &Subset::singleton(2)).unwrap();
        let c = parse_scalar("nu2 (nu2 - 1)").unwrap();
        assert_eq!(g, ScalarMatrix::scalar(g.rows(), c));
    }

    #[test]
    fn gauged_trace_matches_eigenvalues() {
        let g = gauged_action_matrix(3, 1, &pair(3, 1, 2)).unwrap();
        assert_eq!(g.rows(), 2);
        let expected = parse_scalar("(nu1 + nu2)(nu1 + nu2 - 1) + (1 + nu1 + nu2)(nu1 + nu2)").unwrap();
        assert_eq!(g.trace(), expected);
    }

    #[test]
    fn full_set_is_scalar() {
        let g = gauged_action_matrix(4, 2, &Subset::range(4)).unwrap();
        let c = parse_scalar("(2 + nu1 + nu2 + nu3 + nu4)(1 + nu1 + nu2 + nu3 + nu4)").unwrap();
        assert_eq!(g, ScalarMatrix::scalar(g.rows(), c));
    }

    #[test]
    fn n3_pairs_with_third_index() {
        for b in all_pairs(3) {
            for k in 0..=3 {
                let r = verify_reduced(3, k, &b).unwrap();
                assert!(r.pass(), "{r}");
            }
        }
    }

    #[test]
    fn rejects_large_subsets() {
        assert!(printed_tilde(4, &Subset::range(3)).is_err());
    }
}
