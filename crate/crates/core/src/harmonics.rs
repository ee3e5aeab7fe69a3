//! Harmonic polynomials of the two models: CK extensions, Fischer
//! decomposition, the chain bases and their explicit forms.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{int, monomials_of_degree, Exponent, LaurentPoly, Param, ParamPoly, ParamScalar, Rational, ScalarMatrix, Vars};
use crate::report::{IdentityCheck, VerificationReport};
use crate::su11::{make_realization, model_vars, ModelKind, Subset};
use crate::weyl::WeylOp;

/// Composition `(j_1, ..., j_{n-1})` labelling a basis element of degree `sum j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel {
    pub j: Vec<u32>,
}

impl BasisLabel {
    pub fn new(n: usize, j: Vec<u32>) -> Result<Self> {
        if n < 2 || j.len() != n - 1 {
            return Err(Error::InvalidLabel(format!("{j:?} has {} entries, expected n-1 = {}", j.len(), n.saturating_sub(1))));
        }
        Ok(BasisLabel { j })
    }

    pub fn n(&self) -> usize {
        self.j.len() + 1
    }

    pub fn k(&self) -> u32 {
        self.j.iter().sum()
    }

    /// All labels of degree `k`, in descending lexicographic order.
    pub fn all(n: usize, k: u32) -> Vec<BasisLabel> {
        if n < 2 {
            return Vec::new();
        }
        monomials_of_degree(n - 1, k).into_iter().map(|e| BasisLabel { j: e.0.iter().map(|&v| v as u32).collect() }).collect()
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.j.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Order in which the CK extensions of a basis element are taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisOrder {
    /// Variables `x1, x2, ..., xn`.
    Standard,
    /// Variables `xn, x(n-1), ..., x1`.
    Permuted,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FischerDecomposition {
    pub k: u32,
    /// `(j, h_{k-j})` with `p = sum_j raising^j h_{k-j}`.
    pub components: Vec<(u32, LaurentPoly)>,
}

impl FischerDecomposition {
    pub fn reconstruct(&self, kind: ModelKind) -> Result<LaurentPoly> {
        let Some((_, first)) = self.components.first() else {
            return Err(Error::InvalidArgument("empty decomposition".into()));
        };
        let n = first.vars().len();
        let raise = total(n, kind)?.plus;
        // Sum over the lcm of the component denominators, divide once at the end.
        let mut parts = Vec::new();
        let mut lcm = ParamPoly::one();
        for (j, h) in &self.components {
            let (mut q, den) = h.clear_denominators();
            for _ in 0..*j {
                q = raise.apply(&q);
            }
            let g = ParamPoly::gcd(&lcm, &den);
            lcm = &lcm * &den.div_exact(&g).expect("gcd divides");
            parts.push((q, den));
        }
        let mut acc = LaurentPoly::zero(first.vars());
        for (q, den) in parts {
            let cofactor = lcm.div_exact(&den).expect("lcm is a multiple");
            acc = &acc + &q.scale(&ParamScalar::from_poly(cofactor));
        }
        acc.map_coeffs(|c| ParamScalar::from_fraction(c.numer().clone(), lcm.clone()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenvalue {
    pub level: usize,
    pub value: ParamScalar,
}

fn total(n: usize, kind: ModelKind) -> Result<crate::su11::RealizationTriple> {
    make_realization(n, &Subset::range(n), kind)
}

/// The model's total lowering operator on `n` variables.
pub fn lowering(n: usize, kind: ModelKind) -> Result<WeylOp> {
    Ok(total(n, kind)?.minus)
}

/// The model's total raising operator on `n` variables.
pub fn raising(n: usize, kind: ModelKind) -> Result<WeylOp> {
    Ok(total(n, kind)?.plus)
}

pub fn is_harmonic(p: &LaurentPoly, kind: ModelKind) -> Result<bool> {
    let n = p.vars().len();
    let q = p.rename(&model_vars(n));
    Ok(lowering(n, kind)?.apply(&q).is_zero())
}

fn require_homogeneous(p: &LaurentPoly) -> Result<u32> {
    p.require_polynomial()?;
    if p.is_zero() {
        return Ok(0);
    }
    p.homogeneous_degree().map(|d| d as u32).ok_or(Error::NotHomogeneous)
}

/// `(2 nu_t)_j` for the BG series, `1` for Bargmann.
fn ck_weight(kind: ModelKind, t: usize, j: u32) -> ParamScalar {
    match kind {
        ModelKind::Bargmann => ParamScalar::one(),
        ModelKind::BarutGirardello => ParamScalar::nu(t).scale(&int(2)).pochhammer(j),
    }
}

/// CK extension of `p` (supported on the variables in `existing`) to the new
/// variable `t`, all indices 1-based in `n` ambient variables:
/// `sum_j (-x_t)^j minus_S^j p / (j! w_j)`.
pub(crate) fn ck_extend_in(p: &LaurentPoly, existing: &Subset, t: usize, kind: ModelKind) -> Result<LaurentPoly> {
    let n = p.vars().len();
    let vars = p.vars().clone();
    let minus = make_realization(n, existing, kind)?.minus;
    let mut acc = p.clone();
    let mut q = p.clone();
    let mut j = 0u32;
    let mut factorial = Rational::from_integer(1.into());
    loop {
        q = minus.apply(&q);
        if q.is_zero() {
            break;
        }
        j += 1;
        factorial *= Rational::from_integer(j.into());
        let sign = if j.is_multiple_of(2) { int(1) } else { int(-1) };
        let c = ck_weight(kind, t, j).scale(&factorial).recip()?.scale(&sign);
        let mut e = Exponent::zero(n);
        e.0[t - 1] = j as i32;
        let xt = LaurentPoly::monomial(&vars, e, c);
        acc = &acc + &(&xt * &q);
    }
    Ok(acc)
}

/// CK extension from `x1..x(n-1)` to `x1..xn` (variables taken positionally).
pub fn ck_extend(p: &LaurentPoly, kind: ModelKind) -> Result<LaurentPoly> {
    require_homogeneous(p)?;
    let m = p.vars().len();
    if m == 0 {
        return p.rename(&model_vars(0)).embed(&model_vars(1));
    }
    let n = m + 1;
    let lifted = p.rename(&model_vars(m)).embed(&model_vars(n))?;
    ck_extend_in(&lifted, &Subset::range(m), n, kind)
}

/// Inverse of [`ck_extend`]: checks harmonicity, then sets `xn = 0`.
pub fn ck_inverse(q: &LaurentPoly, kind: ModelKind) -> Result<LaurentPoly> {
    require_homogeneous(q)?;
    let n = q.vars().len();
    if n == 0 {
        return Err(Error::InvalidArgument("no variable to remove".into()));
    }
    let q = q.rename(&model_vars(n));
    if !lowering(n, kind)?.apply(&q).is_zero() {
        return Err(Error::NotHarmonic);
    }
    Ok(q.restrict_to_zero(n - 1))
}

/// Bargmann CK extension in closed form, `p(x1 - xn, ..., x(n-1) - xn)`.
pub fn ck_translation(p: &LaurentPoly) -> Result<LaurentPoly> {
    let m = p.vars().len();
    let n = m + 1;
    let target = model_vars(n);
    let xn = LaurentPoly::var(&target, m);
    let images: BTreeMap<String, LaurentPoly> = (0..m).map(|i| (format!("x{}", i + 1), &LaurentPoly::var(&target, i) - &xn)).collect();
    p.rename(&model_vars(m)).substitute_affine(&target, &images)
}

/// `j!/(j-l)! (a + j - l)_l` with `a = 2 nu_sum + 2 m`: the factor in
/// `minus^l plus^j h = c plus^(j-l) h` for `h` harmonic of degree `m`.
pub fn ladder_coeff(j: u32, m: u32, l: u32, nu_sum: &ParamScalar) -> Result<ParamScalar> {
    if l > j {
        return Err(Error::InvalidArgument(format!("l = {l} exceeds j = {j}")));
    }
    let ff: i64 = (0..l).map(|t| (j - t) as i64).product();
    let base = &nu_sum.scale(&int(2)) + &ParamScalar::int(2 * m as i64 + j as i64 - l as i64);
    Ok(base.pochhammer(l).scale(&int(ff)))
}

/// `sum_{i <= p} nu_i`.
pub fn nu_sum(p: usize) -> ParamScalar {
    (1..=p).fold(ParamScalar::zero(), |acc, i| &acc + &ParamScalar::nu(i))
}

/// Ladder coefficient with `|nu|_p`; `m` is the degree of the harmonic.
pub fn suind_coeff(j: u32, m: u32, l: u32, p: usize) -> Result<ParamScalar> {
    ladder_coeff(j, m, l, &nu_sum(p))
}

/// Fischer decomposition by downward induction with the ladder coefficients.
pub fn fischer_decompose(p: &LaurentPoly, kind: ModelKind) -> Result<FischerDecomposition> {
    let k = require_homogeneous(p)?;
    let n = p.vars().len();
    let vars = model_vars(n);
    let p = p.rename(&vars);
    let t = total(n, kind)?;
    let nus = nu_sum(n);
    // h_{k-j} = pi(minus^j p) / c(j, k-j, j), where the harmonic projection on
    // degree d is pi = sum_l a_l plus^l minus^l with
    // a_l = (-1)^l / (l! (2|nu| + 2d - l - 1)_l).
    // The a_l denominators are nested, so everything is put over the last one
    // and reduced by trial division against its linear factors.
    let (num, den) = p.clear_denominators();
    let den = ParamScalar::from_poly(den);
    let mut lowered = vec![num];
    for i in 0..k {
        lowered.push(t.minus.apply(&lowered[i as usize]));
    }
    let two_nus = nus.scale(&int(2));
    let linear = |c: i64| (&two_nus + &ParamScalar::int(c)).numer().clone();
    let mut found: BTreeMap<u32, LaurentPoly> = BTreeMap::new();
    for j in 0..=k {
        let d = (k - j) as i64;
        // factors of the last denominator: 2|nu| + 2d - 1 - r for r = 1..=d
        let mut acc = LaurentPoly::zero(&vars);
        for l in 0..=d {
            let mut term = lowered[(j as i64 + l) as usize].clone();
            for _ in 0..l {
                term = t.plus.apply(&term);
            }
            let mut c = ParamPoly::constant(int(if l % 2 == 0 { 1 } else { -1 } * ((l + 1)..=d).product::<i64>()));
            for r in (l + 1)..=d {
                c = &c * &linear(2 * d - 1 - r);
            }
            acc = &acc + &term.scale(&ParamScalar::from_poly(c));
        }
        let mut fs = vec![ParamPoly::constant(int((1..=d).product()))];
        fs.extend((1..=d).map(|r| linear(2 * d - 1 - r)));
        fs.push(ParamPoly::constant(int((1..=j as i64).product())));
        fs.extend((0..j as i64).map(|s| linear(2 * d + s)));
        let h = if den.is_one() {
            acc.map_coeffs(|c| ParamScalar::from_factored(c.numer().clone(), &fs))?
        } else {
            let total = fs.iter().fold(den.clone(), |a, f| &a * &ParamScalar::from_poly(f.clone()));
            acc.scale(&total.recip()?)
        };
        found.insert(j, h);
    }
    Ok(FischerDecomposition { k, components: found.into_iter().collect() })
}

/// Index of each monomial in a basis list.
pub(crate) fn index_of(basis: &[Exponent]) -> HashMap<Exponent, usize> {
    basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect()
}

/// Coordinates of `p` in the monomial list; errors if `p` leaves the span.
pub(crate) fn coords(p: &LaurentPoly, index: &HashMap<Exponent, usize>) -> Result<Vec<ParamScalar>> {
    let mut v = vec![ParamScalar::zero(); index.len()];
    for (e, c) in p.terms() {
        let i = *index.get(e).ok_or_else(|| Error::Dimension(format!("monomial {:?} outside basis", e.0)))?;
        v[i] = c.clone();
    }
    Ok(v)
}

/// Fischer decomposition as one square linear system on monomial coefficients:
/// `sum_j plus^j h_{k-j} = p` together with `minus h_{k-j} = 0`.
pub fn fischer_decompose_linear(p: &LaurentPoly, kind: ModelKind) -> Result<FischerDecomposition> {
    let k = require_homogeneous(p)?;
    let n = p.vars().len();
    let vars = model_vars(n);
    let p = p.rename(&vars);
    let t = total(n, kind)?;
    let top = monomials_of_degree(n, k);
    let top_idx = index_of(&top);
    // row blocks: P_k, then P_{m-1} for every component degree m >= 1
    let mut row_offset = vec![top.len()];
    let mut lower_idx = Vec::new();
    for j in 0..=k {
        let m = k - j;
        let b = if m >= 1 { monomials_of_degree(n, m - 1) } else { Vec::new() };
        let last = *row_offset.last().expect("offset");
        row_offset.push(last + b.len());
        lower_idx.push(index_of(&b));
    }
    let rows = *row_offset.last().expect("offset");
    let mut columns = Vec::new();
    let mut col_meta = Vec::new();
    for j in 0..=k {
        for e in monomials_of_degree(n, k - j) {
            let mono = LaurentPoly::monomial(&vars, e.clone(), ParamScalar::one());
            let mut raised = mono.clone();
            for _ in 0..j {
                raised = t.plus.apply(&raised);
            }
            let mut col = vec![ParamScalar::zero(); rows];
            for (i, c) in coords(&raised, &top_idx)?.into_iter().enumerate() {
                col[i] = c;
            }
            let off = row_offset[j as usize];
            for (i, c) in coords(&t.minus.apply(&mono), &lower_idx[j as usize])?.into_iter().enumerate() {
                col[off + i] = c;
            }
            columns.push(col);
            col_meta.push((j, e));
        }
    }
    let a = ScalarMatrix::from_columns(columns)?;
    let mut rhs = vec![ParamScalar::zero(); rows];
    for (i, c) in coords(&p, &top_idx)?.into_iter().enumerate() {
        rhs[i] = c;
    }
    let x = a.solve(&ScalarMatrix::from_columns(vec![rhs])?)?;
    let mut comps: BTreeMap<u32, LaurentPoly> = (0..=k).map(|j| (j, LaurentPoly::zero(&vars))).collect();
    for (idx, (j, e)) in col_meta.into_iter().enumerate() {
        let c = x.get(idx, 0).clone();
        let entry = comps.get_mut(&j).expect("component");
        *entry = &*entry + &LaurentPoly::monomial(&vars, e, c);
    }
    Ok(FischerDecomposition { k, components: comps.into_iter().collect() })
}

fn order_sequence(n: usize, order: BasisOrder) -> Vec<usize> {
    match order {
        BasisOrder::Standard => (1..=n).collect(),
        BasisOrder::Permuted => (1..=n).rev().collect(),
    }
}

/// One chain basis element: alternate raising powers and CK extensions along
/// the variable order, starting from a power of the first variable.
pub fn basis_element(label: &BasisLabel, kind: ModelKind, order: BasisOrder) -> Result<LaurentPoly> {
    let n = label.n();
    let vars = model_vars(n);
    let sigma = order_sequence(n, order);
    let js: Vec<u32> = match order {
        BasisOrder::Standard => label.j.clone(),
        BasisOrder::Permuted => label.j.iter().rev().copied().collect(),
    };
    let mut e = Exponent::zero(n);
    e.0[sigma[0] - 1] = js[0] as i32;
    let mut p = LaurentPoly::monomial(&vars, e, ParamScalar::one());
    for m in 2..=n {
        let existing = Subset::new(n, sigma[..m - 1].iter().copied())?;
        if m >= 3 && js[m - 2] > 0 {
            let plus = make_realization(n, &existing, kind)?.plus;
            for _ in 0..js[m - 2] {
                p = plus.apply(&p);
            }
        }
        p = ck_extend_in(&p, &existing, sigma[m - 1], kind)?;
    }
    Ok(p)
}

/// All basis elements of degree `k`, labels in descending lexicographic order.
pub fn build_basis(n: usize, k: u32, kind: ModelKind, order: BasisOrder) -> Result<Vec<(BasisLabel, LaurentPoly)>> {
    if n < 2 {
        return Err(Error::InvalidArgument("a basis needs n >= 2".into()));
    }
    BasisLabel::all(n, k).into_par_iter().map(|l| basis_element(&l, kind, order).map(|p| (l, p))).collect()
}

/// Eigenvalue of `C_[l]` on the basis element with this label.
pub fn eigenvalue_lambda(label: &BasisLabel, level: usize) -> Result<Eigenvalue> {
    let n = label.n();
    if level < 2 || level > n {
        return Err(Error::IndexOutOfRange { index: level, n });
    }
    let js: u32 = label.j[..level - 1].iter().sum();
    let s = &ParamScalar::int(js as i64) + &nu_sum(level);
    let value = &s * &(&s - &ParamScalar::one());
    Ok(Eigenvalue { level, value })
}

/// `C_[l] psi = lambda psi` for every label of degree `k` and every level.
pub fn verify_diagonal(n: usize, k: u32, kind: ModelKind) -> Result<VerificationReport> {
    let basis = build_basis(n, k, kind, BasisOrder::Standard)?;
    let casimirs: Vec<WeylOp> = (2..=n).map(|l| Ok(make_realization(n, &Subset::range(l), kind)?.casimir())).collect::<Result<_>>()?;
    let casimirs = &casimirs;
    let checks: Vec<IdentityCheck> = basis
        .par_iter()
        .flat_map_iter(|(label, psi)| {
            (2..=n).map(move |l| {
                let lambda = eigenvalue_lambda(label, l).expect("level in range").value;
                IdentityCheck::polys(format!("C[{l}] psi{label}"), casimirs[l - 2].apply(psi), psi.scale(&lambda))
            })
        })
        .collect();
    let mut r = VerificationReport::new(format!("diagonal action, k={k}"), n, Some(kind));
    r.checks = checks;
    Ok(r)
}

/// A point at which no parameter polynomial used here vanishes by accident.
fn generic_point() -> HashMap<Param, Rational> {
    let primes = [7i64, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    let mut m = HashMap::new();
    m.insert(Param::K, Rational::new(53.into(), 59.into()));
    for (i, p) in primes.iter().enumerate() {
        m.insert(Param::Nu(i + 1), Rational::new((*p).into(), (100 + 3 * i as i64).into()));
    }
    m
}

/// Rank over the rational functions in the parameters. A full rank at a
/// specialization already proves full generic rank; otherwise eliminate
/// symbolically.
pub fn generic_rank(m: &ScalarMatrix) -> usize {
    let full = m.rows().min(m.cols());
    if let Ok(at) = m.evaluate_params(&generic_point()) {
        if at.rank() == full {
            return full;
        }
    }
    m.rank()
}

/// Matrix of the total lowering operator from `P_k` to `P_{k-1}` on monomials.
pub fn lowering_matrix(n: usize, k: u32, kind: ModelKind) -> Result<ScalarMatrix> {
    let vars = model_vars(n);
    let minus = lowering(n, kind)?;
    let dom = monomials_of_degree(n, k);
    let cod = if k == 0 { Vec::new() } else { monomials_of_degree(n, k - 1) };
    let idx = index_of(&cod);
    let cols = dom
        .into_iter()
        .map(|e| coords(&minus.apply(&LaurentPoly::monomial(&vars, e, ParamScalar::one())), &idx))
        .collect::<Result<Vec<_>>>()?;
    if cod.is_empty() {
        return Ok(ScalarMatrix::zeros(0, cols.len()));
    }
    ScalarMatrix::from_columns(cols)
}

/// `dim P_k - rank(lowering)`, the dimension of the harmonic space.
pub fn kernel_dimension(n: usize, k: u32, kind: ModelKind) -> Result<usize> {
    let m = lowering_matrix(n, k, kind)?;
    Ok(m.cols() - generic_rank(&m))
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Counts the basis, the kernel of the lowering operator, and checks linear
/// independence of the basis on monomial coordinates.
pub fn verify_dimension(n: usize, k: u32, kind: ModelKind) -> Result<VerificationReport> {
    let basis = build_basis(n, k, kind, BasisOrder::Standard)?;
    let expected = binomial(k as u64 + n as u64 - 2, n as u64 - 2) as i64;
    let kernel = kernel_dimension(n, k, kind)? as i64;
    let idx = index_of(&monomials_of_degree(n, k));
    let cols = basis.iter().map(|(_, p)| coords(p, &idx)).collect::<Result<Vec<_>>>()?;
    let rank = generic_rank(&ScalarMatrix::from_columns(cols)?) as i64;
    let lower = lowering(n, kind)?;
    let mut r = VerificationReport::new(format!("harmonic dimension, k={k}"), n, Some(kind));
    r.push(IdentityCheck::condition("basis size = binomial(k+n-2, n-2)", basis.len() as i64, expected));
    r.push(IdentityCheck::condition("kernel rank = binomial(k+n-2, n-2)", kernel, expected));
    r.push(IdentityCheck::condition("basis is linearly independent", rank, basis.len() as i64));
    for (label, p) in &basis {
        r.push(IdentityCheck::polys(format!("lowering psi{label} = 0"), lower.apply(p), LaurentPoly::zero(p.vars())));
    }
    r.record("kernel dimension", kernel);
    Ok(r)
}

/// Variables `u1..um`.
pub fn u_vars(m: usize) -> Vars {
    Vars::indexed("u", m)
}

/// The function `phi(u)` with `psi = (x1 - x2)^k phi(u)`, obtained from a
/// translation invariant homogeneous `psi` by `x1 = 1, x2 = 0,
/// x(j+2) = u1 + ... + uj`.
pub fn to_u_coordinates(psi: &LaurentPoly) -> Result<LaurentPoly> {
    let n = psi.vars().len();
    if n < 2 {
        return Err(Error::InvalidArgument("need at least two variables".into()));
    }
    let u = u_vars(n - 2);
    let mut images = BTreeMap::new();
    images.insert("x1".to_string(), LaurentPoly::one(&u));
    images.insert("x2".to_string(), LaurentPoly::zero(&u));
    let mut acc = LaurentPoly::zero(&u);
    for j in 1..=n - 2 {
        acc = &acc + &LaurentPoly::var(&u, j - 1);
        images.insert(format!("x{}", j + 2), acc.clone());
    }
    psi.rename(&model_vars(n)).substitute_affine(&u, &images)
}

/// The first-order operator that appends one unit to `j_l`, acting on
/// functions of `u1..u(l-1)`; `jsum = j_1 + ... + j_l` before the step.
pub fn recursion_operator(l: usize, jsum: u32, vars: &Vars) -> Result<WeylOp> {
    if l < 2 || vars.len() < l - 1 {
        return Err(Error::InvalidArgument(format!("level {l} needs at least {} u-variables", l.saturating_sub(1))));
    }
    let m = vars.len();
    let u = |i: usize| LaurentPoly::var(vars, i - 1);
    let mut op = WeylOp::scalar(vars, &ParamScalar::nu(1).scale(&int(2)) + &ParamScalar::int(jsum as i64));
    for i in 1..l {
        let mut c = &u(i) - &LaurentPoly::one(vars);
        for p in 1..i {
            c = &c + &u(p).scale_rational(&int(2));
        }
        let euler = &WeylOp::multiplication(&(&c * &u(i))) * &WeylOp::d(vars, i - 1);
        op = &op + &euler;
        let w = &ParamScalar::int(2 * jsum as i64) + &nu_sum(i + 1).scale(&int(2));
        op = &op - &WeylOp::multiplication(&u(i).scale(&w));
    }
    debug_assert_eq!(op.vars().len(), m);
    Ok(op)
}

pub fn recursion_apply(l: usize, jsum: u32, phi: &LaurentPoly) -> Result<LaurentPoly> {
    Ok(recursion_operator(l, jsum, phi.vars())?.apply(phi))
}

/// `phi_label` built from `1` by adding each index `j_l`, `l = 2..n-1`, one unit at a time.
pub fn phi_by_recursion(label: &BasisLabel) -> Result<LaurentPoly> {
    let n = label.n();
    let vars = u_vars(n - 2);
    let mut phi = LaurentPoly::one(&vars);
    let mut jsum = label.j[0];
    for l in 2..n {
        for _ in 0..label.j[l - 1] {
            phi = recursion_apply(l, jsum, &phi)?;
            jsum += 1;
        }
    }
    Ok(phi)
}

fn hyp2f1_params(k: u32, j: u32) -> (ParamScalar, ParamScalar, ParamScalar) {
    let two = int(2);
    let nu1 = ParamScalar::nu(1).scale(&two);
    let nu2 = ParamScalar::nu(2).scale(&two);
    let a = ParamScalar::int(j as i64 - k as i64);
    let b = &(&ParamScalar::int(1 - k as i64 - j as i64) - &nu1) - &nu2;
    let c = &ParamScalar::int(1 - k as i64) - &nu1;
    (a, b, c)
}

/// Terminating series `2F1(j-k, 1-k-j-2nu1-2nu2; 1-k-2nu1; u1)`.
pub fn hyp2f1_phi(k: u32, j: u32) -> Result<LaurentPoly> {
    if j > k {
        return Err(Error::InvalidArgument(format!("j = {j} exceeds k = {k}")));
    }
    let (a, b, c) = hyp2f1_params(k, j);
    let vars = u_vars(1);
    let mut out = LaurentPoly::zero(&vars);
    let mut s_fact = int(1);
    for s in 0..=(k - j) {
        if s > 0 {
            s_fact *= int(s as i64);
        }
        let coeff = (&a.pochhammer(s) * &b.pochhammer(s)).checked_div(&c.pochhammer(s).scale(&s_fact))?;
        out = &out + &LaurentPoly::monomial(&vars, Exponent(vec![s as i32]), coeff);
    }
    Ok(out)
}

/// The series at numeric parameters; rejects values where a lower
/// Pochhammer factor of the truncated sum vanishes.
pub fn hyp2f1_phi_at(k: u32, j: u32, values: &HashMap<Param, Rational>) -> Result<LaurentPoly> {
    if j > k {
        return Err(Error::InvalidArgument(format!("j = {j} exceeds k = {k}")));
    }
    let (_, _, c) = hyp2f1_params(k, j);
    let c = c.evaluate(values)?;
    for t in 0..(k - j) {
        if (&c + int(t as i64)) == int(0) {
            return Err(Error::DegenerateParameter);
        }
    }
    hyp2f1_phi(k, j)?.evaluate_params(values)
}

/// Binomial coefficient `C(j, i)` as a rational.
fn binom_rat(j: u32, i: u32) -> Rational {
    int(binomial(j as u64, i as u64) as i64)
}

/// The `k`-th factor (1-based) of the explicit BG basis element:
/// `(-1)^j / (2nu_(k+1))_j * sum_i C(j,i) (j-i+alpha+1)_i (i+beta+1)_(j-i) x_(k+1)^i (-L+^[k])^(j-i)`,
/// the polynomial form of `(-1)^j j! Gamma(2nu)/Gamma(2nu+j) (L+^[k+1])^j P_j((x_(k+1) - L+^[k]) / L+^[k+1])`.
pub fn jacobi_factor(label: &BasisLabel, k: usize) -> Result<LaurentPoly> {
    let n = label.n();
    if k == 0 || k >= n {
        return Err(Error::IndexOutOfRange { index: k, n: n - 1 });
    }
    let vars = model_vars(n);
    let j = label.j[k - 1];
    let two = int(2);
    let earlier: u32 = label.j[..k - 1].iter().sum();
    let alpha = &(&nu_sum(k).scale(&two) - &ParamScalar::one()) + &ParamScalar::int(2 * earlier as i64);
    let beta = &ParamScalar::nu(k + 1).scale(&two) - &ParamScalar::one();
    let lplus = (0..k).fold(LaurentPoly::zero(&vars), |acc, i| &acc + &LaurentPoly::var(&vars, i));
    let neg_l = -&lplus;
    let x = LaurentPoly::var(&vars, k);
    let mut sum = LaurentPoly::zero(&vars);
    for i in 0..=j {
        let c1 = (&alpha + &ParamScalar::int((j - i) as i64 + 1)).pochhammer(i);
        let c2 = (&beta + &ParamScalar::int(i as i64 + 1)).pochhammer(j - i);
        let c = (&c1 * &c2).scale(&binom_rat(j, i));
        sum = &sum + &(&x.pow(i) * &neg_l.pow(j - i)).scale(&c);
    }
    let sign = if j.is_multiple_of(2) { int(1) } else { int(-1) };
    let norm = ParamScalar::nu(k + 1).scale(&two).pochhammer(j).recip()?.scale(&sign);
    Ok(sum.scale(&norm))
}

/// Product of the Jacobi factors for every slot of the label.
pub fn bg_jacobi_explicit(label: &BasisLabel) -> Result<LaurentPoly> {
    let vars = model_vars(label.n());
    let mut acc = LaurentPoly::one(&vars);
    for k in 1..label.n() {
        acc = &acc * &jacobi_factor(label, k)?;
    }
    Ok(acc)
}

/// Decomposes `p` and checks harmonicity of every component and exact reconstruction.
pub fn verify_fischer(p: &LaurentPoly, kind: ModelKind) -> Result<VerificationReport> {
    let n = p.vars().len();
    let d = fischer_decompose(p, kind)?;
    let lower = lowering(n, kind)?;
    let p = p.rename(&model_vars(n));
    let mut r = VerificationReport::new(format!("Fischer round trip, k={}", d.k), n, Some(kind));
    for (j, h) in &d.components {
        r.push(IdentityCheck::polys(format!("lowering h{} = 0", d.k - j), lower.apply(h), LaurentPoly::zero(h.vars())));
    }
    r.push(IdentityCheck::polys("sum raising^j h = p", d.reconstruct(kind)?, p));
    Ok(r)
}

/// CK round trip on every monomial of degree `k` in `n - 1` variables, and
/// for Bargmann agreement with the translation form.
pub fn verify_ck(n: usize, k: u32, kind: ModelKind) -> Result<VerificationReport> {
    if n < 2 {
        return Err(Error::InvalidArgument("CK extension needs n >= 2".into()));
    }
    let vars = model_vars(n - 1);
    let mut r = VerificationReport::new(format!("CK round trip, k={k}"), n, Some(kind));
    for e in monomials_of_degree(n - 1, k) {
        let m = LaurentPoly::monomial(&vars, e, ParamScalar::one());
        let q = ck_extend(&m, kind)?;
        r.push(IdentityCheck::polys(format!("ck_inverse ck_extend {m}"), ck_inverse(&q, kind)?, m.clone()));
        if kind == ModelKind::Bargmann {
            r.push(IdentityCheck::polys(format!("ck_extend {m} = translation"), q, ck_translation(&m)?));
        }
    }
    Ok(r)
}

/// `(2 nu1 + j)_(k-j)`, the factor between the recursion and the 2F1 series.
pub fn hyp2f1_constant(k: u32, j: u32) -> ParamScalar {
    (&ParamScalar::nu(1).scale(&int(2)) + &ParamScalar::int(j as i64)).pochhammer(k - j)
}

/// For `n = 3`: the recursion from `phi = 1` against the 2F1 series, for every
/// `j <= k`. The proportionality constants are recorded.
pub fn verify_recursion_hyp2f1(k: u32) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(format!("recursion vs 2F1, k={k}"), 3, None);
    for j in 0..=k {
        let label = BasisLabel::new(3, vec![j, k - j])?;
        let phi = phi_by_recursion(&label)?;
        let series = hyp2f1_phi(k, j)?;
        match phi.proportionality(&series) {
            Some(c) => {
                r.record(format!("c(k={k}, j={j})"), &c);
                r.push(IdentityCheck::scalars(format!("c(k={k}, j={j}) = (2nu1+j)_(k-j)"), c, hyp2f1_constant(k, j)));
            }
            None => r.push(IdentityCheck::polys(format!("phi{label} proportional to 2F1"), phi, series)),
        }
    }
    Ok(r)
}

/// The explicit Jacobi product against the BG chain basis for every label.
pub fn verify_jacobi_explicit(n: usize, k: u32) -> Result<VerificationReport> {
    let basis = build_basis(n, k, ModelKind::BarutGirardello, BasisOrder::Standard)?;
    let mut r = VerificationReport::new(format!("explicit Jacobi basis, k={k}"), n, Some(ModelKind::BarutGirardello));
    for (label, psi) in basis {
        r.push(IdentityCheck::polys(format!("jacobi{label} = psi{label}"), bg_jacobi_explicit(&label)?, psi));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_poly;

    fn poly(s: &str, n: usize) -> LaurentPoly {
        parse_poly(s, &model_vars(n)).unwrap()
    }

    #[test]
    fn bargmann_ck_of_power() {
        let p = poly("x1^3", 1);
        assert_eq!(ck_extend(&p, ModelKind::Bargmann).unwrap(), poly("(x1 - x2)^3", 2));
    }

    #[test]
    fn bg_ck_of_linear() {
        let q = ck_extend(&poly("x1", 1), ModelKind::BarutGirardello).unwrap();
        assert_eq!(q, poly("x1 - nu1/nu2 * x2", 2));
        assert!(is_harmonic(&q, ModelKind::BarutGirardello).unwrap());
        assert_eq!(ck_inverse(&q, ModelKind::BarutGirardello).unwrap(), poly("x1", 1));
    }

    #[test]
    fn ck_of_constant() {
        for kind in ModelKind::ALL {
            assert_eq!(ck_extend(&poly("1", 2), kind).unwrap(), poly("1", 3));
            assert_eq!(ck_inverse(&poly("1", 3), kind).unwrap(), poly("1", 2));
        }
    }

    #[test]
    fn ck_inverse_rejects_non_harmonic() {
        assert_eq!(ck_inverse(&poly("x1", 2), ModelKind::Bargmann), Err(Error::NotHarmonic));
        assert_eq!(ck_extend(&poly("x1 + x1^2", 1), ModelKind::Bargmann), Err(Error::NotHomogeneous));
    }

    #[test]
    fn ladder_coefficient_values() {
        assert_eq!(suind_coeff(1, 0, 1, 1).unwrap(), ParamScalar::nu(1).scale(&int(2)));
        assert_eq!(suind_coeff(3, 2, 0, 2).unwrap(), ParamScalar::one());
        let two_nu = ParamScalar::nu(1).scale(&int(2));
        let expected = (&two_nu * &(&two_nu + &ParamScalar::one())).scale(&int(2));
        assert_eq!(suind_coeff(2, 0, 2, 1).unwrap(), expected);
        assert!(suind_coeff(1, 0, 2, 1).is_err());
    }

    #[test]
    fn fischer_of_linear_bargmann() {
        let d = fischer_decompose(&poly("x1", 2), ModelKind::Bargmann).unwrap();
        let lin = fischer_decompose_linear(&poly("x1", 2), ModelKind::Bargmann).unwrap();
        assert_eq!(d, lin);
        // h_1 = x1 - (2nu1 x1 + 2nu2 x2)/(2nu1 + 2nu2), h_0 = 1/(2nu1 + 2nu2)
        assert_eq!(d.components[0].1, poly("nu2/(nu1 + nu2) * x1 - nu2/(nu1 + nu2) * x2", 2));
        assert_eq!(d.components[1].1, poly("1/(2 nu1 + 2 nu2)", 2));
        assert_eq!(d.reconstruct(ModelKind::Bargmann).unwrap(), poly("x1", 2));
    }

    #[test]
    fn fischer_of_harmonic_is_trivial() {
        let p = poly("(x1 - x3)^2", 3);
        let d = fischer_decompose(&p, ModelKind::Bargmann).unwrap();
        assert_eq!(d.components[0].1, p);
        assert!(d.components[1..].iter().all(|(_, h)| h.is_zero()));
    }

    #[test]
    fn n3_k1_bargmann_basis() {
        let b = build_basis(3, 1, ModelKind::Bargmann, BasisOrder::Standard).unwrap();
        assert_eq!(b[0].0.j, vec![1, 0]);
        assert_eq!(b[0].1, poly("x1 - x2", 3));
        assert_eq!(b[1].0.j, vec![0, 1]);
        assert_eq!(b[1].1, poly("2 nu1 (x1 - x3) + 2 nu2 (x2 - x3)", 3));
    }

    #[test]
    fn label_enumeration() {
        let labels: Vec<String> = BasisLabel::all(3, 2).iter().map(ToString::to_string).collect();
        assert_eq!(labels, ["(2,0)", "(1,1)", "(0,2)"]);
        assert!(BasisLabel::new(3, vec![1]).is_err());
    }

    #[test]
    fn eigenvalue_examples() {
        let l = BasisLabel::new(3, vec![1, 0]).unwrap();
        let mut at = HashMap::new();
        at.insert(Param::Nu(1), int(1));
        at.insert(Param::Nu(2), int(1));
        assert_eq!(eigenvalue_lambda(&l, 2).unwrap().value.evaluate(&at).unwrap(), int(6));
        assert!(eigenvalue_lambda(&l, 4).is_err());
        let c12 = make_realization(3, &Subset::range(2), ModelKind::Bargmann).unwrap().casimir();
        let psi = poly("x1 - x2", 3);
        let lam = eigenvalue_lambda(&l, 2).unwrap().value;
        assert_eq!(c12.apply(&psi), psi.scale(&lam));
    }

    #[test]
    fn small_diagonal_and_dimension() {
        for kind in ModelKind::ALL {
            assert!(verify_diagonal(3, 2, kind).unwrap().pass());
            assert!(verify_dimension(3, 3, kind).unwrap().pass());
        }
    }

    #[test]
    fn recursion_first_step() {
        let vars = u_vars(1);
        let r = recursion_apply(2, 0, &LaurentPoly::one(&vars)).unwrap();
        assert_eq!(r, parse_poly("2 nu1 - (2 nu1 + 2 nu2) u1", &vars).unwrap());
        assert!(recursion_apply(2, 3, &LaurentPoly::zero(&vars)).unwrap().is_zero());
    }

    #[test]
    fn hypergeometric_examples() {
        let vars = u_vars(1);
        assert_eq!(hyp2f1_phi(3, 3).unwrap(), LaurentPoly::one(&vars));
        assert_eq!(hyp2f1_phi(1, 0).unwrap(), parse_poly("1 - (nu1 + nu2)/nu1 * u1", &vars).unwrap());
        let mut at = HashMap::new();
        at.insert(Param::Nu(1), Rational::new((-1).into(), 2.into()));
        at.insert(Param::Nu(2), int(1));
        // lower parameter 1 - 2 - 2nu1 = 0 at k = 2
        assert_eq!(hyp2f1_phi_at(2, 0, &at), Err(Error::DegenerateParameter));
    }

    #[test]
    fn jacobi_matches_ck_for_n2() {
        let l = BasisLabel::new(2, vec![1]).unwrap();
        assert_eq!(bg_jacobi_explicit(&l).unwrap(), poly("x1 - nu1/nu2 * x2", 2));
        let zero = BasisLabel::new(3, vec![0, 0]).unwrap();
        assert_eq!(bg_jacobi_explicit(&zero).unwrap(), poly("1", 3));
    }

    #[test]
    fn u_coordinates() {
        let phi = to_u_coordinates(&poly("(x1 - x2)^2 + (x1 - x2)(x3 - x2)", 3)).unwrap();
        assert_eq!(phi, parse_poly("1 + u1", &u_vars(1)).unwrap());
    }
}
