//! Laurent polynomials in named variables with [`ParamScalar`] coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::mpoly::{Param, ParamPoly, Rational};
use super::scalar::ParamScalar;
use crate::error::{Error, Result};

/// Ordered list of variable names, cheap to clone.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Vars(names.into_iter().map(Into::into).collect())
    }

    /// `prefix1, ..., prefixn`.
    pub fn indexed(prefix: &str, n: usize) -> Self {
        Vars::new((1..=n).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn joined(&self) -> String {
        self.0.join(",")
    }

    /// Errors unless both lists are identical.
    pub fn check_same(&self, other: &Vars) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::VariableMismatch { left: self.joined(), right: other.joined() })
        }
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.joined())
    }
}

/// Integer exponent vector ordered by total degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponent(pub Vec<i32>);

impl Exponent {
    pub fn zero(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Exponent(e)
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse Laurent polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    vars: Vars,
    terms: BTreeMap<Exponent, ParamScalar>,
}

impl LaurentPoly {
    pub fn zero(vars: &Vars) -> Self {
        LaurentPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Vars) -> Self {
        LaurentPoly::constant(vars, ParamScalar::one())
    }

    pub fn constant(vars: &Vars, c: ParamScalar) -> Self {
        LaurentPoly::monomial(vars, Exponent::zero(vars.len()), c)
    }

    pub fn monomial(vars: &Vars, exp: Exponent, c: ParamScalar) -> Self {
        assert_eq!(exp.0.len(), vars.len(), "exponent length");
        let mut p = LaurentPoly::zero(vars);
        p.add_term(exp, c);
        p
    }

    /// The variable `vars[i]` (0-based).
    pub fn var(vars: &Vars, i: usize) -> Self {
        LaurentPoly::monomial(vars, Exponent::unit(vars.len(), i), ParamScalar::one())
    }

    pub fn from_terms<I>(vars: &Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, ParamScalar)>,
    {
        let mut p = LaurentPoly::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.0.len(), vars.len(), "exponent length");
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &ParamScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponent) -> ParamScalar {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|e| !e.is_nonnegative())
    }

    pub fn require_polynomial(&self) -> Result<()> {
        if self.has_negative_exponents() {
            Err(Error::NegativeExponent)
        } else {
            Ok(())
        }
    }

    /// The common total degree of all terms; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(Exponent::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Maximum total degree over the terms.
    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().map(Exponent::degree).max()
    }

    /// Splits into homogeneous components keyed by degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<i32, LaurentPoly> {
        let mut out: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(e.degree()).or_insert_with(|| LaurentPoly::zero(&self.vars)).add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &ParamScalar) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(&self.vars);
        }
        LaurentPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    /// Least common multiple of the coefficient denominators, made monic.
    pub fn common_denominator(&self) -> ParamPoly {
        let mut acc = ParamPoly::one();
        for c in self.terms.values() {
            let d = c.denom();
            if d.is_one() || acc.div_exact(d).is_some() {
                continue;
            }
            let g = ParamPoly::gcd(&acc, d);
            acc = (&acc * &d.div_exact(&g).expect("gcd divides")).monic();
        }
        acc
    }

    /// Splits `self = num / den` with polynomial coefficients in `num`.
    pub fn clear_denominators(&self) -> (LaurentPoly, ParamPoly) {
        let den = self.common_denominator();
        if den.is_one() {
            return (self.clone(), den);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let cofactor = den.div_exact(c.denom()).expect("denominator divides the lcm");
                (e.clone(), ParamScalar::from_poly(c.numer() * &cofactor))
            })
            .collect();
        (LaurentPoly { vars: self.vars.clone(), terms }, den)
    }

    pub fn scale_rational(&self, c: &Rational) -> LaurentPoly {
        self.scale(&ParamScalar::from_rational(c.clone()))
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one(&self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn checked_add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.vars.check_same(&other.vars)?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.vars.check_same(&other.vars)?;
        Ok(self * other)
    }

    /// Replaces variables by affine images over `target` variables.
    ///
    /// Variables of `self` without an image must also occur in `target` and
    /// are carried over unchanged.
    pub fn substitute_affine(&self, target: &Vars, images: &BTreeMap<String, LaurentPoly>) -> Result<LaurentPoly> {
        self.require_polynomial()?;
        for (name, img) in images {
            if self.vars.position(name).is_none() {
                return Err(Error::UnknownVariable(name.clone()));
            }
            target.check_same(&img.vars)?;
            if img.has_negative_exponents() || img.max_degree().unwrap_or(0) > 1 {
                return Err(Error::NonAffineImage(name.clone()));
            }
        }
        let mut resolved = Vec::with_capacity(self.vars.len());
        for name in self.vars.names() {
            let img = match images.get(name) {
                Some(img) => img.clone(),
                None => {
                    let j = target.position(name).ok_or_else(|| Error::UnknownVariable(name.clone()))?;
                    LaurentPoly::var(target, j)
                }
            };
            resolved.push(img);
        }
        let mut powers: Vec<Vec<LaurentPoly>> = resolved.iter().map(|img| vec![LaurentPoly::one(target), img.clone()]).collect();
        let mut out = LaurentPoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = LaurentPoly::constant(target, c.clone());
            for (i, &k) in e.0.iter().enumerate() {
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = &powers[i][powers[i].len() - 1] * &resolved[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    t = &t * &powers[i][k];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Sets variable `i` to zero and removes it from the variable list.
    pub fn restrict_to_zero(&self, i: usize) -> LaurentPoly {
        let names: Vec<String> = self.vars.names().iter().enumerate().filter(|&(j, _)| j != i).map(|(_, s)| s.clone()).collect();
        let vars = Vars::new(names);
        let mut out = LaurentPoly::zero(&vars);
        for (e, c) in &self.terms {
            if e.0[i] == 0 {
                let mut v = e.0.clone();
                v.remove(i);
                out.add_term(Exponent(v), c.clone());
            }
        }
        out
    }

    /// Re-expresses the polynomial over a variable list containing all of its
    /// variables (by name), in any order.
    pub fn embed(&self, target: &Vars) -> Result<LaurentPoly> {
        let map: Vec<usize> =
            self.vars.names().iter().map(|n| target.position(n).ok_or_else(|| Error::UnknownVariable(n.clone()))).collect::<Result<_>>()?;
        let mut out = LaurentPoly::zero(target);
        for (e, c) in &self.terms {
            let mut v = vec![0; target.len()];
            for (i, &k) in e.0.iter().enumerate() {
                v[map[i]] = k;
            }
            out.add_term(Exponent(v), c.clone());
        }
        Ok(out)
    }

    /// Drops variables that do not occur; errors if a named variable occurs.
    pub fn project(&self, target: &Vars) -> Result<LaurentPoly> {
        let map: Vec<Option<usize>> = self.vars.names().iter().map(|n| target.position(n)).collect();
        let mut out = LaurentPoly::zero(target);
        for (e, c) in &self.terms {
            let mut v = vec![0; target.len()];
            for (i, &k) in e.0.iter().enumerate() {
                match map[i] {
                    Some(j) => v[j] = k,
                    None if k != 0 => return Err(Error::UnknownVariable(self.vars.name(i).to_string())),
                    None => {}
                }
            }
            out.add_term(Exponent(v), c.clone());
        }
        Ok(out)
    }

    /// Same polynomial under renamed variables (positionally).
    pub fn rename(&self, vars: &Vars) -> LaurentPoly {
        assert_eq!(vars.len(), self.vars.len());
        LaurentPoly { vars: vars.clone(), terms: self.terms.clone() }
    }

    pub fn map_coeffs<F>(&self, mut f: F) -> Result<LaurentPoly>
    where
        F: FnMut(&ParamScalar) -> Result<ParamScalar>,
    {
        let mut out = LaurentPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Partial parameter substitution.
    pub fn substitute_params(&self, values: &HashMap<Param, Rational>) -> Result<LaurentPoly> {
        self.map_coeffs(|c| c.substitute(values))
    }

    /// Full parameter evaluation; the result has constant coefficients only.
    pub fn evaluate_params(&self, values: &HashMap<Param, Rational>) -> Result<LaurentPoly> {
        self.map_coeffs(|c| c.evaluate(values).map(ParamScalar::from_rational))
    }

    /// Finds `c` with `self = c * other`, if it exists.
    pub fn proportionality(&self, other: &LaurentPoly) -> Option<ParamScalar> {
        if other.is_zero() {
            return self.is_zero().then(ParamScalar::zero);
        }
        let (e, oc) = other.terms.iter().next_back()?;
        let c = self.coeff(e).checked_div(oc).ok()?;
        (&other.scale(&c) == self).then_some(c)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.vars, rhs.vars, "variable mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.vars, rhs.vars, "variable mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.vars, rhs.vars, "variable mismatch");
        let mut acc: HashMap<Exponent, ParamScalar> = HashMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.add(eb);
                let t = ca * cb;
                match acc.get_mut(&e) {
                    Some(v) => *v = &*v + &t,
                    None => {
                        acc.insert(e, t);
                    }
                }
            }
        }
        LaurentPoly { vars: self.vars.clone(), terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

macro_rules! forward_owned_laurent {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned_laurent!(Add, add);
forward_owned_laurent!(Sub, sub);
forward_owned_laurent!(Mul, mul);

/// Writes a monomial `x1^2 x2^-1` (no output for the unit monomial).
pub(crate) fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &Vars, e: &[i32]) -> std::result::Result<bool, fmt::Error> {
    let mut wrote = false;
    for (i, &k) in e.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if wrote {
            write!(f, " ")?;
        }
        wrote = true;
        write!(f, "{}", vars.name(i))?;
        if k != 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(wrote)
}

/// Writes one `coefficient * monomial` group; polynomial coefficients are
/// expanded into one printed term per parameter monomial.
pub(crate) fn write_term<F>(
    f: &mut fmt::Formatter<'_>,
    first: &mut bool,
    c: &ParamScalar,
    has_monomial: bool,
    mut write_mono: F,
) -> fmt::Result
where
    F: FnMut(&mut fmt::Formatter<'_>) -> fmt::Result,
{
    use num_traits::{One, Signed};
    if !c.is_polynomial() {
        if !*first {
            write!(f, " + ")?;
        }
        *first = false;
        write!(f, "{c}")?;
        if has_monomial {
            write!(f, " * ")?;
            write_mono(f)?;
        }
        return Ok(());
    }
    for (pm, r) in c.numer().terms().rev() {
        let neg = r.is_negative();
        match (*first, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        *first = false;
        let a = r.abs();
        let mut need_sep = false;
        if !a.is_one() || (pm.is_one() && !has_monomial) {
            super::mpoly::write_rational(f, &a)?;
            need_sep = true;
        }
        if !pm.is_one() {
            if need_sep {
                write!(f, " * ")?;
            }
            super::mpoly::write_param_monomial(f, pm)?;
            need_sep = true;
        }
        if has_monomial {
            if need_sep {
                write!(f, " * ")?;
            }
            write_mono(f)?;
        }
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let has_mono = e.0.iter().any(|&k| k != 0);
            write_term(f, &mut first, c, has_mono, |f| write_monomial(f, &self.vars, &e.0).map(|_| ()))?;
        }
        Ok(())
    }
}

/// All exponent vectors of total degree `k` in `n` variables, in descending
/// lexicographic order.
pub fn monomials_of_degree(n: usize, k: u32) -> Vec<Exponent> {
    fn rec(n: usize, k: u32, prefix: &mut Vec<i32>, out: &mut Vec<Exponent>) {
        if prefix.len() + 1 == n {
            prefix.push(k as i32);
            out.push(Exponent(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=k).rev() {
            prefix.push(a as i32);
            rec(n, k - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(Exponent(Vec::new()));
        }
        return out;
    }
    rec(n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(vars: &Vars, i: usize) -> LaurentPoly {
        LaurentPoly::var(vars, i)
    }

    #[test]
    fn binomial_substitution() {
        let v = Vars::indexed("x", 2);
        let p = x(&v, 0).pow(2);
        let mut images = BTreeMap::new();
        images.insert("x1".to_string(), &x(&v, 0) - &x(&v, 1));
        let q = p.substitute_affine(&v, &images).unwrap();
        let two = LaurentPoly::constant(&v, ParamScalar::int(2));
        let expected = &(&x(&v, 0).pow(2) - &(&two * &(&x(&v, 0) * &x(&v, 1)))) + &x(&v, 1).pow(2);
        assert_eq!(q, expected);
    }

    #[test]
    fn cube_substitution() {
        let v = Vars::indexed("x", 2);
        let mut images = BTreeMap::new();
        let d = &x(&v, 0) - &x(&v, 1);
        images.insert("x1".to_string(), d.clone());
        let q = x(&v, 0).pow(3).substitute_affine(&v, &images).unwrap();
        assert_eq!(q, &(&d * &d) * &d);
        assert_eq!(q.len(), 4);
    }

    #[test]
    fn constant_substitution_is_identity() {
        let v = Vars::indexed("x", 2);
        let mut images = BTreeMap::new();
        images.insert("x2".to_string(), &x(&v, 0) + &LaurentPoly::one(&v));
        let one = LaurentPoly::one(&v);
        assert_eq!(one.substitute_affine(&v, &images).unwrap(), one);
    }

    #[test]
    fn substitution_errors() {
        let v = Vars::indexed("x", 2);
        let mut images = BTreeMap::new();
        images.insert("y".to_string(), x(&v, 0));
        assert_eq!(x(&v, 0).substitute_affine(&v, &images), Err(Error::UnknownVariable("y".into())));
        let inv = LaurentPoly::monomial(&v, Exponent(vec![-1, 0]), ParamScalar::one());
        assert_eq!(inv.substitute_affine(&v, &BTreeMap::new()), Err(Error::NegativeExponent));
        let mut sq = BTreeMap::new();
        sq.insert("x1".to_string(), x(&v, 0).pow(2));
        assert_eq!(x(&v, 0).substitute_affine(&v, &sq), Err(Error::NonAffineImage("x1".into())));
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(4, 5).len(), 56);
        assert_eq!(monomials_of_degree(1, 3), vec![Exponent(vec![3])]);
        assert_eq!(monomials_of_degree(0, 0).len(), 1);
    }

    #[test]
    fn restriction_drops_variable() {
        let v = Vars::indexed("x", 2);
        let p = &x(&v, 0) - &x(&v, 1);
        let r = p.restrict_to_zero(1);
        assert_eq!(r, LaurentPoly::var(&Vars::indexed("x", 1), 0));
    }
}
