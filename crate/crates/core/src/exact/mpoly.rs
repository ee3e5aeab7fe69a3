//! Multivariate polynomials over the rationals in the model parameters.
//!
//! Parameters are the symbols `nu1, nu2, ...` and the degree symbol `k`.
//! Monomials are dense exponent vectors indexed by [`Param::index`], with
//! trailing zeros trimmed so that equal monomials have equal keys. Terms are
//! kept in a `BTreeMap` under graded lexicographic order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number with arbitrary precision.
pub type Rational = BigRational;

/// Builds a rational from two machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds an integral rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A parameter symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    /// The symbolic degree `k` used by the reduced realization.
    K,
    /// `nu_i`, 1-based.
    Nu(usize),
}

impl Param {
    pub fn index(self) -> usize {
        match self {
            Param::K => 0,
            Param::Nu(i) => i,
        }
    }

    pub fn from_index(i: usize) -> Param {
        if i == 0 {
            Param::K
        } else {
            Param::Nu(i)
        }
    }

    /// Parses `k` or `nu<i>` with `i >= 1`.
    pub fn parse(name: &str) -> Option<Param> {
        if name == "k" {
            return Some(Param::K);
        }
        let digits = name.strip_prefix("nu")?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        match digits.parse::<usize>() {
            Ok(i) if i >= 1 => Some(Param::Nu(i)),
            _ => None,
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::K => write!(f, "k"),
            Param::Nu(i) => write!(f, "nu{i}"),
        }
    }
}

/// Exponent vector of a parameter monomial, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn var(index: usize) -> Self {
        let mut exps = vec![0; index + 1];
        exps[index] = 1;
        Monomial(exps)
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0.get(index).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() { (&self.0, &other.0) } else { (&other.0, &self.0) };
        let mut exps = long.clone();
        for (e, s) in exps.iter_mut().zip(short) {
            *e += s;
        }
        Monomial(exps)
    }

    fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut exps = self.0.clone();
        for (e, o) in exps.iter_mut().zip(&other.0) {
            if *e < *o {
                return None;
            }
            *e -= o;
        }
        Some(Monomial::from_exponents(exps))
    }

    fn with_exponent(&self, index: usize, e: u32) -> Monomial {
        let mut exps = self.0.clone();
        if exps.len() <= index {
            exps.resize(index + 1, 0);
        }
        exps[index] = e;
        Monomial::from_exponents(exps)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                let c = self.exponent(i).cmp(&other.exponent(i));
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in the parameters with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn one() -> Self {
        ParamPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        ParamPoly { terms }
    }

    pub fn param(p: Param) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(p.index()), Rational::one());
        ParamPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = ParamPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
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

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Monomial::one()))
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Leading term under graded lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(index)).max().unwrap_or(0)
    }

    /// Highest parameter index occurring, if any.
    pub fn max_index(&self) -> Option<usize> {
        self.terms.keys().filter_map(|m| m.exponents().len().checked_sub(1)).max()
    }

    /// Parameters occurring in the polynomial.
    pub fn params(&self) -> Vec<Param> {
        let mut seen = Vec::new();
        for m in self.terms.keys() {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 && !seen.contains(&i) {
                    seen.push(i);
                }
            }
        }
        seen.sort_unstable();
        seen.into_iter().map(Param::from_index).collect()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// Rescales so that the leading coefficient is one.
    pub fn monic(&self) -> ParamPoly {
        match self.leading() {
            None => ParamPoly::zero(),
            Some((_, lc)) if lc.is_one() => self.clone(),
            Some((_, lc)) => self.scale(&lc.recip()),
        }
    }

    pub fn pow(&self, e: u32) -> ParamPoly {
        let mut acc = ParamPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes rational values for the given parameters; others stay symbolic.
    pub fn substitute(&self, values: &HashMap<Param, Rational>) -> ParamPoly {
        if values.is_empty() {
            return self.clone();
        }
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::with_capacity(m.exponents().len());
            for (i, &e) in m.exponents().iter().enumerate() {
                match values.get(&Param::from_index(i)) {
                    Some(v) if e > 0 => {
                        coeff *= num_traits::pow(v.clone(), e as usize);
                        rest.push(0);
                    }
                    _ => rest.push(e),
                }
            }
            out.add_term(Monomial::from_exponents(rest), coeff);
        }
        out
    }

    /// Evaluates with every parameter assigned, or reports the first missing one.
    pub fn evaluate(&self, values: &HashMap<Param, Rational>) -> Result<Rational, Param> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = Param::from_index(i);
                let v = values.get(&p).ok_or(p)?;
                t *= num_traits::pow(v.clone(), e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &ParamPoly) -> Option<ParamPoly> {
        let (dm, dc) = d.leading()?;
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = ParamPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(dm)?;
            let qc = rc / dc;
            for (m, c) in &d.terms {
                rem.add_term(m.mul(&qm), -(c * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Coefficients with respect to one parameter, lowest degree first.
    fn to_univariate(&self, index: usize) -> Vec<ParamPoly> {
        let mut out = vec![ParamPoly::zero(); self.degree_in(index) as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(index) as usize;
            out[e].add_term(m.with_exponent(index, 0), c.clone());
        }
        out
    }

    fn from_univariate(coeffs: &[ParamPoly], index: usize) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                out.add_term(m.with_exponent(index, e as u32), v.clone());
            }
        }
        out
    }

    /// Greatest common divisor of the coefficients in one parameter.
    fn content_in(&self, index: usize) -> ParamPoly {
        let coeffs = self.to_univariate(index);
        content(&coeffs)
    }

    /// Monic greatest common divisor over `Q[params]`.
    pub fn gcd(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return ParamPoly::one();
        }
        if a == b {
            return a.monic();
        }
        // Terms-only shortcut: monomial gcd.
        if a.len() == 1 && b.len() == 1 {
            let (ma, _) = a.leading().unwrap();
            let (mb, _) = b.leading().unwrap();
            let n = ma.exponents().len().min(mb.exponents().len());
            let exps = (0..n).map(|i| ma.exponent(i).min(mb.exponent(i))).collect();
            return ParamPoly::from_terms([(Monomial::from_exponents(exps), Rational::one())]);
        }
        if let Some(g) = heuristic_gcd(a, b) {
            return g.monic();
        }
        let v = a.max_index().max(b.max_index()).expect("non-constant");
        let da = a.degree_in(v);
        let db = b.degree_in(v);
        if da == 0 {
            return ParamPoly::gcd(a, &b.content_in(v));
        }
        if db == 0 {
            return ParamPoly::gcd(&a.content_in(v), b);
        }
        let ca = a.content_in(v);
        let cb = b.content_in(v);
        let c = ParamPoly::gcd(&ca, &cb);
        let mut f = a.div_exact(&ca).expect("content divides").to_univariate(v);
        let mut g = b.div_exact(&cb).expect("content divides").to_univariate(v);
        if f.len() < g.len() {
            std::mem::swap(&mut f, &mut g);
        }
        loop {
            let r = pseudo_remainder(&f, &g);
            if r.is_empty() {
                break;
            }
            if r.len() == 1 {
                g = vec![ParamPoly::one()];
                break;
            }
            f = g;
            g = primitive_part(&r);
        }
        let g = ParamPoly::from_univariate(&primitive_part(&g), v);
        (&c * &g).monic()
    }
}

/// Terms with integer numerators over one common denominator.
fn integer_terms(p: &ParamPoly) -> (Vec<(&Monomial, BigInt)>, BigInt) {
    let den = p.terms.values().fold(BigInt::one(), |acc, c| if c.denom().is_one() { acc } else { acc.lcm(c.denom()) });
    let terms = p.terms.iter().map(|(m, c)| (m, if den.is_one() { c.numer().clone() } else { c.numer() * (&den / c.denom()) })).collect();
    (terms, den)
}

/// Scales `p` to integer coefficients with unit content and positive leading term.
/// Returns the integer polynomial and its integer content.
fn integer_primitive(p: &ParamPoly) -> (ParamPoly, BigInt) {
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for (_, c) in p.terms() {
        den = den.lcm(c.denom());
        num = num.gcd(c.numer());
    }
    let mut prim = p.scale(&Rational::new(den, num.clone()));
    if prim.leading().is_some_and(|(_, c)| c.is_negative()) {
        prim = -&prim;
    }
    (prim, num)
}

fn height(p: &ParamPoly) -> BigInt {
    p.terms().map(|(_, c)| c.numer().abs()).max().unwrap_or_default()
}

/// Evaluates parameter `v` of an integer polynomial at `xi`.
fn eval_at(p: &ParamPoly, v: usize, xi: &BigInt) -> ParamPoly {
    let mut powers = vec![BigInt::one()];
    let mut out = ParamPoly::zero();
    for (m, c) in p.terms() {
        let e = m.exponent(v) as usize;
        while powers.len() <= e {
            let next = powers.last().unwrap() * xi;
            powers.push(next);
        }
        out.add_term(m.with_exponent(v, 0), Rational::from_integer(c.numer() * &powers[e]));
    }
    out
}

/// Heuristic gcd over `Z[params]`: evaluate one parameter at a large integer,
/// recurse, and lift the image back by its balanced `xi`-adic expansion.
/// Returns `None` when a few evaluation points all fail.
fn heuristic_gcd(a: &ParamPoly, b: &ParamPoly) -> Option<ParamPoly> {
    let (a, _) = integer_primitive(a);
    let (b, _) = integer_primitive(b);
    heuristic_gcd_z(&a, &b).map(|g| integer_primitive(&g).0)
}

/// Gcd of integer polynomials, integer content included.
fn heuristic_gcd_z(a: &ParamPoly, b: &ParamPoly) -> Option<ParamPoly> {
    let (a, ca) = integer_primitive(a);
    let (b, cb) = integer_primitive(b);
    let c = Rational::from_integer(ca.gcd(&cb));
    if a.is_constant() || b.is_constant() {
        return Some(ParamPoly::constant(c));
    }
    let v = a.max_index().max(b.max_index())?;
    let mut xi = BigInt::from(2) * height(&a).min(height(&b)) + BigInt::from(29);
    for _ in 0..6 {
        let (ea, eb) = (eval_at(&a, v, &xi), eval_at(&b, v, &xi));
        if !ea.is_zero() && !eb.is_zero() {
            let gamma = heuristic_gcd_z(&ea, &eb)?;
            let g = integer_primitive(&lift(gamma, v, &xi)).0;
            if !g.is_zero() && a.div_exact(&g).is_some() && b.div_exact(&g).is_some() {
                return Some(g.scale(&c));
            }
        }
        xi = &xi * BigInt::from(73794) / BigInt::from(27011);
    }
    None
}

/// Balanced `xi`-adic expansion of `gamma` as a polynomial in parameter `v`.
fn lift(mut gamma: ParamPoly, v: usize, xi: &BigInt) -> ParamPoly {
    let half = xi / BigInt::from(2);
    let xi_r = Rational::from_integer(xi.clone());
    let mut out = BTreeMap::new();
    let mut e = 0;
    while !gamma.is_zero() {
        let mut digit = BTreeMap::new();
        for (m, c) in gamma.terms() {
            let mut r = c.numer().mod_floor(xi);
            if r > half {
                r -= xi;
            }
            if !r.is_zero() {
                digit.insert(m.clone(), Rational::from_integer(r));
            }
        }
        for (m, r) in &digit {
            out.insert(m.with_exponent(v, e), r.clone());
        }
        gamma = (&gamma - &ParamPoly { terms: digit }).scale(&xi_r.recip());
        e += 1;
    }
    ParamPoly { terms: out }
}

fn trim(v: &mut Vec<ParamPoly>) {
    while v.last().is_some_and(ParamPoly::is_zero) {
        v.pop();
    }
}

fn content(coeffs: &[ParamPoly]) -> ParamPoly {
    let mut g = ParamPoly::zero();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = ParamPoly::gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part(coeffs: &[ParamPoly]) -> Vec<ParamPoly> {
    let c = content(coeffs);
    if c.is_one() || c.is_zero() {
        return coeffs.to_vec();
    }
    coeffs.iter().map(|x| x.div_exact(&c).expect("content divides")).collect()
}

/// Lazy pseudo-remainder of `f` by `g` as univariate polynomials; result is trimmed.
fn pseudo_remainder(f: &[ParamPoly], g: &[ParamPoly]) -> Vec<ParamPoly> {
    let dg = g.len() - 1;
    let lc = &g[dg];
    let mut r = f.to_vec();
    trim(&mut r);
    while !r.is_empty() && r.len() > dg {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x = &*x * lc;
        }
        for (i, gi) in g.iter().enumerate() {
            let idx = i + dr - dg;
            r[idx] = &r[idx] - &(&lr * gi);
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
    }
    r
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        if self.is_zero() || rhs.is_zero() {
            return ParamPoly::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        // Multiply integer numerators over a common denominator; rational
        // additions in the inner loop would each cost a gcd.
        let (a, da) = integer_terms(self);
        let (b, db) = integer_terms(rhs);
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        let den = da * db;
        ParamPoly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m, Rational::new(c, den.clone()))).collect() }
    }
}

pub(crate) fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn write_param_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, " ")?;
        }
        first = false;
        write!(f, "{}", Param::from_index(i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write_rational(f, &a)?;
            } else {
                if !a.is_one() {
                    write_rational(f, &a)?;
                    write!(f, " ")?;
                }
                write_param_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nu(i: usize) -> ParamPoly {
        ParamPoly::param(Param::Nu(i))
    }

    fn c(n: i64) -> ParamPoly {
        ParamPoly::constant(int(n))
    }

    #[test]
    fn grlex_order_puts_higher_degree_last() {
        let a = Monomial::from_exponents(vec![0, 2]);
        let b = Monomial::from_exponents(vec![0, 1, 1]);
        let one = Monomial::one();
        assert!(one < b);
        assert!(b < a);
    }

    #[test]
    fn exact_division_and_failure() {
        let p = &(&nu(1) + &c(1)) * &(&nu(2) - &nu(1));
        let q = p.div_exact(&(&nu(1) + &c(1))).unwrap();
        assert_eq!(q, &nu(2) - &nu(1));
        assert!(p.div_exact(&(&nu(1) + &c(2))).is_none());
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let common = &(&nu(1).scale(&int(2)) + &c(1)) * &(&nu(1) + &nu(2));
        let a = &common * &(&nu(3) - &c(1));
        let b = &common * &(&nu(1) + &nu(3));
        let g = ParamPoly::gcd(&a, &b);
        assert_eq!(g, common.monic());
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let a = &nu(1) + &c(1);
        let b = &nu(1) + &c(2);
        assert!(ParamPoly::gcd(&a, &b).is_one());
        assert!(ParamPoly::gcd(&nu(1), &nu(2)).is_one());
    }

    #[test]
    fn gcd_with_powers() {
        let f = &nu(1) + &nu(2);
        let a = &f.pow(3) * &nu(2);
        let b = &f.pow(2) * &(&nu(1) - &c(3));
        assert_eq!(ParamPoly::gcd(&a, &b), f.pow(2).monic());
    }

    #[test]
    fn display_is_readable() {
        let p = &(&nu(1).pow(2).scale(&rat(3, 2)) - &nu(2)) + &c(1);
        assert_eq!(p.to_string(), "3/2 nu1^2 - nu2 + 1");
    }

    #[test]
    fn param_names_parse() {
        assert_eq!(Param::parse("nu12"), Some(Param::Nu(12)));
        assert_eq!(Param::parse("k"), Some(Param::K));
        assert_eq!(Param::parse("nu0"), None);
        assert_eq!(Param::parse("nux"), None);
    }
}
