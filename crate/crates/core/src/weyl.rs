//! Differential operators with Laurent polynomial coefficients.
//!
//! Every operator is stored in normal order, `sum c * x^a * d^b`, with all
//! multiplications to the left of all derivatives. Normal form is unique, so
//! two operators are equal exactly when their term maps are equal.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exact::{write_monomial, write_term, Exponent, LaurentPoly, Param, ParamScalar, Rational, Vars};

/// Normal-ordered element of the Weyl algebra over Laurent coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylOp {
    vars: Vars,
    // keyed by (derivative exponents, coordinate exponents)
    terms: BTreeMap<(Exponent, Exponent), ParamScalar>,
}

/// Per-variable exponents `s_j` of a formal gauge factor `g = prod z_j^{s_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeExponent(pub Vec<ParamScalar>);

impl GaugeExponent {
    pub fn trivial(n: usize) -> Self {
        GaugeExponent(vec![ParamScalar::zero(); n])
    }

    pub fn inverse(&self) -> Self {
        GaugeExponent(self.0.iter().map(|s| -s).collect())
    }
}

fn falling(m: i32, k: u32) -> i128 {
    (0..k as i32).fold(1i128, |acc, t| acc * (m - t) as i128)
}

fn binomial(n: u32, k: u32) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

fn int_rational(v: i128) -> Rational {
    Rational::from_integer(v.into())
}

impl WeylOp {
    pub fn zero(vars: &Vars) -> Self {
        WeylOp { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn identity(vars: &Vars) -> Self {
        WeylOp::scalar(vars, ParamScalar::one())
    }

    pub fn scalar(vars: &Vars, c: ParamScalar) -> Self {
        let n = vars.len();
        WeylOp::term(vars, Exponent::zero(n), Exponent::zero(n), c)
    }

    /// The single term `c * x^x * d^d`.
    pub fn term(vars: &Vars, x: Exponent, d: Exponent, c: ParamScalar) -> Self {
        assert_eq!(x.0.len(), vars.len());
        assert_eq!(d.0.len(), vars.len());
        assert!(d.is_nonnegative(), "derivative orders must be nonnegative");
        let mut op = WeylOp::zero(vars);
        op.add_term(d, x, c);
        op
    }

    /// Multiplication by `vars[i]`.
    pub fn x(vars: &Vars, i: usize) -> Self {
        let n = vars.len();
        WeylOp::term(vars, Exponent::unit(n, i), Exponent::zero(n), ParamScalar::one())
    }

    /// Partial derivative in `vars[i]`.
    pub fn d(vars: &Vars, i: usize) -> Self {
        let n = vars.len();
        WeylOp::term(vars, Exponent::zero(n), Exponent::unit(n, i), ParamScalar::one())
    }

    /// Multiplication by a Laurent polynomial.
    pub fn multiplication(p: &LaurentPoly) -> Self {
        let vars = p.vars();
        let mut op = WeylOp::zero(vars);
        for (e, c) in p.terms() {
            op.add_term(Exponent::zero(vars.len()), e.clone(), c.clone());
        }
        op
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    /// Terms as `(x exponent, derivative exponent, coefficient)`.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Exponent, &ParamScalar)> {
        self.terms.iter().map(|((d, x), c)| (x, d, c))
    }

    pub fn coeff(&self, x: &Exponent, d: &Exponent) -> ParamScalar {
        self.terms.get(&(d.clone(), x.clone())).cloned().unwrap_or_default()
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

    /// Highest total derivative order among the terms.
    pub fn order(&self) -> i32 {
        self.terms.keys().map(|(d, _)| d.degree()).max().unwrap_or(0)
    }

    /// The part of the operator whose terms have total derivative order `k`.
    pub fn part_of_order(&self, k: i32) -> WeylOp {
        WeylOp {
            vars: self.vars.clone(),
            terms: self.terms.iter().filter(|((d, _), _)| d.degree() == k).map(|(key, c)| (key.clone(), c.clone())).collect(),
        }
    }

    fn add_term(&mut self, d: Exponent, x: Exponent, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((d, x)) {
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

    pub fn scale(&self, c: &ParamScalar) -> WeylOp {
        if c.is_zero() {
            return WeylOp::zero(&self.vars);
        }
        WeylOp { vars: self.vars.clone(), terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn checked_compose(&self, other: &WeylOp) -> Result<WeylOp> {
        self.vars.check_same(&other.vars)?;
        Ok(self.compose_unchecked(other))
    }

    fn compose_unchecked(&self, other: &WeylOp) -> WeylOp {
        let n = self.vars.len();
        let mut acc: HashMap<(Exponent, Exponent), ParamScalar> = HashMap::new();
        // per variable: (integer factor, x exponent, d exponent)
        let mut factors: Vec<Vec<(i128, i32, i32)>> = vec![Vec::new(); n];
        for ((da, xa), ca) in &self.terms {
            for ((db, xb), cb) in &other.terms {
                for (i, fi) in factors.iter_mut().enumerate() {
                    fi.clear();
                    let b = da.0[i] as u32;
                    let c = xb.0[i];
                    for k in 0..=b {
                        let f = binomial(b, k) * falling(c, k);
                        if f != 0 {
                            fi.push((f, xa.0[i] + c - k as i32, da.0[i] - k as i32 + db.0[i]));
                        }
                    }
                }
                if factors.iter().any(Vec::is_empty) {
                    continue;
                }
                let coeff = ca * cb;
                let mut idx = vec![0usize; n];
                loop {
                    let mut f = 1i128;
                    let mut x = Vec::with_capacity(n);
                    let mut d = Vec::with_capacity(n);
                    for i in 0..n {
                        let (fi, xi, di) = factors[i][idx[i]];
                        f *= fi;
                        x.push(xi);
                        d.push(di);
                    }
                    let t = if f == 1 { coeff.clone() } else { coeff.scale(&int_rational(f)) };
                    let key = (Exponent(d), Exponent(x));
                    match acc.get_mut(&key) {
                        Some(v) => *v = &*v + &t,
                        None => {
                            acc.insert(key, t);
                        }
                    }
                    // odometer over the per-variable expansions
                    let mut i = 0;
                    loop {
                        if i == n {
                            break;
                        }
                        idx[i] += 1;
                        if idx[i] < factors[i].len() {
                            break;
                        }
                        idx[i] = 0;
                        i += 1;
                    }
                    if i == n {
                        break;
                    }
                }
            }
        }
        WeylOp { vars: self.vars.clone(), terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// `self o other - other o self`.
    pub fn commutator(&self, other: &WeylOp) -> Result<WeylOp> {
        Ok(&self.checked_compose(other)? - &other.checked_compose(self)?)
    }

    pub fn pow(&self, e: u32) -> WeylOp {
        let mut acc = WeylOp::identity(&self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn checked_apply(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        self.vars.check_same(p.vars())?;
        Ok(self.apply(p))
    }

    /// Applies the operator to a Laurent polynomial. Panics on a variable mismatch.
    pub fn apply(&self, p: &LaurentPoly) -> LaurentPoly {
        assert_eq!(&self.vars, p.vars(), "variable mismatch");
        // Summing rational-function coefficients is gcd-bound; work with cleared denominators.
        let (num, den) = p.clear_denominators();
        let out = self.apply_direct(&num);
        if den.is_one() {
            return out;
        }
        out.map_coeffs(|c| ParamScalar::from_fraction(c.numer().clone(), den.clone())).expect("nonzero denominator")
    }

    fn apply_direct(&self, p: &LaurentPoly) -> LaurentPoly {
        let n = self.vars.len();
        let mut acc: HashMap<Exponent, ParamScalar> = HashMap::new();
        for ((d, x), c) in &self.terms {
            for (m, q) in p.terms() {
                let mut f = 1i128;
                for i in 0..n {
                    f *= falling(m.0[i], d.0[i] as u32);
                    if f == 0 {
                        break;
                    }
                }
                if f == 0 {
                    continue;
                }
                let e = Exponent((0..n).map(|i| x.0[i] + m.0[i] - d.0[i]).collect());
                let mut t = c * q;
                if f != 1 {
                    t = t.scale(&int_rational(f));
                }
                match acc.get_mut(&e) {
                    Some(v) => *v = &*v + &t,
                    None => {
                        acc.insert(e, t);
                    }
                }
            }
        }
        LaurentPoly::from_terms(&self.vars, acc)
    }

    /// Conjugation `g o self o g^{-1}` by the formal gauge `g = prod x_j^{s_j}`,
    /// using `g d_j g^{-1} = d_j - s_j / x_j`.
    pub fn gauge_conjugate(&self, g: &GaugeExponent) -> Result<WeylOp> {
        let n = self.vars.len();
        if g.0.len() != n {
            return Err(Error::Dimension(format!("gauge has {} exponents for {} variables", g.0.len(), n)));
        }
        let shifted: Vec<WeylOp> = (0..n)
            .map(|j| {
                let mut inv = Exponent::zero(n);
                inv.0[j] = -1;
                &WeylOp::d(&self.vars, j) - &WeylOp::term(&self.vars, inv, Exponent::zero(n), g.0[j].clone())
            })
            .collect();
        Ok(self.substitute_derivatives(&shifted, &self.vars, |e| e.clone()))
    }

    /// Replaces each `d_j` by `images[j]` and each coordinate monomial via
    /// `map_x`, preserving the left-to-right order of every normal-ordered term.
    fn substitute_derivatives<F>(&self, images: &[WeylOp], target: &Vars, map_x: F) -> WeylOp
    where
        F: Fn(&Exponent) -> Exponent,
    {
        let n = images.len();
        let mut powers: Vec<Vec<WeylOp>> = images.iter().map(|im| vec![WeylOp::identity(target), im.clone()]).collect();
        let mut out = WeylOp::zero(target);
        for ((d, x), c) in &self.terms {
            let mut t = WeylOp::term(target, map_x(x), Exponent::zero(target.len()), c.clone());
            for j in 0..n {
                let k = d.0[j] as usize;
                if k == 0 {
                    continue;
                }
                while powers[j].len() <= k {
                    let next = &powers[j][powers[j].len() - 1] * &images[j];
                    powers[j].push(next);
                }
                t = &t * &powers[j][k];
            }
            out = &out + &t;
        }
        out
    }

    /// Change of variables `x_i = z_i^2`, i.e. `x_i -> z_i^2` and
    /// `d_{x_i} -> (1/2) z_i^{-1} d_{z_i}`, over the variable list `target`.
    pub fn square_change_of_vars(&self, target: &Vars) -> Result<WeylOp> {
        let n = self.vars.len();
        if target.len() != n {
            return Err(Error::Dimension("target variable count differs".into()));
        }
        let half = ParamScalar::ratio(1, 2);
        let images: Vec<WeylOp> = (0..n)
            .map(|j| {
                let mut inv = Exponent::zero(n);
                inv.0[j] = -1;
                WeylOp::term(target, inv, Exponent::unit(n, j), half.clone())
            })
            .collect();
        Ok(self.substitute_derivatives(&images, target, |e| Exponent(e.0.iter().map(|k| 2 * k).collect())))
    }

    /// The anti-automorphism exchanging `x_i` and `d_i`, term by term
    /// `x^a d^b -> x^b d^a`. Requires nonnegative exponents.
    pub fn transpose_x_d(&self) -> Result<WeylOp> {
        let mut out = WeylOp::zero(&self.vars);
        for ((d, x), c) in &self.terms {
            if !x.is_nonnegative() {
                return Err(Error::NegativeExponent);
            }
            out.add_term(x.clone(), d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn map_coeffs<F>(&self, mut f: F) -> Result<WeylOp>
    where
        F: FnMut(&ParamScalar) -> Result<ParamScalar>,
    {
        let mut out = WeylOp::zero(&self.vars);
        for ((d, x), c) in &self.terms {
            out.add_term(d.clone(), x.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn substitute_params(&self, values: &HashMap<Param, Rational>) -> Result<WeylOp> {
        self.map_coeffs(|c| c.substitute(values))
    }

    pub fn evaluate_params(&self, values: &HashMap<Param, Rational>) -> Result<WeylOp> {
        self.map_coeffs(|c| c.evaluate(values).map(ParamScalar::from_rational))
    }

    /// Same operator under positionally renamed variables.
    pub fn rename(&self, vars: &Vars) -> WeylOp {
        assert_eq!(vars.len(), self.vars.len());
        WeylOp { vars: vars.clone(), terms: self.terms.clone() }
    }

    /// Printed terms, one string per normal-ordered term group.
    pub fn term_strings(&self) -> Vec<String> {
        self.terms.iter().rev().map(|((d, x), c)| WeylOp::term(&self.vars, x.clone(), d.clone(), c.clone()).to_string()).collect()
    }
}

impl Add for &WeylOp {
    type Output = WeylOp;
    fn add(self, rhs: &WeylOp) -> WeylOp {
        assert_eq!(self.vars, rhs.vars, "variable mismatch");
        let mut out = self.clone();
        for ((d, x), c) in &rhs.terms {
            out.add_term(d.clone(), x.clone(), c.clone());
        }
        out
    }
}

impl Sub for &WeylOp {
    type Output = WeylOp;
    fn sub(self, rhs: &WeylOp) -> WeylOp {
        assert_eq!(self.vars, rhs.vars, "variable mismatch");
        let mut out = self.clone();
        for ((d, x), c) in &rhs.terms {
            out.add_term(d.clone(), x.clone(), -c);
        }
        out
    }
}

impl Neg for &WeylOp {
    type Output = WeylOp;
    fn neg(self) -> WeylOp {
        self.scale(&ParamScalar::int(-1))
    }
}

/// Composition; panics when the variable lists differ.
impl Mul for &WeylOp {
    type Output = WeylOp;
    fn mul(self, rhs: &WeylOp) -> WeylOp {
        assert_eq!(self.vars, rhs.vars, "variable mismatch");
        self.compose_unchecked(rhs)
    }
}

macro_rules! forward_owned_weyl {
    ($tr:ident, $m:ident) => {
        impl $tr for WeylOp {
            type Output = WeylOp;
            fn $m(self, rhs: WeylOp) -> WeylOp {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned_weyl!(Add, add);
forward_owned_weyl!(Sub, sub);
forward_owned_weyl!(Mul, mul);

impl fmt::Display for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((d, x), c) in self.terms.iter().rev() {
            let has_mono = x.0.iter().chain(&d.0).any(|&k| k != 0);
            write_term(f, &mut first, c, has_mono, |f| {
                let wrote = write_monomial(f, &self.vars, &x.0)?;
                let mut sep = wrote;
                for (i, &k) in d.0.iter().enumerate() {
                    if k == 0 {
                        continue;
                    }
                    if sep {
                        write!(f, " ")?;
                    }
                    sep = true;
                    write!(f, "d{}", i + 1)?;
                    if k != 1 {
                        write!(f, "^{k}")?;
                    }
                }
                Ok(())
            })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_var() -> Vars {
        Vars::new(["x"])
    }

    fn nu() -> ParamScalar {
        ParamScalar::nu(1)
    }

    #[test]
    fn leibniz_base_case() {
        let v = one_var();
        let lhs = &WeylOp::d(&v, 0) * &WeylOp::x(&v, 0);
        let rhs = &(&WeylOp::x(&v, 0) * &WeylOp::d(&v, 0)) + &WeylOp::identity(&v);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bargmann_lowering_raising_bracket_is_twice_zero() {
        let v = one_var();
        let x = WeylOp::x(&v, 0);
        let d = WeylOp::d(&v, 0);
        let two_nu = nu().scale(&crate::exact::int(2));
        let plus = &(&(&x * &x) * &d) + &WeylOp::term(&v, Exponent(vec![1]), Exponent(vec![0]), two_nu.clone());
        let zero = &(&x * &d) + &WeylOp::scalar(&v, nu());
        let br = d.commutator(&plus).unwrap();
        assert_eq!(br, zero.scale(&ParamScalar::int(2)));
        assert_eq!(br, &(&x * &d).scale(&ParamScalar::int(2)) + &WeylOp::scalar(&v, two_nu));
    }

    #[test]
    fn identity_composition() {
        let v = Vars::indexed("x", 2);
        let a = &(&WeylOp::x(&v, 0) * &WeylOp::d(&v, 1)) + &WeylOp::scalar(&v, nu());
        assert_eq!(&a * &WeylOp::identity(&v), a);
        assert_eq!(&WeylOp::identity(&v) * &a, a);
    }

    #[test]
    fn mismatched_variables_error() {
        let a = WeylOp::x(&Vars::indexed("x", 2), 0);
        let b = WeylOp::x(&Vars::indexed("z", 2), 0);
        assert!(matches!(a.checked_compose(&b), Err(Error::VariableMismatch { .. })));
        assert!(a.commutator(&b).is_err());
    }

    #[test]
    fn bg_lowering_on_x() {
        let v = one_var();
        let x = WeylOp::x(&v, 0);
        let d = WeylOp::d(&v, 0);
        let two_nu = nu().scale(&crate::exact::int(2));
        let lowering = &(&x * &(&d * &d)) + &d.scale(&two_nu);
        let p = LaurentPoly::var(&v, 0);
        assert_eq!(lowering.apply(&p), LaurentPoly::constant(&v, two_nu));
        assert!(lowering.apply(&LaurentPoly::zero(&v)).is_zero());
    }

    #[test]
    fn total_derivative_kills_translation_invariant_cube() {
        let v = Vars::indexed("x", 2);
        let diff = &LaurentPoly::var(&v, 0) - &LaurentPoly::var(&v, 1);
        let p = diff.pow(3);
        let lowering = &WeylOp::d(&v, 0) + &WeylOp::d(&v, 1);
        assert!(lowering.apply(&p).is_zero());
    }

    #[test]
    fn gauge_of_single_derivative() {
        let v = one_var();
        let s = ParamScalar::nu(1);
        let op = WeylOp::d(&v, 0).gauge_conjugate(&GaugeExponent(vec![s.clone()])).unwrap();
        let expected = &WeylOp::d(&v, 0) - &WeylOp::term(&v, Exponent(vec![-1]), Exponent(vec![0]), s);
        assert_eq!(op, expected);
        let same = WeylOp::d(&v, 0).gauge_conjugate(&GaugeExponent::trivial(1)).unwrap();
        assert_eq!(same, WeylOp::d(&v, 0));
    }

    #[test]
    fn square_change_of_euler_operator() {
        let v = one_var();
        let z = Vars::new(["z"]);
        let euler = &WeylOp::x(&v, 0) * &WeylOp::d(&v, 0);
        let changed = euler.square_change_of_vars(&z).unwrap();
        let expected = (&WeylOp::x(&z, 0) * &WeylOp::d(&z, 0)).scale(&ParamScalar::ratio(1, 2));
        assert_eq!(changed, expected);
        let c = WeylOp::scalar(&v, nu());
        assert_eq!(c.square_change_of_vars(&z).unwrap(), WeylOp::scalar(&z, nu()));
    }

    #[test]
    fn negative_exponents_compose() {
        // d o x^-1 = x^-1 d - x^-2
        let v = one_var();
        let inv = WeylOp::term(&v, Exponent(vec![-1]), Exponent(vec![0]), ParamScalar::one());
        let lhs = &WeylOp::d(&v, 0) * &inv;
        let rhs = &(&inv * &WeylOp::d(&v, 0)) - &WeylOp::term(&v, Exponent(vec![-2]), Exponent(vec![0]), ParamScalar::one());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_puts_derivatives_last() {
        let v = Vars::indexed("x", 1);
        let op = &(&(&WeylOp::x(&v, 0) * &WeylOp::x(&v, 0)) * &WeylOp::d(&v, 0))
            + &WeylOp::term(&v, Exponent(vec![1]), Exponent(vec![0]), nu().scale(&crate::exact::int(2)));
        assert_eq!(op.to_string(), "x1^2 d1 + 2 * nu1 * x1");
    }
}
