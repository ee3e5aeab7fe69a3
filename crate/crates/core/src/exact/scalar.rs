//! Rational functions in the parameters.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::mpoly::{Param, ParamPoly, Rational};
use crate::error::{Error, Result};

/// A quotient of parameter polynomials.
///
/// The fraction is kept reduced (full multivariate gcd) with a monic
/// denominator, so the representation is canonical. Equality still checks by
/// cross-multiplication when the stored forms differ.
#[derive(Clone, Debug, Eq)]
pub struct ParamScalar {
    num: ParamPoly,
    den: ParamPoly,
}

impl Default for ParamScalar {
    fn default() -> Self {
        ParamScalar::zero()
    }
}

impl PartialEq for ParamScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.num == other.num && self.den == other.den {
            return true;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl ParamScalar {
    pub fn zero() -> Self {
        ParamScalar { num: ParamPoly::zero(), den: ParamPoly::one() }
    }

    pub fn one() -> Self {
        ParamScalar::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        ParamScalar { num: ParamPoly::constant(r), den: ParamPoly::one() }
    }

    pub fn int(n: i64) -> Self {
        ParamScalar::from_rational(super::mpoly::int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        ParamScalar::from_rational(super::mpoly::rat(n, d))
    }

    pub fn param(p: Param) -> Self {
        ParamScalar { num: ParamPoly::param(p), den: ParamPoly::one() }
    }

    /// Shorthand for the symbol `nu_i`.
    pub fn nu(i: usize) -> Self {
        ParamScalar::param(Param::Nu(i))
    }

    pub fn from_poly(p: ParamPoly) -> Self {
        ParamScalar { num: p, den: ParamPoly::one() }
    }

    /// Builds `num / den`, reducing to canonical form.
    pub fn from_fraction(num: ParamPoly, den: ParamPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    /// Builds `num / prod(factors)` by trial division. Each non-constant factor
    /// must be irreducible, which keeps the result canonical without a gcd.
    pub fn from_factored(num: ParamPoly, factors: &[ParamPoly]) -> Result<Self> {
        let mut num = num;
        let mut den = ParamPoly::one();
        for f in factors {
            if let Some(c) = f.as_constant() {
                if c.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                num = num.scale(&c.recip());
            } else if let Some(q) = num.div_exact(f) {
                num = q;
            } else {
                den = &den * f;
            }
        }
        if num.is_zero() {
            return Ok(ParamScalar::zero());
        }
        Ok(Self::with_monic_den(num, den))
    }

    fn normalized(num: ParamPoly, den: ParamPoly) -> Self {
        if num.is_zero() {
            return ParamScalar::zero();
        }
        if let Some(c) = den.as_constant() {
            if c.is_one() {
                return ParamScalar { num, den };
            }
            return ParamScalar { num: num.scale(&c.recip()), den: ParamPoly::one() };
        }
        if let Some(q) = num.div_exact(&den) {
            return ParamScalar { num: q, den: ParamPoly::one() };
        }
        let g = ParamPoly::gcd(&num, &den);
        let (num, den) =
            if g.is_one() { (num, den) } else { (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides")) };
        Self::with_monic_den(num, den)
    }

    fn with_monic_den(num: ParamPoly, den: ParamPoly) -> Self {
        let lc = den.leading().expect("nonzero denominator").1.clone();
        if lc.is_one() {
            return ParamScalar { num, den };
        }
        if let Some(c) = den.as_constant() {
            return ParamScalar { num: num.scale(&c.recip()), den: ParamPoly::one() };
        }
        let inv = lc.recip();
        ParamScalar { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn numer(&self) -> &ParamPoly {
        &self.num
    }

    pub fn denom(&self) -> &ParamPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// True when the denominator is one.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn params(&self) -> Vec<Param> {
        let mut p = self.num.params();
        p.extend(self.den.params());
        p.sort_unstable();
        p.dedup();
        p
    }

    pub fn scale(&self, c: &Rational) -> ParamScalar {
        if c.is_zero() {
            return ParamScalar::zero();
        }
        ParamScalar { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<ParamScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::with_monic_den(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &ParamScalar) -> Result<ParamScalar> {
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, e: u32) -> ParamScalar {
        ParamScalar { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Rising factorial `(self)_m = self (self+1) ... (self+m-1)`.
    pub fn pochhammer(&self, m: u32) -> ParamScalar {
        let mut acc = ParamScalar::one();
        for i in 0..m {
            acc = &acc * &(self + &ParamScalar::int(i as i64));
        }
        acc
    }

    /// Partially substitutes rational values; unassigned parameters stay symbolic.
    pub fn substitute(&self, values: &HashMap<Param, Rational>) -> Result<ParamScalar> {
        let den = self.den.substitute(values);
        if den.is_zero() {
            return Err(Error::VanishingDenominator);
        }
        Ok(Self::normalized(self.num.substitute(values), den))
    }

    /// Evaluates with every occurring parameter assigned.
    pub fn evaluate(&self, values: &HashMap<Param, Rational>) -> Result<Rational> {
        let den = self.den.evaluate(values).map_err(Error::MissingParameter)?;
        let num = self.num.evaluate(values).map_err(Error::MissingParameter)?;
        if den.is_zero() {
            return Err(Error::VanishingDenominator);
        }
        Ok(num / den)
    }
}

impl From<Rational> for ParamScalar {
    fn from(r: Rational) -> Self {
        ParamScalar::from_rational(r)
    }
}

impl From<i64> for ParamScalar {
    fn from(n: i64) -> Self {
        ParamScalar::int(n)
    }
}

impl From<Param> for ParamScalar {
    fn from(p: Param) -> Self {
        ParamScalar::param(p)
    }
}

impl Add for &ParamScalar {
    type Output = ParamScalar;
    fn add(self, rhs: &ParamScalar) -> ParamScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return ParamScalar { num, den: self.den.clone() };
            }
            return ParamScalar::normalized(num, self.den.clone());
        }
        if self.den.is_one() {
            // gcd(a d + c, d) = gcd(c, d) = 1
            let num = &(&self.num * &rhs.den) + &rhs.num;
            return ParamScalar { num, den: rhs.den.clone() };
        }
        if rhs.den.is_one() {
            let num = &self.num + &(&rhs.num * &self.den);
            return ParamScalar { num, den: self.den.clone() };
        }
        let g = ParamPoly::gcd(&self.den, &rhs.den);
        let b = self.den.div_exact(&g).expect("gcd divides");
        let d = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d) + &(&rhs.num * &b);
        ParamScalar::normalized(num, &b * &rhs.den)
    }
}

impl Sub for &ParamScalar {
    type Output = ParamScalar;
    fn sub(self, rhs: &ParamScalar) -> ParamScalar {
        self + &(-rhs)
    }
}

impl Neg for &ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        ParamScalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: &ParamScalar) -> ParamScalar {
        if self.is_zero() || rhs.is_zero() {
            return ParamScalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return ParamScalar { num: &self.num * &rhs.num, den: ParamPoly::one() };
        }
        let g1 = ParamPoly::gcd(&self.num, &rhs.den);
        let g2 = ParamPoly::gcd(&rhs.num, &self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = rhs.den.div_exact(&g1).expect("gcd divides");
        let c = rhs.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        ParamScalar::with_monic_den(&a * &c, &b * &d)
    }
}

impl Div for &ParamScalar {
    type Output = ParamScalar;
    /// Panics on division by zero; see [`ParamScalar::checked_div`].
    fn div(self, rhs: &ParamScalar) -> ParamScalar {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ParamScalar {
            type Output = ParamScalar;
            fn $m(self, rhs: ParamScalar) -> ParamScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ParamScalar> for ParamScalar {
            type Output = ParamScalar;
            fn $m(self, rhs: &ParamScalar) -> ParamScalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        -&self
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::mpoly::{int, rat};

    fn nu(i: usize) -> ParamScalar {
        ParamScalar::nu(i)
    }

    fn vals(pairs: &[(usize, Rational)]) -> HashMap<Param, Rational> {
        pairs.iter().map(|(i, v)| (Param::Nu(*i), v.clone())).collect()
    }

    #[test]
    fn evaluates_nu_times_nu_minus_one() {
        let s = &nu(1) * &(&nu(1) - &ParamScalar::one());
        assert_eq!(s.evaluate(&vals(&[(1, rat(3, 2))])).unwrap(), rat(3, 4));
    }

    #[test]
    fn evaluates_ratio() {
        let two = ParamScalar::int(2);
        let s = &(&two * &nu(1)) / &(&two * &nu(2));
        assert_eq!(s.evaluate(&vals(&[(1, int(1)), (2, int(2))])).unwrap(), rat(1, 2));
    }

    #[test]
    fn pole_is_reported() {
        let s = &ParamScalar::one() / &(&(&ParamScalar::int(2) * &nu(1)) - &ParamScalar::one());
        assert_eq!(s.evaluate(&vals(&[(1, rat(1, 2))])), Err(Error::VanishingDenominator));
    }

    #[test]
    fn missing_parameter_is_reported() {
        let s = &nu(1) + &nu(2);
        assert_eq!(s.evaluate(&vals(&[(1, int(1))])), Err(Error::MissingParameter(Param::Nu(2))));
    }

    #[test]
    fn sums_cancel_common_factors() {
        // 1/(a) - 1/(a+1) = 1/(a(a+1))
        let a = &ParamScalar::int(2) * &nu(1);
        let a1 = &a + &ParamScalar::one();
        let lhs = &(&ParamScalar::one() / &a) - &(&ParamScalar::one() / &a1);
        let rhs = &ParamScalar::one() / &(&a * &a1);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.numer(), rhs.numer());
        assert_eq!(lhs.denom(), rhs.denom());
        // (a(a+1))/(a) reduces to a+1
        let q = &(&a * &a1) / &a;
        assert!(q.is_polynomial());
        assert_eq!(q, a1);
    }

    #[test]
    fn pochhammer_matches_product() {
        let a = &ParamScalar::int(2) * &nu(1);
        let p = a.pochhammer(3);
        let expected = &(&a * &(&a + &ParamScalar::one())) * &(&a + &ParamScalar::int(2));
        assert_eq!(p, expected);
        assert!(a.pochhammer(0).is_one());
    }

    #[test]
    fn display_fraction() {
        let s = &nu(1) / &nu(2);
        assert_eq!(s.to_string(), "(nu1)/(nu2)");
        let t = &ParamScalar::ratio(3, 2) / &(&nu(2) + &ParamScalar::one());
        assert_eq!(t.to_string(), "(3/2)/(nu2 + 1)");
    }
}
