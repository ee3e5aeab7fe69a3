//! The Bargmann and Barut-Girardello realizations of su(1,1) on subsets of
//! the tensor factors, and their Casimirs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Exponent, ParamScalar, Vars};
use crate::report::{IdentityCheck, Specialization, VerificationReport};
use crate::weyl::WeylOp;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModelKind {
    /// `K+ = x^2 d + 2 nu x`, `K- = d`, `K0 = x d + nu`.
    Bargmann,
    /// `L+ = x`, `L- = x d^2 + 2 nu d`, `L0 = x d + nu`.
    BarutGirardello,
}

impl ModelKind {
    pub const ALL: [ModelKind; 2] = [ModelKind::Bargmann, ModelKind::BarutGirardello];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Bargmann => "bargmann",
            ModelKind::BarutGirardello => "bg",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bargmann" => Ok(ModelKind::Bargmann),
            "bg" | "barut-girardello" | "barutgirardello" => Ok(ModelKind::BarutGirardello),
            _ => Err(Error::InvalidArgument(format!("unknown model `{s}`"))),
        }
    }
}

/// A nonempty set of 1-based tensor-factor indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(Vec<usize>);

impl Subset {
    pub fn new<I: IntoIterator<Item = usize>>(n: usize, items: I) -> Result<Self> {
        let mut v: Vec<usize> = items.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            return Err(Error::EmptySubset);
        }
        if let Some(&bad) = v.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::IndexOutOfRange { index: bad, n });
        }
        Ok(Subset(v))
    }

    /// `{1, ..., l}`.
    pub fn range(l: usize) -> Self {
        assert!(l >= 1);
        Subset((1..=l).collect())
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i >= 1);
        Subset(vec![i])
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn max(&self) -> usize {
        *self.0.last().expect("nonempty")
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    pub fn is_disjoint(&self, other: &Subset) -> bool {
        self.0.iter().all(|&i| !other.contains(i))
    }

    pub fn union(&self, other: &Subset) -> Subset {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        v.dedup();
        Subset(v)
    }

    /// Every nonempty subset of `{1..n}`, ordered by size then lexicographically.
    pub fn all(n: usize) -> Vec<Subset> {
        let mut out: Vec<Subset> =
            (1u32..(1u32 << n)).map(|mask| Subset((0..n).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect())).collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.0.cmp(&b.0)));
        out
    }

    /// Parses `1,2,3` (braces optional).
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        let items = body
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::InvalidArgument(format!("bad subset element `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        Subset::new(n, items)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Ambient variables `x1..xn` shared by every operator of a model.
pub fn model_vars(n: usize) -> Vars {
    Vars::indexed("x", n)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealizationTriple {
    pub plus: WeylOp,
    pub minus: WeylOp,
    pub zero: WeylOp,
    pub subset: Subset,
    pub kind: ModelKind,
}

impl RealizationTriple {
    /// `zero^2 - zero - plus minus`.
    pub fn casimir(&self) -> WeylOp {
        &(&(&self.zero * &self.zero) - &self.zero) - &(&self.plus * &self.minus)
    }
}

/// Single-factor generators `(plus, minus, zero)` acting on variable `i` (0-based).
fn factor_generators(vars: &Vars, i: usize, nu: &ParamScalar, kind: ModelKind) -> [WeylOp; 3] {
    let n = vars.len();
    let e = |x: i32, d: i32| {
        let mut xe = Exponent::zero(n);
        let mut de = Exponent::zero(n);
        xe.0[i] = x;
        de.0[i] = d;
        (xe, de)
    };
    let t = |x, d, c: ParamScalar| {
        let (xe, de) = e(x, d);
        WeylOp::term(vars, xe, de, c)
    };
    let one = ParamScalar::one();
    let two_nu = nu.scale(&crate::exact::int(2));
    let zero = &t(1, 1, one.clone()) + &t(0, 0, nu.clone());
    match kind {
        ModelKind::Bargmann => [&t(2, 1, one.clone()) + &t(1, 0, two_nu), t(0, 1, one), zero],
        ModelKind::BarutGirardello => [t(1, 0, one.clone()), &t(1, 2, one) + &t(0, 1, two_nu), zero],
    }
}

/// The su(1,1) generators summed over `subset`, in `n` ambient variables.
pub fn make_realization(n: usize, subset: &Subset, kind: ModelKind) -> Result<RealizationTriple> {
    make_realization_with(n, subset, kind, &Specialization::default())
}

pub fn make_realization_with(n: usize, subset: &Subset, kind: ModelKind, spec: &Specialization) -> Result<RealizationTriple> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    if subset.max() > n {
        return Err(Error::IndexOutOfRange { index: subset.max(), n });
    }
    let vars = model_vars(n);
    let mut plus = WeylOp::zero(&vars);
    let mut minus = WeylOp::zero(&vars);
    let mut zero = WeylOp::zero(&vars);
    for &i in subset.indices() {
        let nu = spec.scalar(&ParamScalar::nu(i))?;
        let [p, m, z] = factor_generators(&vars, i - 1, &nu, kind);
        plus = &plus + &p;
        minus = &minus + &m;
        zero = &zero + &z;
    }
    Ok(RealizationTriple { plus, minus, zero, subset: subset.clone(), kind })
}

/// The intermediate Casimir `C_A`.
pub fn casimir(n: usize, subset: &Subset, kind: ModelKind) -> Result<WeylOp> {
    Ok(make_realization(n, subset, kind)?.casimir())
}

/// Checks `[zero, plus] = plus`, `[zero, minus] = -minus`, `[minus, plus] = 2 zero`.
pub fn verify_su11(t: &RealizationTriple) -> VerificationReport {
    let n = t.zero.vars().len();
    let mut r = VerificationReport::new("su11 brackets", n, Some(t.kind)).with_subsets([&t.subset]);
    let zp = &(&t.zero * &t.plus) - &(&t.plus * &t.zero);
    let zm = &(&t.zero * &t.minus) - &(&t.minus * &t.zero);
    let mp = &(&t.minus * &t.plus) - &(&t.plus * &t.minus);
    r.push(IdentityCheck::ops("[zero,plus] = plus", zp, t.plus.clone()));
    r.push(IdentityCheck::ops("[zero,minus] = -minus", zm, -&t.minus));
    r.push(IdentityCheck::ops("[minus,plus] = 2 zero", mp, t.zero.scale(&ParamScalar::int(2))));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_op;

    #[test]
    fn single_bargmann_triple() {
        let t = make_realization(1, &Subset::singleton(1), ModelKind::Bargmann).unwrap();
        let v = model_vars(1);
        assert_eq!(t.plus, parse_op("x1^2 d1 + 2 nu1 x1", &v).unwrap());
        assert_eq!(t.minus, parse_op("d1", &v).unwrap());
        assert_eq!(t.zero, parse_op("x1 d1 + nu1", &v).unwrap());
    }

    #[test]
    fn bg_plus_is_sum_of_coordinates() {
        let t = make_realization(2, &Subset::range(2), ModelKind::BarutGirardello).unwrap();
        assert_eq!(t.plus, parse_op("x1 + x2", &model_vars(2)).unwrap());
    }

    #[test]
    fn zero_part_of_middle_factor() {
        let t = make_realization(3, &Subset::singleton(2), ModelKind::Bargmann).unwrap();
        assert_eq!(t.zero, parse_op("x2 d2 + nu2", &model_vars(3)).unwrap());
    }

    #[test]
    fn singleton_casimirs_are_constant() {
        for kind in ModelKind::ALL {
            let c = casimir(3, &Subset::singleton(2), kind).unwrap();
            assert_eq!(c, parse_op("nu2 (nu2 - 1)", &model_vars(3)).unwrap());
        }
    }

    #[test]
    fn pair_casimir_closed_form() {
        let v = model_vars(3);
        let c = casimir(3, &Subset::new(3, [1, 3]).unwrap(), ModelKind::Bargmann).unwrap();
        let expected = parse_op("-(x1 - x3)^2 d1 d3 + 2 nu3 (x1 - x3) d1 - 2 nu1 (x1 - x3) d3 + (nu1 + nu3)(nu1 + nu3 - 1)", &v).unwrap();
        assert_eq!(c, expected);
    }

    #[test]
    fn realizations_satisfy_brackets() {
        for kind in ModelKind::ALL {
            for a in Subset::all(3) {
                let t = make_realization(3, &a, kind).unwrap();
                assert!(verify_su11(&t).pass(), "{kind} {a}");
            }
        }
    }

    #[test]
    fn swapped_triple_fails_with_minus_four_zero() {
        let mut t = make_realization(2, &Subset::range(2), ModelKind::Bargmann).unwrap();
        std::mem::swap(&mut t.plus, &mut t.minus);
        let r = verify_su11(&t);
        assert!(!r.pass());
        let check = r.checks.iter().find(|c| c.name.starts_with("[minus,plus]")).unwrap();
        assert_eq!(check.residual, t.zero.scale(&ParamScalar::int(-4)).into());
    }

    #[test]
    fn casimir_is_central_in_its_realization() {
        for kind in ModelKind::ALL {
            let t = make_realization(2, &Subset::range(2), kind).unwrap();
            let c = t.casimir();
            for g in [&t.plus, &t.minus, &t.zero] {
                assert!(c.commutator(g).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn subset_errors() {
        assert_eq!(Subset::new(3, []), Err(Error::EmptySubset));
        assert_eq!(Subset::new(3, [4]), Err(Error::IndexOutOfRange { index: 4, n: 3 }));
        assert_eq!(Subset::parse(4, "{1, 3}").unwrap().to_string(), "{1,3}");
        assert_eq!(Subset::all(3).len(), 7);
    }
}
