//! Structured pass/fail records of exact identity checks.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::exact::{LaurentPoly, Param, ParamScalar, Rational, ScalarMatrix};
use crate::su11::ModelKind;
use crate::weyl::WeylOp;

/// Values substituted for some of the parameters before a check is run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Specialization(pub BTreeMap<Param, Rational>);

impl Specialization {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> std::collections::HashMap<Param, Rational> {
        self.0.iter().map(|(k, v)| (*k, v.clone())).collect()
    }

    pub fn scalar(&self, s: &ParamScalar) -> Result<ParamScalar> {
        if self.is_empty() {
            Ok(s.clone())
        } else {
            s.substitute(&self.values())
        }
    }

    pub fn op(&self, op: &WeylOp) -> Result<WeylOp> {
        if self.is_empty() {
            Ok(op.clone())
        } else {
            op.substitute_params(&self.values())
        }
    }

    pub fn poly(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        if self.is_empty() {
            Ok(p.clone())
        } else {
            p.substitute_params(&self.values())
        }
    }

    pub fn entries(&self) -> Vec<(String, String)> {
        self.0.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }
}

/// Any exact object that can sit on either side of an identity.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Op(WeylOp),
    Poly(LaurentPoly),
    Matrix(ScalarMatrix),
    Scalar(ParamScalar),
}

impl Expr {
    pub fn is_zero(&self) -> bool {
        match self {
            Expr::Op(o) => o.is_zero(),
            Expr::Poly(p) => p.is_zero(),
            Expr::Matrix(m) => m.is_zero(),
            Expr::Scalar(s) => s.is_zero(),
        }
    }

    /// The printed nonzero terms (operator and polynomial terms, or matrix entries).
    pub fn terms(&self) -> Vec<String> {
        match self {
            Expr::Op(o) => o.term_strings(),
            Expr::Poly(p) => p.terms().rev().map(|(e, c)| LaurentPoly::monomial(p.vars(), e.clone(), c.clone()).to_string()).collect(),
            Expr::Matrix(m) => {
                let mut out = Vec::new();
                for i in 0..m.rows() {
                    for j in 0..m.cols() {
                        if !m.get(i, j).is_zero() {
                            out.push(format!("[{i},{j}] {}", m.get(i, j)));
                        }
                    }
                }
                out
            }
            Expr::Scalar(s) if s.is_zero() => Vec::new(),
            Expr::Scalar(s) => vec![s.to_string()],
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Op(o) => write!(f, "{o}"),
            Expr::Poly(p) => write!(f, "{p}"),
            Expr::Matrix(m) => write!(f, "{m}"),
            Expr::Scalar(s) => write!(f, "{s}"),
        }
    }
}

impl From<WeylOp> for Expr {
    fn from(o: WeylOp) -> Self {
        Expr::Op(o)
    }
}

impl From<LaurentPoly> for Expr {
    fn from(p: LaurentPoly) -> Self {
        Expr::Poly(p)
    }
}

impl From<ScalarMatrix> for Expr {
    fn from(m: ScalarMatrix) -> Self {
        Expr::Matrix(m)
    }
}

impl From<ParamScalar> for Expr {
    fn from(s: ParamScalar) -> Self {
        Expr::Scalar(s)
    }
}

/// One identity `left = right`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub name: String,
    pub left: Expr,
    pub right: Expr,
    pub residual: Expr,
}

impl IdentityCheck {
    pub fn pass(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn ops(name: impl Into<String>, left: WeylOp, right: WeylOp) -> Self {
        let residual = &left - &right;
        IdentityCheck { name: name.into(), left: left.into(), right: right.into(), residual: residual.into() }
    }

    pub fn polys(name: impl Into<String>, left: LaurentPoly, right: LaurentPoly) -> Self {
        let residual = &left - &right;
        IdentityCheck { name: name.into(), left: left.into(), right: right.into(), residual: residual.into() }
    }

    pub fn matrices(name: impl Into<String>, left: ScalarMatrix, right: ScalarMatrix) -> Self {
        let residual = &left - &right;
        IdentityCheck { name: name.into(), left: left.into(), right: right.into(), residual: residual.into() }
    }

    pub fn scalars(name: impl Into<String>, left: ParamScalar, right: ParamScalar) -> Self {
        let residual = &left - &right;
        IdentityCheck { name: name.into(), left: left.into(), right: right.into(), residual: residual.into() }
    }

    /// A check whose outcome is a bare condition, e.g. a count match.
    pub fn condition(name: impl Into<String>, left: i64, right: i64) -> Self {
        IdentityCheck::scalars(name, ParamScalar::int(left), ParamScalar::int(right))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub identity: String,
    pub n: usize,
    pub model: Option<ModelKind>,
    pub subsets: Vec<String>,
    pub specialization: Specialization,
    pub checks: Vec<IdentityCheck>,
    /// Computed quantities worth logging, such as normalization constants.
    pub records: Vec<(String, String)>,
}

impl VerificationReport {
    pub fn new(identity: impl Into<String>, n: usize, model: Option<ModelKind>) -> Self {
        VerificationReport {
            identity: identity.into(),
            n,
            model,
            subsets: Vec::new(),
            specialization: Specialization::default(),
            checks: Vec::new(),
            records: Vec::new(),
        }
    }

    pub fn with_subsets<I, S>(mut self, subsets: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        self.subsets = subsets.into_iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn with_specialization(mut self, spec: &Specialization) -> Self {
        self.specialization = spec.clone();
        self
    }

    pub fn push(&mut self, check: IdentityCheck) {
        self.checks.push(check);
    }

    pub fn record(&mut self, key: impl Into<String>, value: impl ToString) {
        self.records.push((key.into(), value.to_string()));
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(IdentityCheck::pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.pass())
    }

    pub fn summary(&self) -> ReportSummary {
        let mut residual_terms = Vec::new();
        for c in self.failures() {
            for t in c.residual.terms() {
                residual_terms.push(format!("{}: {}", c.name, t));
            }
        }
        ReportSummary {
            identity: self.identity.clone(),
            n: self.n,
            model: self.model.map(|m| m.name().to_string()),
            subsets: self.subsets.clone(),
            specialization: self.specialization.entries().into_iter().collect(),
            checks: self.checks.len(),
            pass: self.pass(),
            residual_terms,
            records: self.records.to_vec(),
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} (n={}", self.identity, self.n)?;
        if let Some(m) = self.model {
            write!(f, ", {}", m.name())?;
        }
        if !self.subsets.is_empty() {
            write!(f, ", {}", self.subsets.join(" "))?;
        }
        write!(f, ") {} checks", self.checks.len())?;
        for c in self.failures() {
            write!(f, "\n  {} residual: {}", c.name, c.residual)?;
        }
        for (k, v) in &self.records {
            write!(f, "\n  {k} = {v}")?;
        }
        Ok(())
    }
}

/// Serializable digest of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportSummary {
    pub identity: String,
    pub n: usize,
    pub model: Option<String>,
    pub subsets: Vec<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub specialization: BTreeMap<String, String>,
    pub checks: usize,
    pub pass: bool,
    pub residual_terms: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub records: Vec<(String, String)>,
}
