//! Exact symbolic models of the higher-rank Racah algebra.
//!
//! Operators are normal-ordered elements of a Weyl algebra with coefficients
//! that are rational functions of the parameters `nu1..nun`; every identity
//! is checked by comparing normal forms, so a passing check is a proof for
//! the given `n` (and degree, where one is involved).

pub mod error;
pub mod exact;
pub mod grammar;
pub mod harmonics;
pub mod racah;
pub mod reduced;
pub mod report;
pub mod su11;
pub mod transforms;
pub mod weyl;

pub use error::{Error, Result};
pub use exact::{LaurentPoly, Param, ParamScalar, Rational, ScalarMatrix, Vars};
pub use report::{IdentityCheck, ReportSummary, Specialization, VerificationReport};
pub use su11::{ModelKind, RealizationTriple, Subset};
pub use weyl::{GaugeExponent, WeylOp};
