//! Exact arithmetic: rationals, parameter polynomials, rational functions in
//! the parameters and Laurent polynomials over them.

mod laurent;
pub mod linalg;
mod mpoly;
mod scalar;

pub use laurent::{monomials_of_degree, Exponent, LaurentPoly, Vars};
pub(crate) use laurent::{write_monomial, write_term};
pub use linalg::ScalarMatrix;
pub use mpoly::{int, rat, Monomial, Param, ParamPoly, Rational};
pub use scalar::ParamScalar;
