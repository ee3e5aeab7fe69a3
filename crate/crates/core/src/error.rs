use thiserror::Error;

use crate::exact::Param;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("denominator vanishes at the given parameter values")]
    VanishingDenominator,
    #[error("no value supplied for parameter {0}")]
    MissingParameter(Param),
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable lists differ: [{left}] vs [{right}]")]
    VariableMismatch { left: String, right: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("negative exponents are not allowed here")]
    NegativeExponent,
    #[error("substitution image for `{0}` is not affine")]
    NonAffineImage(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial is not annihilated by the lowering operator")]
    NotHarmonic,
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("subsets {0} and {1} are neither nested nor disjoint")]
    UnsupportedPair(String, String),
    #[error("subsets of the triple are not pairwise disjoint")]
    OverlappingTriple,
    #[error("invalid basis label: {0}")]
    InvalidLabel(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("image is not a scalar multiple of the target")]
    NotProportional,
    #[error("polynomial does not factor into the expected product")]
    NotFactorizable,
    #[error("hypergeometric lower parameter degenerates at the given specialization")]
    DegenerateParameter,
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("linear system does not have a unique solution")]
    Underdetermined,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub type Result<T> = std::result::Result<T, Error>;
