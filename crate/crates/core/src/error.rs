use alloc::string::String;
use core::fmt;

/// Errors raised by the library.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    InvalidField(String),
    Parse(String),
    DivisionByZero,
    NotSixthPowerFree,
    NotCoprime,
    NoZeta3,
    DegreeTooLarge(usize),
    DegenerateCurve(String),
    HypothesisViolated(String),
    PreconditionUnmet(String),
    InfinitePoint,
    ZeroFunction,
    SearchTooLarge { estimate: u64 },
    GenusTooLarge(u32),
    TypeNotCovered,
    NoRationalPlace,
    NotOnCurve,
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidField(s) => write!(f, "invalid field: {s}"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NotSixthPowerFree => write!(f, "polynomial has a factor of multiplicity >= 6"),
            Error::NotCoprime => write!(f, "arguments are not coprime"),
            Error::NoZeta3 => write!(f, "the base field has no primitive cube root of unity"),
            Error::DegreeTooLarge(d) => write!(f, "degree {d} is too large"),
            Error::DegenerateCurve(s) => write!(f, "degenerate curve: {s}"),
            Error::HypothesisViolated(s) => write!(f, "hypothesis violated: {s}"),
            Error::PreconditionUnmet(s) => write!(f, "precondition unmet: {s}"),
            Error::InfinitePoint => write!(f, "operation undefined at the point at infinity"),
            Error::ZeroFunction => write!(f, "zero function has no divisor"),
            Error::SearchTooLarge { estimate } => write!(f, "search space too large (about {estimate} candidates)"),
            Error::GenusTooLarge(g) => write!(f, "genus {g} exceeds the supported range"),
            Error::TypeNotCovered => write!(f, "input is not one of the ten covered types"),
            Error::NoRationalPlace => write!(f, "no rational base place over the current field"),
            Error::NotOnCurve => write!(f, "point does not lie on the curve"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
