use alloc::string::String;
use core::fmt;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    DivisionByZero,
    NotCoprime { k: i64, modulus: u64 },
    InvalidGroup(String),
    NotMonomial { order: usize },
    InvalidSubgroup(String),
    Unsupported(String),
    ZeroComponent { index: usize },
    LookupFailed(String),
    NotInField(String),
    NotGenerator(String),
    NonAbelian,
    OutsideFragment(String),
    NotPositiveDefinite,
    SingularMatrix,
    ReciprocityTableRequired,
    MissingLocalGenerator(u64),
    InvalidInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "inversion of zero"),
            Error::NotCoprime { k, modulus } => write!(f, "{k} is not coprime to {modulus}"),
            Error::InvalidGroup(s) => write!(f, "invalid group: {s}"),
            Error::NotMonomial { order } => {
                write!(f, "group not monomial within bound (order {order})")
            }
            Error::InvalidSubgroup(s) => write!(f, "invalid subgroup or quotient: {s}"),
            Error::Unsupported(s) => write!(f, "unsupported: {s}"),
            Error::ZeroComponent { index } => write!(f, "component {index} is zero"),
            Error::LookupFailed(s) => write!(f, "character lookup failed: {s}"),
            Error::NotInField(s) => write!(f, "element not in the requested field: {s}"),
            Error::NotGenerator(s) => write!(f, "b is not a generator: {s}"),
            Error::NonAbelian => write!(f, "undecidable in this artifact: group is non-abelian"),
            Error::OutsideFragment(s) => write!(f, "outside decidable fragment: {s}"),
            Error::NotPositiveDefinite => write!(f, "form is not positive definite"),
            Error::SingularMatrix => write!(f, "matrix is singular"),
            Error::ReciprocityTableRequired => write!(f, "reciprocity table required"),
            Error::MissingLocalGenerator(l) => write!(f, "missing local generator at {l}"),
            Error::InvalidInput(s) => write!(f, "invalid input: {s}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
