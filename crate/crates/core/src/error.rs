use alloc::string::String;
use core::fmt;

/// Errors raised by the algebraic constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    DegreeMismatch { expected: usize, found: usize },
    ElementCapExceeded { cap: usize },
    NotPCentric,
    NotPrime(u32),
    ImageNotContained,
    NotAnObject,
    CategoryNotConnected,
    CosetCapExceeded { cap: usize },
    SurjectivityFailure,
    SectionUnavailable,
    SectionMismatch,
    RestrictionUndefined,
    InputNotExact(String),
    DegreeCapExceeded { rows: usize, cap: usize },
    NotAnAlgebra,
    ConjugacyConditionViolated,
    NotASubgroupChain,
    NotLocallyConstant,
    NotFunctorial(String),
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegreeMismatch { expected, found } => {
                write!(f, "permutation degree mismatch: expected {}, found {}", expected, found)
            }
            Error::ElementCapExceeded { cap } => write!(f, "group closure exceeds element cap {}", cap),
            Error::NotPCentric => write!(f, "subgroup is not p-centric"),
            Error::NotPrime(p) => write!(f, "{} is not prime", p),
            Error::ImageNotContained => write!(f, "image of the restricted source is not contained in the target"),
            Error::NotAnObject => write!(f, "subgroup is not an object of the linking system"),
            Error::CategoryNotConnected => write!(f, "category is not connected"),
            Error::CosetCapExceeded { cap } => write!(f, "coset enumeration exceeded cap {}", cap),
            Error::SurjectivityFailure => write!(f, "Aut_L(S) does not surject onto Gamma"),
            Error::SectionUnavailable => write!(f, "no automorphism of S lies over some coset"),
            Error::SectionMismatch => write!(f, "section does not match the subgroup or category"),
            Error::RestrictionUndefined => write!(f, "restriction undefined on a non-object"),
            Error::InputNotExact(w) => write!(f, "input sequence is not exact: {}", w),
            Error::DegreeCapExceeded { rows, cap } => {
                write!(f, "degree needs {} rows, above the cap {}", rows, cap)
            }
            Error::NotAnAlgebra => write!(f, "coefficient system carries no compatible product"),
            Error::ConjugacyConditionViolated => write!(f, "conjugating element does not carry H into K"),
            Error::NotASubgroupChain => write!(f, "subgroups do not form a chain H <= K"),
            Error::NotLocallyConstant => write!(f, "coefficient system is not locally constant"),
            Error::NotFunctorial(w) => write!(f, "not functorial: {}", w),
            Error::Invalid(w) => write!(f, "invalid input: {}", w),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

impl core::error::Error for Error {}
