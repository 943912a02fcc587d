use core::fmt;

/// Errors raised by the core crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    NotAnOddPrime(u64),
    /// Residues and integers, or residues modulo different primes, were combined.
    MixedModes,
    /// An operation required a different arithmetic mode than the matrix carries.
    WrongMode,
    ShapeMismatch {
        expected: usize,
        found: usize,
    },
    InvalidDimension(usize),
    /// Genericity guards kept failing; the modulus is likely too small for the instance.
    RetriesExhausted {
        what: &'static str,
    },
    UnsortedLengths,
    ZeroLength,
    CapExceeded {
        cap: usize,
    },
    /// The predicted verdict only applies when the jet lengths sum to at most the binomial.
    NotCovered,
    /// More free points than needed to reach the binomial; no prediction applies.
    Overpadded {
        total: usize,
        dimension: usize,
    },
    ModulusTooSmall {
        modulus: u64,
        degree: usize,
    },
    DegreeTooHighForModulus {
        modulus: u64,
        degree: usize,
    },
    EmptyFamily,
    InvalidJetLength(usize),
    SubsetCapExceeded {
        lines: usize,
        cap: usize,
    },
    /// Three or more of the lines pass through one point.
    ConcurrentLines,
    CoincidentLines,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotAnOddPrime(p) => write!(f, "{} is not an odd prime", p),
            Error::MixedModes => write!(f, "mixed arithmetic modes"),
            Error::WrongMode => write!(f, "matrix is in the wrong arithmetic mode"),
            Error::ShapeMismatch { expected, found } => {
                write!(f, "shape mismatch: expected {}, found {}", expected, found)
            }
            Error::InvalidDimension(n) => write!(f, "invalid ambient dimension {}", n),
            Error::RetriesExhausted { what } => {
                write!(f, "genericity guard for {} kept failing; retries exhausted", what)
            }
            Error::UnsortedLengths => write!(f, "jet lengths are not non-increasing"),
            Error::ZeroLength => write!(f, "jet lengths must be positive"),
            Error::CapExceeded { cap } => write!(f, "enumeration exceeded the cap of {}", cap),
            Error::NotCovered => write!(f, "jet lengths exceed the dimension of degree-d forms"),
            Error::Overpadded { total, dimension } => write!(
                f,
                "weight total {} exceeds the dimension {} of degree-d forms",
                total, dimension
            ),
            Error::ModulusTooSmall { modulus, degree } => {
                write!(f, "modulus {} must exceed degree {}", modulus, degree)
            }
            Error::DegreeTooHighForModulus { modulus, degree } => {
                write!(f, "polynomial degree {} is not below the modulus {}", degree, modulus)
            }
            Error::EmptyFamily => write!(f, "polynomial family is empty"),
            Error::InvalidJetLength(v) => write!(f, "invalid jet length {}", v),
            Error::SubsetCapExceeded { lines, cap } => {
                write!(f, "{} lines exceeds the subset cap of {}", lines, cap)
            }
            Error::ConcurrentLines => write!(f, "three or more lines are concurrent"),
            Error::CoincidentLines => write!(f, "two lines coincide"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
