//! Error type shared by all modules.

use thiserror::Error;

/// Everything that can go wrong outside of ordinary arithmetic.
///
/// Variants split into three families that callers treat differently:
/// input/precondition problems (bad ambients, domains, assertions),
/// genericity failures (random choices kept disagreeing and the retry
/// budget ran out), and internal consistency failures that carry enough
/// of a witness to reproduce the problem.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient mismatch: operands live in different products of projective spaces")]
    AmbientMismatch,

    #[error("coefficient domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("generator {index} is not homogeneous per factor")]
    NotHomogeneousGenerator { index: usize },

    #[error("the zero ideal has no finite presentation to work with here")]
    ZeroIdeal,

    #[error("empty generator list")]
    EmptyGenerators,

    #[error("generators carry mixed multidegrees: {0}")]
    MixedMultidegrees(String),

    #[error("multidegree {requested} is below the natural multidegree {natural}")]
    PaddingBelowNatural { requested: String, natural: String },

    #[error("operation requires a single projective factor")]
    SingleFactorRequired,

    #[error("invalid scheme assertions: {0}")]
    InvalidScheme(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("slice index {index} is not valid for this ambient/dimension (bound {bound})")]
    InvalidSliceIndex { index: String, bound: usize },

    #[error(
        "genericity retries exhausted for {context}: observed {observed:?} over {attempts} attempts"
    )]
    GenericityExhausted {
        context: String,
        observed: Vec<String>,
        attempts: u32,
    },

    #[error("multiplicity witnesses disagree: {0}")]
    MultiplicityInconsistent(String),

    #[error("class is not a pushforward from the diagonal")]
    NotInDiagonalImage,

    #[error("prime {0} is unusable here: {1}")]
    BadPrime(u64, String),
}

pub type Result<T> = std::result::Result<T, Error>;
