use thiserror::Error;

use crate::words::{Alphabet, Subspace};

pub type Result<T, E = MzvError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MzvError {
    #[error("letter `{letter}` does not belong to alphabet {alphabet}")]
    InvalidLetter { letter: String, alphabet: Alphabet },

    #[error("alphabet mismatch: expected {expected}, found {found}")]
    AlphabetMismatch { expected: Alphabet, found: Alphabet },

    #[error("cannot encode part {part} as a z-block over {alphabet}")]
    Encoding { part: i64, alphabet: Alphabet },

    #[error("word `{word}` is not in {space}")]
    NotInSubspace { word: String, space: Subspace },

    #[error("word `{word}` has a zero z-part and has no block image")]
    ZeroPart { word: String },

    #[error("lambda must be a nonzero rational")]
    ZeroLambda,

    #[error("operation requires a nonempty word")]
    EmptyWord,

    #[error("leading z-part must be at least 1, found {0}")]
    LeadingPart(i64),

    #[error("left factor of the circle product must be a single z-letter, found `{0}`")]
    CircleLeft(String),

    #[error("derivation order must be at least 1, found {0}")]
    DerivationOrder(i64),

    #[error("composition {comp} is not admissible for {model}")]
    Inadmissible { comp: String, model: String },

    #[error("negative operator exponent {0} is not supported by this evaluator")]
    NegativeExponent(i64),

    #[error("truncation order must be at least 1, found {0}")]
    Order(usize),

    #[error("isomorphism `{0}` does not invert on the given input")]
    InconsistentIso(String),

    #[error("parse error at byte {pos}: expected {expected}, found {found}")]
    Parse {
        pos: usize,
        expected: String,
        found: String,
    },

    #[error("{0}")]
    Usage(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for MzvError {
    fn from(e: std::io::Error) -> Self {
        MzvError::Io(e.to_string())
    }
}
