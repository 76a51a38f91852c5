use thiserror::Error;

use crate::poly::Var;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable mismatch: ({0:?}, {1:?}) vs ({2:?}, {3:?})")]
    VarMismatch(Var, Var, Var, Var),

    #[error("cannot remap polynomial: variable {0:?} has nonzero exponents")]
    VarDropped(Var),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("braid letter {letter} out of range for {n} strands")]
    LetterOutOfRange { letter: i64, n: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),

    #[error("generator index {index} out of range for {n} strands")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("n = {n} exceeds the configured bound {max}")]
    BoundExceeded { n: usize, max: usize },

    #[error("illegal event {event} at index {index} with {live} live strands")]
    IllegalEvent { event: String, index: usize, live: usize },

    #[error("front is not closed: {0} strands remain")]
    NotClosed(usize),

    #[error("inconsistent orientation: {0}")]
    Orientation(String),

    #[error("braid word has a negative letter {0}; a positive braid is required")]
    NegativeLetter(i32),

    #[error("diagram has {crossings} crossings, cap is {cap}")]
    ResourceLimit { crossings: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
