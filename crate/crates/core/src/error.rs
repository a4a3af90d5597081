use thiserror::Error;

use crate::words::Word;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation requires a nonempty word")]
    EmptyWord,

    #[error("word is not primitive (root {root})")]
    NotPrimitive { root: Word },

    #[error("{word} is not a Lyndon word (least rotation is {lyndon})")]
    NotLyndon { word: Word, lyndon: Word },

    #[error("factor length {m} must lie in 1..={len}")]
    FactorLength { m: usize, len: usize },

    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,

    #[error("alphabet lists {0:?} more than once")]
    DuplicateSymbol(char),

    #[error("alphabet of size {0} exceeds the 256 supported codes")]
    AlphabetTooLarge(usize),

    #[error("character {ch:?} at position {position} is not in the alphabet")]
    UnknownCharacter { ch: char, position: usize },

    #[error("symbol code {code} is outside an alphabet of size {size}")]
    CodeOutOfRange { code: u8, size: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("table of {rows} rows and width {lcm} exceeds the guard of {limit} cells")]
    TableTooLarge {
        rows: usize,
        lcm: String,
        limit: u64,
    },

    #[error("{what} needs {required}, above the limit of {limit}")]
    GuardExceeded {
        what: &'static str,
        required: String,
        limit: u64,
    },

    #[error("word of length {len} is not in Gamma({k},{n}): expected length {expected}")]
    GammaLength {
        len: usize,
        k: usize,
        n: u32,
        expected: u64,
    },

    #[error("block {index} is not a permutation of the alphabet")]
    GammaBlock { index: usize },

    #[error("generators have degrees {0} and {1}")]
    DegreeMismatch(usize, usize),

    #[error("partial map is not injective: {0}")]
    NotInjective(String),

    #[error("generator letter sets differ")]
    LetterMismatch,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
