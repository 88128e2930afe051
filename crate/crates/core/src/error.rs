use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("letter '{letter}' at position {pos} is not in the alphabet")]
    UnknownLetter { pos: usize, letter: char },

    /// The operand of `@` or `$` accepts the empty word.
    #[error("operand of '{op}' at position {pos} has the empty word property")]
    EmptyWordOperand { pos: usize, op: char },

    #[error("position {pos}: expected {expected}")]
    Sort { pos: usize, expected: &'static str },

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("invalid lasso: {0}")]
    InvalidLasso(String),

    #[error("symbol '{0}' is not in the alphabet")]
    SymbolOutsideAlphabet(char),

    #[error("alphabets differ")]
    AlphabetMismatch,

    #[error("state limit of {0} exceeded")]
    StateCap(usize),

    /// An internal self-check failed. Always a bug.
    #[error("certification failed: {0}")]
    Certification(String),

    #[error("automaton is not saturated")]
    NotSaturated,

    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
}
