use thiserror::Error;

/// Errors raised by the numeration, automata and construction routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("digit {digit} is out of range for base {base}")]
    InvalidDigit { digit: u32, base: u32 },

    #[error("letter {letter} is out of range for an alphabet of size {alphabet_size}")]
    InvalidLetter { letter: u32, alphabet_size: usize },

    #[error("state {state} is out of range for an automaton with {state_count} states")]
    InvalidState { state: usize, state_count: usize },

    #[error("alphabet size mismatch: {left} vs {right}")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("i/o error: {0}")]
    Io(String),

    /// An internal invariant did not hold. This always signals a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
