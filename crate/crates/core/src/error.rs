use thiserror::Error;

/// Malformed textual input (words, weights, roots, scalars, module files).
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("cannot parse {what} from {input:?}: offending token {token:?}")]
pub struct ParseError {
    pub what: &'static str,
    pub input: String,
    pub token: String,
}

impl ParseError {
    pub fn new(what: &'static str, input: &str, token: &str) -> Self {
        Self {
            what,
            input: input.to_string(),
            token: token.to_string(),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("letter {letter} outside the alphabet 1..={n}")]
    LetterOutOfRange { letter: u8, n: usize },

    #[error("the empty word has no {0}")]
    EmptyWord(&'static str),

    #[error("word {0} is not dominant")]
    NotDominant(String),

    #[error("word {0} is not a dominant Lyndon word")]
    NotDominantLyndon(String),

    #[error("element has no terms")]
    ZeroElement,

    #[error("element is not homogeneous")]
    Inhomogeneous,

    #[error("element is not in the subalgebra generated by the letters: stuck at word {0}")]
    NotInSubalgebra(String),

    #[error("module is malformed: {0}")]
    MalformedModule(String),

    /// An internal consistency check failed. Signals a bug, never bad input.
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
