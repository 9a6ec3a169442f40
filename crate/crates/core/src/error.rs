use alloc::string::String;
use core::fmt;

/// Errors raised by automaton constructions and decision procedures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The automaton tables are malformed.
    InvalidAutomaton(String),
    /// Two automata with different alphabets were combined.
    IncompatibleAlphabets { left: usize, right: usize },
    /// An operation that needs `σ(·,q)` to be a permutation got a state where it is not.
    NotInvertible { state: String },
    LetterOutOfRange { letter: usize, alphabet_size: usize },
    StateOutOfRange { state: usize, state_count: usize },
    UnknownState(String),
    /// Malformed word or recursion text.
    Parse(String),
    /// `|A|^n` is above the configured cap.
    LevelTooLarge { level: usize, points: u128, cap: usize },
    /// A closure procedure visited more elements than allowed.
    ClosureLimit { limit: usize },
    UnknownExample(String),
    /// A projected edge label is not among the generators of the target level.
    LabelOutsideGenerators { label: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidAutomaton(msg) => write!(f, "invalid automaton: {msg}"),
            Error::IncompatibleAlphabets { left, right } => {
                write!(f, "incompatible alphabets ({left} vs {right} letters)")
            }
            Error::NotInvertible { state } => {
                write!(f, "automaton is not invertible: σ(·,{state}) is not a permutation")
            }
            Error::LetterOutOfRange {
                letter,
                alphabet_size,
            } => write!(f, "letter {letter} out of range for alphabet of size {alphabet_size}"),
            Error::StateOutOfRange { state, state_count } => {
                write!(f, "state index {state} out of range ({state_count} states)")
            }
            Error::UnknownState(name) => write!(f, "unknown state `{name}`"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::LevelTooLarge { level, points, cap } => {
                write!(f, "level {level} has {points} vertices, above the cap of {cap}")
            }
            Error::ClosureLimit { limit } => {
                write!(f, "closure exceeded {limit} visited elements")
            }
            Error::UnknownExample(name) => write!(f, "unknown example `{name}`"),
            Error::LabelOutsideGenerators { label } => {
                write!(f, "projected label `{label}` is not a generator of the target level")
            }
        }
    }
}

impl core::error::Error for Error {}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidAutomaton(_) => "invalid_automaton",
            Error::IncompatibleAlphabets { .. } => "incompatible_alphabets",
            Error::NotInvertible { .. } => "not_invertible",
            Error::LetterOutOfRange { .. } => "letter_out_of_range",
            Error::StateOutOfRange { .. } => "state_out_of_range",
            Error::UnknownState(_) => "unknown_state",
            Error::Parse(_) => "parse",
            Error::LevelTooLarge { .. } => "level_too_large",
            Error::ClosureLimit { .. } => "closure_limit",
            Error::UnknownExample(_) => "unknown_example",
            Error::LabelOutsideGenerators { .. } => "label_outside_generators",
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
