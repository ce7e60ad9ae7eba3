use thiserror::Error;

/// Errors raised by the library. Axiom violations found by
/// [`crate::capacity::validate`] are report entries, not errors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("invalid atom name `{0}`")]
    InvalidAtomName(String),
    #[error("duplicate atom `{0}`")]
    DuplicateAtom(String),
    #[error("frame must contain at least one atom")]
    EmptyFrame,
    #[error("frame has {atoms} atoms, limit is {limit}")]
    FrameTooLarge { atoms: usize, limit: usize },
    #[error("expected {expected} values, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("subset bits {bits:#b} out of range for a frame of {atoms} atoms")]
    SubsetOutOfRange { bits: u32, atoms: usize },
    #[error("values do not sum to 1 (sum = {0})")]
    NotNormalized(f64),
    #[error("negative value {value} at {at}")]
    NegativeValue { value: f64, at: String },
    #[error("negative mass {value} on {at}")]
    NegativeMass { value: f64, at: String },
    #[error("value {value} outside [0, 1] at {at}")]
    OutOfRange { value: f64, at: String },
    #[error("non-finite value at {0}")]
    NonFinite(String),
    #[error("mass function does not sum to 1 (sum = {0})")]
    InvalidMass(f64),
    #[error("total conflict: the empty set carries mass {0}")]
    TotalConflict(f64),
    #[error("frames are not combinable: {0} vs {1} atoms")]
    NotCombinable(usize, usize),
    #[error("alpha {0} outside [0, 1]")]
    AlphaOutOfRange(f64),
    #[error("conditioning event has zero pignistic probability")]
    ZeroProbabilityEvent,
    #[error("normalized conditioning requires a non-empty event")]
    EmptyEvent,
    #[error("frame mismatch: {0}")]
    FrameMismatch(String),
    #[error("utility matrix: {0}")]
    InvalidUtilities(String),
    #[error("{0}")]
    NotABeliefFunction(String),
}

impl Error {
    /// True for errors that signal a mathematical impossibility on valid
    /// input (total conflict, conditioning on a null event).
    pub fn is_impossibility(&self) -> bool {
        matches!(self, Error::TotalConflict(_) | Error::ZeroProbabilityEvent)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
