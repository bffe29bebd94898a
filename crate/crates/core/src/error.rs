use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (deviation {deviation:e} > {tol:e})")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("matrix is not unitary (deviation {deviation:e} > {tol:e})")]
    NotUnitary { deviation: f64, tol: f64 },

    #[error("state is not normalized (squared norm {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("operator is not a POVM element: spectrum [{min}, {max}] outside [0, 1]")]
    NotPovmElement { min: f64, max: f64 },

    #[error("party index {party} out of range for {parties} parties")]
    PartyOutOfRange { party: usize, parties: usize },

    #[error("conjugation mask has length {mask}, operator has {parties} parties")]
    MaskLengthMismatch { mask: usize, parties: usize },

    #[error("factor {party} of term {term} is not Hermitian (deviation {deviation:e})")]
    NonHermitianFactor { term: usize, party: usize, deviation: f64 },

    #[error("operation supports {expected} parties, got {got}")]
    UnsupportedPartyCount { expected: usize, got: usize },

    #[error("expected a two-party separable operator, got {0} parties")]
    NotSeparable2Party(usize),

    #[error("invalid completeness/soundness pair (c = {completeness}, s = {soundness})")]
    InvalidBounds { completeness: f64, soundness: f64 },

    #[error("invalid protocol: {0}")]
    InvalidProtocol(String),

    #[error("protocol spec carries no extra-qubit frame")]
    NotEncoded,

    #[error("circuits do not differ by a purely imaginary global phase")]
    NotGlobalPhaseInstance,

    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
}
