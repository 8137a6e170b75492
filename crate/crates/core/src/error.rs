use thiserror::Error;

/// Everything that can go wrong when loading data or running an operation
/// whose precondition is not met. Verification failures are not errors; they
/// are recorded as failed checks in a report.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum MtcError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("missing required section `{0}`")]
    MissingSection(String),
    #[error("braided data required: the `R` section is missing")]
    BraidedDataRequired,
    #[error("unit axiom violated: {0}")]
    UnitAxiom(String),
    #[error("dual table is not an involution fixing 0: {0}")]
    NonInvolutiveDual(String),
    #[error("complex literal malformed at `{0}` (expected [re, im])")]
    ComplexLiteral(String),
    #[error("unknown built-in category `{name}`; available: {available}")]
    UnknownBuiltin { name: String, available: String },
    #[error("rank {rank} exceeds the configured bound {bound}")]
    RankOverflow { rank: usize, bound: usize },
    #[error("category `{0}` is not modular (S is singular)")]
    NotModular(String),
    #[error("category `{0}` carries no ribbon twist")]
    NotPremodular(String),
    #[error("Verlinde entry N[{i}][{j}][{k}] = {value} is {distance:e} away from an integer")]
    SnapFailure {
        i: usize,
        j: usize,
        k: usize,
        value: f64,
        distance: f64,
    },
    #[error("modular relation failed at entry ({row}, {col}): deviation {deviation:e}")]
    RelationFailure {
        row: usize,
        col: usize,
        deviation: f64,
    },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("strand position {position} out of range for a word of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("trace requested on a non-endomorphism")]
    TraceOnNonEndomorphism,
    #[error("word of length {0} exceeds the supported maximum of 8 strands")]
    WordTooLong(usize),
    #[error("invalid label {label} for a category of rank {rank}")]
    InvalidLabel { label: usize, rank: usize },
    #[error("twist extraction needs a functor from level 0 to level 1, got {from} -> {to}")]
    WrongLevels { from: i32, to: i32 },
    #[error("xi entry {index} = {value} is neither 0 nor 1")]
    XiNotZeroOne { index: usize, value: String },
    #[error("singular F-move block for ({a},{b},{c};{d})")]
    SingularF {
        a: usize,
        b: usize,
        c: usize,
        d: usize,
    },
    #[error("invalid option: {0}")]
    InvalidOption(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, MtcError>;
