use thiserror::Error;

/// Errors shared across the library. Anything that maps to a user-facing
/// diagnostic or a CLI exit code lives here; internal invariant breakage
/// panics instead.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("semantic error at line {line}: {msg}")]
    Semantic { line: usize, msg: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix shape mismatch for arrow `{arrow}`: expected {expected_rows}x{expected_cols}, got {rows}x{cols}")]
    ShapeMismatch {
        arrow: String,
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },

    #[error("relation `{relation}` violated: residual matrix {residual}")]
    RelationViolated { relation: String, residual: String },

    #[error("{what} cap exceeded: cap {cap}, reached {reached}")]
    CapExceeded { what: String, cap: u64, reached: u64 },

    #[error("class mismatch: module has dimension vector {found}, parameters fix {expected}")]
    ClassMismatch { expected: String, found: String },

    #[error("representations live over different presentations or primes")]
    IncompatibleRepresentations,

    #[error("{0} is unsupported: {1}")]
    Unsupported(String, String),

    #[error("zero central charge has no phase")]
    ZeroCharge,

    #[error("charge outside the closed upper half-plane: ({re}, {im})")]
    ChargeOutOfRange { re: String, im: String },

    #[error("maximal destabilizer is not unique; witnesses of equal phase and dimension: {0}")]
    NonUniqueDestabilizer(String),

    #[error("input is not semistable for the given parameters")]
    NotSemistable,

    #[error("isomorphism search cap exceeded without a certificate (hom dimension {hom_dim})")]
    IsoSearchInconclusive { hom_dim: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("coefficient {0} has denominator divisible by the field characteristic {1}")]
    BadCharacteristic(String, u32),

    #[error("degree pattern violated at arrow `{arrow}`, entry ({row},{col}): expected degree {expected}, got {got}")]
    DegreeMismatch {
        arrow: String,
        row: usize,
        col: usize,
        expected: i64,
        got: String,
    },

    #[error("fiber at {point} fails semistability for the declared parameters")]
    UnstableFiber { point: String },

    #[error("no interior point of wall {wall} avoiding the other walls was found")]
    NoWallInteriorPoint { wall: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn cap(what: &str, cap: u64, reached: u64) -> Self {
        Error::CapExceeded { what: what.to_string(), cap, reached }
    }

    /// True for the errors that signal a resource cap rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. } | Error::IsoSearchInconclusive { .. }
        )
    }
}
