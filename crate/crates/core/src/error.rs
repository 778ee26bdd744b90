use thiserror::Error;

/// Crate-wide error type. Variants are grouped by the subsystem that raises
/// them; the CLI maps them onto exit codes (resource caps vs. input errors).
#[derive(Debug, Error)]
pub enum Error {
    #[error("p = 2 is rejected; this toolkit handles odd primes only")]
    EvenPrime,

    #[error("p = {0} is not a prime")]
    NotPrime(u32),

    #[error("generators have mismatched degrees ({0} vs {1})")]
    DegreeMismatch(usize, usize),

    #[error("order cap exceeded: {kind} needs more than {cap} elements")]
    OrderCapExceeded { kind: &'static str, cap: usize },

    #[error("closure has order {order}, which is not a power of p = {p}")]
    NotAPGroup { order: usize, p: u32 },

    #[error("subgroup of order {0} is not normal")]
    NotNormal(usize),

    #[error("search budget of {0} nodes exhausted")]
    SearchBudgetExceeded(u64),

    #[error(
        "admissible set has no unique maximal member: orders {order_a} and {order_b} \
         are maximal but neither contains the other"
    )]
    NonUniqueMaximal { order_a: usize, order_b: usize },

    #[error("certificate produced internally failed verification at step {index} ({clause})")]
    CertificateInvalid { index: usize, clause: String },

    #[error("line {line}: {msg}")]
    GroupFileParse { line: usize, msg: String },

    #[error("parse error at offset {offset}: expected {expected}")]
    ExprParse { offset: usize, expected: String },

    #[error("{name} at offset {offset} takes {expected} argument(s), got {got}")]
    ExprArity {
        offset: usize,
        name: String,
        expected: usize,
        got: usize,
    },

    #[error("C(A, B) requires A to be the whole group in this version")]
    UnsupportedAmbient,

    #[error("type mismatch: expected {expected}, got {got}")]
    TypeMismatch {
        expected: &'static str,
        got: &'static str,
    },

    #[error("Idx(A, B) requires B to be a subgroup of A")]
    IndexNotNested,

    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("unknown group '{0}': not a corpus name and not a readable file")]
    UnknownGroup(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for errors that signal a resource cap or budget, as opposed to
    /// malformed input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::OrderCapExceeded { .. } | Error::SearchBudgetExceeded(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
