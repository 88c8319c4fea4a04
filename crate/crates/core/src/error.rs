use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("{op}: dimension mismatch (expected {expected}, found {found})")]
    DimensionMismatch {
        op: &'static str,
        expected: String,
        found: String,
    },

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("form parameter mismatch: {0} vs {1}")]
    ParamMismatch(String, String),

    #[error("linear system has no solution")]
    NoSolution,

    #[error("input columns are linearly dependent")]
    DependentColumns,

    #[error("{0}: matrix is not square")]
    NotSquare(&'static str),

    #[error("matrix is not in the form subgroup: {0}")]
    NotInSubgroup(String),

    #[error("degenerate form: {0}")]
    Degenerate(String),

    #[error("subspace is not totally isotropic")]
    NotIsotropic,

    #[error("subspace is not contained in its orthogonal")]
    NotSublagrangian,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("d_{degree} d_{} != 0", degree + 1)]
    NotComplex { degree: i64 },

    #[error("not a chain map in degree {degree}")]
    NotChainMap { degree: i64 },

    #[error("invalid Poincare complex{}: {detail}", degree_suffix(*degree))]
    Poincare { degree: Option<i64>, detail: String },

    #[error("reduction failed in degree {degree}: {detail}")]
    Reduction { degree: i64, detail: String },

    #[error("invariant violated: {check}: {detail}")]
    Invariant { check: String, detail: String },

    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("io: {0}")]
    Io(String),
}

fn degree_suffix(d: Option<i64>) -> String {
    match d {
        Some(d) => format!(" (degree {d})"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn dims(op: &'static str, expected: impl ToString, found: impl ToString) -> Self {
        Error::DimensionMismatch {
            op,
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    pub(crate) fn invariant(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Invariant {
            check: check.into(),
            detail: detail.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
