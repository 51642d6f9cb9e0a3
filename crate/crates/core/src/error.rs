use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("non-finite entry encountered in {0}")]
    NonFinite(String),
    #[error("matrix is not positive definite (pivot {pivot} = {value:e})")]
    NotPositiveDefinite { pivot: usize, value: f64 },
    #[error("matrix is not Hermitian (relative defect {0:e})")]
    NotHermitian(f64),
    #[error("matrix is not skew-Hermitian (relative defect {0:e})")]
    NotSkew(f64),
    #[error("matrix is singular to working precision")]
    Singular,
    #[error("eigensolver did not converge")]
    NoConvergence,
    #[error("invalid problem specification: {0}")]
    InvalidSpec(String),
    #[error("GMRES breakdown at step {step} with residual {residual:e}")]
    Breakdown { step: usize, residual: f64 },
    #[error("deflated operator became singular at step {step}")]
    SingularProjector { step: usize },
    #[error("Krylov basis lost rank at step {step}; least-squares residual {residual:e}")]
    LuckyBreakdown { step: usize, residual: f64 },
    #[error("deflation core matrix is singular (reciprocal condition {rcond:e})")]
    SingularCore { rcond: f64 },
    #[error("deflation space size {0} splits a conjugate pair")]
    OddRequest(usize),
    #[error("deflation space lost rank ({rank} of {requested})")]
    RankLoss { rank: usize, requested: usize },
    #[error("pairing variant {0} is not available for this eigenproblem")]
    IncompatibleVariant(String),
    #[error("operator fingerprint does not match the deflation space")]
    MismatchedOperators,
    #[error("enclosure does not lie in the open right half-plane (lower real bound {0:e})")]
    NonPositiveRealPart(f64),
    #[error("degenerate rectangle: {0}")]
    DegenerateRectangle(String),
    #[error("point {0} lies inside the unit disk")]
    InsideDisk(num_complex::Complex64),
    #[error("Newton iteration failed: {0}")]
    NewtonDivergence(String),
    #[error("Laurent truncation {have} is too short for degree {need}")]
    TruncationTooShort { have: usize, need: usize },
    #[error("linear program failed: {0}")]
    LinearProgram(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
