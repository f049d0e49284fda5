//! Detection of non-trivial p-torsion groups T_K for the layers K = Q(N)
//! of the cyclotomic Z-hat extension of Q, through twisted Stickelberger
//! measures, and confirmation of non-trivial p-class groups of K.Q(p)
//! through ranks of Hasse normic-symbol matrices.
//!
//! All arithmetic is exact and word-sized: residues mod p or p^2,
//! polynomials over F_p, and the rings (Z/p^2)[x]/(Phi_f).

pub mod algebra;
pub mod exec;
pub mod genus;
pub mod golden;
pub mod layers;
pub mod record;
pub mod scan;
pub mod stickelberger;

pub use exec::Exec;
pub use layers::{LayerSpec, SplitProfile};

/// Failures reported by the library. Math-level conditions (a prime that
/// is not totally split, a missing uniformizer, ...) are ordinary variants
/// so drivers can record them and keep going.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0}")]
    InvalidInput(String),
    #[error("p = {p} divides N = {n}")]
    RamifiedPrime { n: u64, p: u64 },
    #[error("{a} is not coprime to {m}")]
    NotCoprime { a: u64, m: u64 },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("brute-force oracle refused f = {f} (limit {limit})")]
    OracleScaleExceeded { f: u64, limit: u64 },
    #[error("p = {p} is not totally split in Q({n})")]
    NotTotallySplit { n: u64, p: u64 },
    #[error("{0}")]
    Unsupported(String),
    #[error("no a in [1, p-1] with v_p(Norm(eta - a)) = 1 for N = {n}, p = {p}")]
    NoUniformizer { n: u64, p: u64 },
    #[error("congruence modulus is not invertible at prime index {k}")]
    DegenerateSplitting { k: usize },
    #[error("symbol matrix is not circulant at ({j}, {k})")]
    NonCirculant { j: usize, k: usize },
    #[error("formula violation: {0}")]
    FormulaViolation(String),
    #[error("overflow contract: {0}")]
    Overflow(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("checkpoint {path}: {reason}")]
    CheckpointCorrupt { path: String, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Short machine-readable tag used in output records.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "InvalidInput",
            Error::RamifiedPrime { .. } => "RamifiedPrime",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::NotAUnit => "NotAUnit",
            Error::OracleScaleExceeded { .. } => "OracleScaleExceeded",
            Error::NotTotallySplit { .. } => "NotTotallySplit",
            Error::Unsupported(_) => "Unsupported",
            Error::NoUniformizer { .. } => "NoUniformizer",
            Error::DegenerateSplitting { .. } => "DegenerateSplitting",
            Error::NonCirculant { .. } => "NonCirculant",
            Error::FormulaViolation(_) => "FormulaViolation",
            Error::Overflow(_) => "Overflow",
            Error::Internal(_) => "Internal",
            Error::CheckpointCorrupt { .. } => "CheckpointCorrupt",
            Error::Io(_) => "Io",
            Error::Json(_) => "Json",
            Error::Csv(_) => "Csv",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
