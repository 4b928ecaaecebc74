//! Dense complex Hermitian linear algebra: eigendecomposition, singular
//! values, orthonormal frames and principal angles.

mod angles;
mod eigen;
mod frame;
mod matrix;
mod svd;

pub use angles::{principal_angles, principal_cosines, AngleSet};
pub use eigen::Spectrum;
pub use frame::{
    complete_frame, hermitian_spectrum, orthonormalize, validate_hermitian, HermitianMatrix, OrthonormalFrame,
};
pub use matrix::CMatrix;
pub use num_complex::Complex64;
pub use svd::{gram_singular_values, singular_values, spectral_norm};

pub(crate) use eigen::eigh;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix order {n} is below the minimum of 2")]
    TooSmall { n: usize },
    #[error("matrix is not Hermitian: defect {defect:e} exceeds {limit:e}")]
    NotHermitian { defect: f64, limit: f64 },
    #[error("columns are rank deficient: smallest singular value {smallest:e}, largest {largest:e}")]
    RankDeficient { smallest: f64, largest: f64 },
    #[error("columns are not orthonormal: Gram defect {defect:e}")]
    NotOrthonormal { defect: f64 },
    #[error("invalid frame rank {k} for ambient dimension {n}")]
    InvalidRank { n: usize, k: usize },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}

impl LinalgError {
    /// Stable upper-case identifier used in reports and diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Self::NotSquare { .. } => "NOT_SQUARE",
            Self::TooSmall { .. } => "TOO_SMALL",
            Self::NotHermitian { .. } => "NOT_HERMITIAN",
            Self::RankDeficient { .. } => "RANK_DEFICIENT",
            Self::NotOrthonormal { .. } => "NOT_ORTHONORMAL",
            Self::InvalidRank { .. } => "INVALID_RANK",
            Self::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Self::RankMismatch { .. } => "RANK_MISMATCH",
            Self::NoConvergence { .. } => "NO_CONVERGENCE",
        }
    }
}
