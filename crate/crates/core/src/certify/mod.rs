//! `tan θ` certificates for approximate spectral subspaces.
//!
//! Both certificates start from the block form of `QᴴAQ` and the residual
//! `R = AQ₁ − Q₁(Q₁ᴴAQ₁)`, whose norm equals that of the coupling block `B`.
//! The a priori certificate ([`certify_apriori`]) needs only the spectra of
//! the two diagonal blocks and, when `‖R‖ < √2·d`, also encloses the
//! complementary eigenvalues of `A` within `δ_R` of the interval. The a
//! posteriori certificate ([`certify_aposteriori`]) takes an interval holding
//! the complementary exact eigenvalues instead.
//!
//! Unmet hypotheses are reported in the certificate (`valid = false` plus a
//! [`FailureReason`]), never as errors.

mod aposteriori;
mod apriori;
mod block;
mod counterexample;
mod oracle;
mod window;

use serde::{Deserialize, Serialize};

pub use aposteriori::{certify_aposteriori, AposterioriCertificate};
pub use apriori::{certify_apriori, AprioriCertificate};
pub use block::{block_partition, residual, BlockForm, ResidualReport};
pub use counterexample::canonical_counterexample;
pub use oracle::{
    aposteriori_oracle, apriori_oracle, apriori_threshold, enclosed_count, enclosure_check, exact_subspace,
    exact_subspace_with_threshold, exterior_count, lemma_intersection_check, AposterioriOracle, AprioriOracle,
    SubspaceMode,
};
pub use window::{delta_r, extract_window_apriori, GapWindow};

pub(crate) use aposteriori::certify_aposteriori_with_spectrum;
pub(crate) use oracle::{aposteriori_oracle_from_spectrum, apriori_oracle_from_spectrum};

use crate::linalg::LinalgError;

/// Why a certificate is not valid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FailureReason {
    /// An eigenvalue of `Q₁ᴴAQ₁` lies in the interval.
    GapNonpositive,
    /// `‖R‖ ≥ √2·d`.
    RhoTooLarge,
    /// The interval does not hold exactly `n − k` eigenvalues of `A`.
    InteriorCountMismatch,
}

impl FailureReason {
    pub fn code(self) -> &'static str {
        match self {
            Self::GapNonpositive => "GAP_NONPOSITIVE",
            Self::RhoTooLarge => "RHO_TOO_LARGE",
            Self::InteriorCountMismatch => "INTERIOR_COUNT_MISMATCH",
        }
    }
}

impl std::fmt::Display for FailureReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CertifyError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("an eigenvalue of the compression lies in [{lo}, {hi}]")]
    GapNonpositive { lo: f64, hi: f64 },
    #[error("gap must be positive, got {gap}")]
    NonpositiveGap { gap: f64 },
    #[error("residual norm must be non-negative, got {rho}")]
    NegativeResidual { rho: f64 },
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("spectrum is empty")]
    EmptySpectrum,
    #[error("no eigenvalue matches the requested selection")]
    EmptySelection,
}

impl CertifyError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::Linalg(e) => e.code(),
            Self::GapNonpositive { .. } => "GAP_NONPOSITIVE",
            Self::NonpositiveGap { .. } => "NONPOSITIVE_GAP",
            Self::NegativeResidual { .. } => "NEGATIVE_RESIDUAL",
            Self::InvalidInterval { .. } => "INVALID_INTERVAL",
            Self::EmptySpectrum => "EMPTY_SPECTRUM",
            Self::EmptySelection => "EMPTY_SELECTION",
        }
    }
}
