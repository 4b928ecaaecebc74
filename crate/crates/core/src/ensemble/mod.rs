//! Reproducible random instances and oracle-checked sweeps.

mod instance;
mod random;
mod sharpness;
mod sweep;

pub use instance::{synth_instance, Instance, InstanceSpec};
pub use random::{complex_gaussian, derive_seed, haar_unitary, seeded_rng};
pub use sharpness::{sharpness_probe, SharpnessRow};
pub use sweep::{
    run_sweep, InstanceRecord, SweepCase, SweepConfig, SweepResult, ViolationCounts, TIGHTNESS_FLOOR,
};

use crate::certify::CertifyError;
use crate::linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EnsembleError {
    #[error("invalid instance spec: {0}")]
    InvalidSpec(String),
    #[error("invalid sweep config: {0}")]
    InvalidConfig(String),
    #[error("sweep needs at least one case")]
    EmptySweep,
    #[error(transparent)]
    Certify(CertifyError),
}

impl From<LinalgError> for EnsembleError {
    fn from(e: LinalgError) -> Self {
        EnsembleError::Certify(e.into())
    }
}

impl EnsembleError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::InvalidSpec(_) => "INVALID_SPEC",
            Self::InvalidConfig(_) => "INVALID_CONFIG",
            Self::EmptySweep => "EMPTY_SWEEP",
            Self::Certify(e) => e.code(),
        }
    }
}
