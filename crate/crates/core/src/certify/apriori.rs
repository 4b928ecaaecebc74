use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use super::block::{block_partition, residual};
use super::window::{delta_r, extract_window_apriori, GapWindow};
use super::{CertifyError, FailureReason};
use crate::linalg::{eigh, HermitianMatrix, OrthonormalFrame};

/// Bound on the largest principal angle between `span(Q₁)` and the spectral
/// subspace of `A` for eigenvalues outside `(lo − gap, hi + gap)`, computed
/// from the compressions alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AprioriCertificate {
    pub valid: bool,
    pub n: usize,
    /// Subspace dimension; also the claimed number of exterior eigenvalues of `A`.
    pub k: usize,
    pub window: Option<GapWindow>,
    pub rho: f64,
    /// `ρ < √2 · gap` (with a rounding margin of `tolerance`).
    pub admissible: bool,
    pub tan_bound: Option<f64>,
    pub angle_bound: Option<f64>,
    pub delta_r: Option<f64>,
    pub enclosure_lo: Option<f64>,
    pub enclosure_hi: Option<f64>,
    /// `1e-9 * (1 + ‖A‖_max)`, used by every downstream comparison.
    pub tolerance: f64,
    pub failure_reason: Option<FailureReason>,
}

pub fn certify_apriori(a: &HermitianMatrix, q1: &OrthonormalFrame) -> Result<AprioriCertificate, CertifyError> {
    let blocks = block_partition(a, q1)?;
    let rho = residual(a, q1)?.rho;
    let tolerance = a.tolerance();
    let spec_a1 = eigh(&blocks.a1, false)?;
    let spec_a2 = eigh(&blocks.a2, false)?;

    let mut cert = AprioriCertificate {
        valid: false,
        n: a.n(),
        k: q1.k(),
        window: None,
        rho,
        admissible: false,
        tan_bound: None,
        angle_bound: None,
        delta_r: None,
        enclosure_lo: None,
        enclosure_hi: None,
        tolerance,
        failure_reason: None,
    };

    let window = match extract_window_apriori(&spec_a1, &spec_a2) {
        Ok(w) => w,
        Err(CertifyError::GapNonpositive { .. }) => {
            cert.failure_reason = Some(FailureReason::GapNonpositive);
            return Ok(cert);
        }
        Err(e) => return Err(e),
    };

    let tan_bound = rho / window.gap;
    let radius = delta_r(rho, window.gap)?;
    cert.window = Some(window);
    cert.tan_bound = Some(tan_bound);
    cert.angle_bound = Some(tan_bound.atan());
    cert.delta_r = Some(radius);
    cert.enclosure_lo = Some(window.lo - radius);
    cert.enclosure_hi = Some(window.hi + radius);
    // Strict inequality; at ρ = √2·d the enclosure radius reaches d and the
    // spectrum may leave the interval entirely.
    cert.admissible = SQRT_2 * window.gap - rho > tolerance;
    if cert.admissible {
        cert.valid = true;
    } else {
        cert.failure_reason = Some(FailureReason::RhoTooLarge);
    }
    Ok(cert)
}
