use serde::{Deserialize, Serialize};

use super::block::residual;
use super::window::{interval_distance, GapWindow};
use super::{CertifyError, FailureReason};
use crate::linalg::{eigh, hermitian_spectrum, HermitianMatrix, OrthonormalFrame, Spectrum};

/// Bound `ρ/δ` where `δ` separates `spec(Q₁ᴴAQ₁)` from a caller-supplied
/// interval `[lo, hi]` holding the `n − k` complementary exact eigenvalues.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AposterioriCertificate {
    pub valid: bool,
    pub n: usize,
    pub k: usize,
    /// `(α, β, δ)`; `None` when `δ` is not positive.
    pub window: Option<GapWindow>,
    pub interior_lo: f64,
    pub interior_hi: f64,
    pub rho: f64,
    pub tan_bound: Option<f64>,
    pub angle_bound: Option<f64>,
    /// Exact eigenvalues of `A` found in `[lo − tol, hi + tol]`.
    pub interior_count: usize,
    pub tolerance: f64,
    pub failure_reason: Option<FailureReason>,
}

pub fn certify_aposteriori(
    a: &HermitianMatrix,
    q1: &OrthonormalFrame,
    interior_lo: f64,
    interior_hi: f64,
) -> Result<AposterioriCertificate, CertifyError> {
    if !(interior_lo <= interior_hi) || !interior_lo.is_finite() || !interior_hi.is_finite() {
        return Err(CertifyError::InvalidInterval {
            lo: interior_lo,
            hi: interior_hi,
        });
    }
    certify_aposteriori_with_spectrum(a, q1, interior_lo, interior_hi, &hermitian_spectrum(a, false)?)
}

/// As [`certify_aposteriori`] with the exact eigenvalues of `A` supplied.
pub(crate) fn certify_aposteriori_with_spectrum(
    a: &HermitianMatrix,
    q1: &OrthonormalFrame,
    interior_lo: f64,
    interior_hi: f64,
    exact: &Spectrum,
) -> Result<AposterioriCertificate, CertifyError> {
    if !(interior_lo <= interior_hi) || !interior_lo.is_finite() || !interior_hi.is_finite() {
        return Err(CertifyError::InvalidInterval {
            lo: interior_lo,
            hi: interior_hi,
        });
    }
    let report = residual(a, q1)?;
    let q = q1.as_matrix();
    let a1 = q.adjoint_matmul(&a.as_matrix().matmul(q)).hermitian_part();
    let spec_a1 = eigh(&a1, false)?;
    let tolerance = a.tolerance();

    let delta = spec_a1
        .values()
        .iter()
        .map(|&l| interval_distance(interior_lo, interior_hi, l))
        .fold(f64::INFINITY, f64::min);

    let interior_count = exact
        .values()
        .iter()
        .filter(|&&l| l >= interior_lo - tolerance && l <= interior_hi + tolerance)
        .count();

    let mut cert = AposterioriCertificate {
        valid: false,
        n: a.n(),
        k: q1.k(),
        window: None,
        interior_lo,
        interior_hi,
        rho: report.rho,
        tan_bound: None,
        angle_bound: None,
        interior_count,
        tolerance,
        failure_reason: None,
    };
    if delta > 0.0 {
        let window = GapWindow::new(interior_lo, interior_hi, delta)?;
        let tan_bound = report.rho / delta;
        cert.window = Some(window);
        cert.tan_bound = Some(tan_bound);
        cert.angle_bound = Some(tan_bound.atan());
    }
    // The count is checked first: a wrong interval makes the gap meaningless.
    if interior_count != a.n() - q1.k() {
        cert.failure_reason = Some(FailureReason::InteriorCountMismatch);
        return Ok(cert);
    }
    if cert.window.is_none() {
        cert.failure_reason = Some(FailureReason::GapNonpositive);
        return Ok(cert);
    }
    cert.valid = true;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CMatrix;

    #[test]
    fn two_by_two_with_exact_interior_window() {
        let a = HermitianMatrix::new(CMatrix::from_real_rows(&[&[2.0, 0.1], &[0.1, 0.0]])).unwrap();
        let q1 = OrthonormalFrame::coordinate(2, &[0]).unwrap();
        let c = certify_aposteriori(&a, &q1, -0.01, 0.01).unwrap();
        assert!(c.valid, "{c:?}");
        assert_eq!(c.interior_count, 1);
        assert!((c.window.unwrap().gap - 1.99).abs() < 1e-15);
        assert!((c.tan_bound.unwrap() - 0.1 / 1.99).abs() < 1e-16);
    }

    #[test]
    fn diagonal_examples() {
        let a = HermitianMatrix::new(CMatrix::from_diagonal(&[5.0, 1.0])).unwrap();
        let q1 = OrthonormalFrame::coordinate(2, &[0]).unwrap();
        let c = certify_aposteriori(&a, &q1, 1.0, 1.0).unwrap();
        assert!(c.valid);
        assert_eq!(c.window.unwrap().gap, 4.0);
        assert_eq!(c.tan_bound, Some(0.0));

        let c = certify_aposteriori(&a, &q1, 0.9, 5.1).unwrap();
        assert!(!c.valid);
        assert_eq!(c.interior_count, 2);
        assert_eq!(c.failure_reason, Some(FailureReason::InteriorCountMismatch));

        // eig(B) = {0, 2}: right count, but A₁ = [1] touches the interval.
        let b = HermitianMatrix::new(CMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]])).unwrap();
        let c = certify_aposteriori(&b, &q1, 0.0, 1.0).unwrap();
        assert_eq!(c.interior_count, 1);
        assert_eq!(c.failure_reason, Some(FailureReason::GapNonpositive));
    }

    #[test]
    fn count_mismatch_when_interval_misses_eigenvalue() {
        let a = HermitianMatrix::new(CMatrix::from_diagonal(&[5.0, 1.0, 0.0])).unwrap();
        let q1 = OrthonormalFrame::coordinate(3, &[0]).unwrap();
        let c = certify_aposteriori(&a, &q1, 0.5, 1.5).unwrap();
        assert_eq!(c.failure_reason, Some(FailureReason::InteriorCountMismatch));
        assert_eq!(c.interior_count, 1);
    }

    #[test]
    fn rejects_reversed_interval() {
        let a = HermitianMatrix::new(CMatrix::from_diagonal(&[5.0, 1.0])).unwrap();
        let q1 = OrthonormalFrame::coordinate(2, &[0]).unwrap();
        assert!(matches!(
            certify_aposteriori(&a, &q1, 1.0, 0.0),
            Err(CertifyError::InvalidInterval { .. })
        ));
    }
}
