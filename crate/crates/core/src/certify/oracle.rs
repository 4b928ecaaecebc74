//! Exact-eigendecomposition checks for the certificates.

use serde::{Deserialize, Serialize};

use super::aposteriori::AposterioriCertificate;
use super::apriori::AprioriCertificate;
use super::window::GapWindow;
use super::CertifyError;
use crate::linalg::{
    hermitian_spectrum, principal_angles, principal_cosines, HermitianMatrix, LinalgError, OrthonormalFrame, Spectrum,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubspaceMode {
    /// Eigenvalues away from the window interval.
    Exterior,
    /// Eigenvalues near the window interval.
    Interior,
}

/// Eigenvector frame selected by the midpoint rule: `λ` is exterior iff
/// `dist(λ, [lo, hi]) > gap / 2`.
pub fn exact_subspace(
    a: &HermitianMatrix,
    window: &GapWindow,
    mode: SubspaceMode,
) -> Result<OrthonormalFrame, CertifyError> {
    exact_subspace_with_threshold(a, window, 0.5 * window.gap, mode)
}

/// As [`exact_subspace`] with an explicit classification threshold.
pub fn exact_subspace_with_threshold(
    a: &HermitianMatrix,
    window: &GapWindow,
    threshold: f64,
    mode: SubspaceMode,
) -> Result<OrthonormalFrame, CertifyError> {
    let spec = hermitian_spectrum(a, true)?;
    select_eigenvectors(&spec, window, threshold, mode)
}

fn select_eigenvectors(
    spec: &Spectrum,
    window: &GapWindow,
    threshold: f64,
    mode: SubspaceMode,
) -> Result<OrthonormalFrame, CertifyError> {
    let indices: Vec<usize> = spec
        .values()
        .iter()
        .enumerate()
        .filter(|(_, &l)| (window.distance(l) > threshold) == (mode == SubspaceMode::Exterior))
        .map(|(i, _)| i)
        .collect();
    if indices.is_empty() {
        return Err(CertifyError::EmptySelection);
    }
    let vectors = spec.vectors().expect("spectrum computed with vectors");
    Ok(OrthonormalFrame::new(vectors.select_columns(&indices))?)
}

/// Threshold strictly between the enclosure radius and the gap, where the
/// a priori hypotheses guarantee a spectral hole.
pub fn apriori_threshold(cert: &AprioriCertificate) -> Option<f64> {
    Some(0.5 * (cert.delta_r? + cert.window?.gap))
}

/// `σ_min(Q₁ᴴX₁)`; positive iff neither subspace meets the other's complement.
pub fn lemma_intersection_check(q1: &OrthonormalFrame, x1: &OrthonormalFrame) -> Result<f64, CertifyError> {
    if q1.n() != x1.n() {
        return Err(LinalgError::DimensionMismatch {
            expected: q1.n(),
            actual: x1.n(),
        }
        .into());
    }
    if q1.k() != x1.k() {
        return Err(LinalgError::RankMismatch {
            left: q1.k(),
            right: x1.k(),
        }
        .into());
    }
    let cosines = principal_cosines(q1, x1)?;
    Ok(*cosines.last().expect("rank >= 1"))
}

/// Eigenvalues of `A` in `(−∞, lo − gap + tol] ∪ [hi + gap − tol, ∞)`.
pub fn exterior_count(spec_a: &Spectrum, cert: &AprioriCertificate) -> Option<usize> {
    let w = cert.window?;
    let tol = cert.tolerance;
    Some(
        spec_a
            .values()
            .iter()
            .filter(|&&l| l <= w.lo - w.gap + tol || l >= w.hi + w.gap - tol)
            .count(),
    )
}

/// Eigenvalues of `A` in `[lo − δ_R − tol, hi + δ_R + tol]`.
pub fn enclosed_count(spec_a: &Spectrum, cert: &AprioriCertificate) -> Option<usize> {
    let (lo, hi) = (cert.enclosure_lo?, cert.enclosure_hi?);
    let tol = cert.tolerance;
    Some(spec_a.values().iter().filter(|&&l| l >= lo - tol && l <= hi + tol).count())
}

/// True iff `cert` is valid, exactly `n − k` eigenvalues lie in the enclosure
/// and the other `k` in the exterior region.
pub fn enclosure_check(spec_a: &Spectrum, cert: &AprioriCertificate) -> bool {
    if !cert.valid || spec_a.len() != cert.n {
        return false;
    }
    match (enclosed_count(spec_a, cert), exterior_count(spec_a, cert)) {
        (Some(inside), Some(outside)) => inside == cert.n - cert.k && outside == cert.k,
        _ => false,
    }
}

/// Exact quantities backing an a priori certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AprioriOracle {
    pub eigenvalues: Vec<f64>,
    pub exterior_count: Option<usize>,
    pub enclosed_count: Option<usize>,
    /// Largest principal angle to the exact exterior subspace, when it has rank `k`.
    pub largest_angle: Option<f64>,
    pub exact_tan: Option<f64>,
    pub lemma_cosine: Option<f64>,
    pub enclosure_verdict: bool,
    /// Interior eigenvalue farthest from `[lo, hi]`, as a distance.
    pub max_interior_excursion: Option<f64>,
}

impl AprioriOracle {
    /// `tan∠ ≤ tan_bound + 1e-9·(1 + tan_bound)`; `None` if not comparable.
    pub fn bound_holds(&self, cert: &AprioriCertificate) -> Option<bool> {
        let bound = cert.tan_bound?;
        Some(self.exact_tan? <= bound + 1e-9 * (1.0 + bound))
    }
}

pub fn apriori_oracle(
    a: &HermitianMatrix,
    q1: &OrthonormalFrame,
    cert: &AprioriCertificate,
) -> Result<AprioriOracle, CertifyError> {
    apriori_oracle_from_spectrum(q1, cert, &hermitian_spectrum(a, true)?)
}

/// As [`apriori_oracle`] with a precomputed eigendecomposition of `A`.
pub(crate) fn apriori_oracle_from_spectrum(
    q1: &OrthonormalFrame,
    cert: &AprioriCertificate,
    spec: &Spectrum,
) -> Result<AprioriOracle, CertifyError> {
    let mut oracle = AprioriOracle {
        eigenvalues: spec.values().to_vec(),
        exterior_count: exterior_count(spec, cert),
        enclosed_count: enclosed_count(spec, cert),
        largest_angle: None,
        exact_tan: None,
        lemma_cosine: None,
        enclosure_verdict: enclosure_check(spec, cert),
        max_interior_excursion: None,
    };
    let (Some(window), Some(threshold)) = (cert.window, apriori_threshold(cert)) else {
        return Ok(oracle);
    };
    oracle.max_interior_excursion = spec
        .values()
        .iter()
        .map(|&l| window.distance(l))
        .filter(|&d| d <= threshold)
        .reduce(f64::max);
    match select_eigenvectors(spec, &window, threshold, SubspaceMode::Exterior) {
        Ok(x1) if x1.k() == q1.k() => {
            let angles = principal_angles(q1, &x1)?;
            oracle.largest_angle = Some(angles.largest);
            oracle.exact_tan = Some(angles.largest_tan());
            oracle.lemma_cosine = Some(lemma_intersection_check(q1, &x1)?);
        }
        Ok(_) | Err(CertifyError::EmptySelection) => {}
        Err(e) => return Err(e),
    }
    Ok(oracle)
}

/// Exact quantities backing an a posteriori certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AposterioriOracle {
    pub eigenvalues: Vec<f64>,
    pub largest_angle: Option<f64>,
    pub exact_tan: Option<f64>,
    pub lemma_cosine: Option<f64>,
}

impl AposterioriOracle {
    pub fn bound_holds(&self, cert: &AposterioriCertificate) -> Option<bool> {
        let bound = cert.tan_bound?;
        Some(self.exact_tan? <= bound + 1e-9 * (1.0 + bound))
    }
}

/// The exact `X₁` spans eigenvectors outside `[α − tol, β + tol]`.
pub fn aposteriori_oracle(
    a: &HermitianMatrix,
    q1: &OrthonormalFrame,
    cert: &AposterioriCertificate,
) -> Result<AposterioriOracle, CertifyError> {
    aposteriori_oracle_from_spectrum(q1, cert, &hermitian_spectrum(a, true)?)
}

pub(crate) fn aposteriori_oracle_from_spectrum(
    q1: &OrthonormalFrame,
    cert: &AposterioriCertificate,
    spec: &Spectrum,
) -> Result<AposterioriOracle, CertifyError> {
    let mut oracle = AposterioriOracle {
        eigenvalues: spec.values().to_vec(),
        largest_angle: None,
        exact_tan: None,
        lemma_cosine: None,
    };
    // Any positive gap will do; only the interval and threshold matter here.
    let interval = GapWindow::new(cert.interior_lo, cert.interior_hi, 1.0)?;
    match select_eigenvectors(spec, &interval, cert.tolerance, SubspaceMode::Exterior) {
        Ok(x1) if x1.k() == q1.k() => {
            let angles = principal_angles(q1, &x1)?;
            oracle.largest_angle = Some(angles.largest);
            oracle.exact_tan = Some(angles.largest_tan());
            oracle.lemma_cosine = Some(lemma_intersection_check(q1, &x1)?);
        }
        Ok(_) | Err(CertifyError::EmptySelection) => {}
        Err(e) => return Err(e),
    }
    Ok(oracle)
}
