use serde::{Deserialize, Serialize};

use super::CertifyError;
use crate::linalg::Spectrum;

/// An interval `[lo, hi]` together with a separation `gap > 0` from it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapWindow {
    pub lo: f64,
    pub hi: f64,
    pub gap: f64,
}

impl GapWindow {
    pub fn new(lo: f64, hi: f64, gap: f64) -> Result<Self, CertifyError> {
        if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(CertifyError::InvalidInterval { lo, hi });
        }
        if !(gap > 0.0) || !gap.is_finite() {
            return Err(CertifyError::NonpositiveGap { gap });
        }
        Ok(Self { lo, hi, gap })
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// Distance from `x` to `[lo, hi]`.
    pub fn distance(&self, x: f64) -> f64 {
        interval_distance(self.lo, self.hi, x)
    }
}

pub(crate) fn interval_distance(lo: f64, hi: f64, x: f64) -> f64 {
    if x < lo {
        lo - x
    } else if x > hi {
        x - hi
    } else {
        0.0
    }
}

/// Tightest window for the a priori certificate: `[lo, hi]` is the hull of
/// `spec(A₂)` and `gap` is the distance from `spec(A₁)` to it.
pub fn extract_window_apriori(spec_a1: &Spectrum, spec_a2: &Spectrum) -> Result<GapWindow, CertifyError> {
    if spec_a1.is_empty() || spec_a2.is_empty() {
        return Err(CertifyError::EmptySpectrum);
    }
    let lo = spec_a2.min();
    let hi = spec_a2.max();
    let gap = spec_a1
        .values()
        .iter()
        .map(|&l| interval_distance(lo, hi, l))
        .fold(f64::INFINITY, f64::min);
    if !(gap > 0.0) {
        return Err(CertifyError::GapNonpositive { lo, hi });
    }
    GapWindow::new(lo, hi, gap)
}

/// Enclosure radius `ρ · tan(½ arctan(2ρ/d))`.
///
/// Evaluated through the half-angle identity `tan(½ arctan t) = t / (1 + √(1 + t²))`,
/// which gives `2ρ² / (d + √(d² + 4ρ²))` without cancellation.
pub fn delta_r(rho: f64, gap: f64) -> Result<f64, CertifyError> {
    if !(gap > 0.0) || !gap.is_finite() {
        return Err(CertifyError::NonpositiveGap { gap });
    }
    if !(rho >= 0.0) {
        return Err(CertifyError::NegativeResidual { rho });
    }
    if rho == 0.0 {
        return Ok(0.0);
    }
    let scale = rho.max(gap);
    let (r, d) = (rho / scale, gap / scale);
    Ok(scale * 2.0 * r * r / (d + (d * d + 4.0 * r * r).sqrt()))
}
