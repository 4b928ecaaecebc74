use serde::{Deserialize, Serialize};

use super::random::{complex_gaussian, derive_seed, haar_unitary, seeded_rng};
use super::EnsembleError;
use crate::certify::GapWindow;
use crate::linalg::{orthonormalize, CMatrix, HermitianMatrix, OrthonormalFrame};

/// Recipe for a synthetic instance `A = X diag(exterior, interior) Xᴴ` with a
/// trial frame obtained by perturbing the exact exterior eigenvectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub n: usize,
    pub k: usize,
    pub exterior_eigs: Vec<f64>,
    pub interior_eigs: Vec<f64>,
    pub perturbation_eps: f64,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn validate(&self) -> Result<(), EnsembleError> {
        let invalid = |msg: String| Err(EnsembleError::InvalidSpec(msg));
        if self.n < 2 || self.k == 0 || self.k >= self.n {
            return invalid(format!("need 1 <= k <= n-1 and n >= 2, got n={} k={}", self.n, self.k));
        }
        if self.exterior_eigs.len() != self.k || self.interior_eigs.len() != self.n - self.k {
            return invalid(format!(
                "expected {} exterior and {} interior eigenvalues, got {} and {}",
                self.k,
                self.n - self.k,
                self.exterior_eigs.len(),
                self.interior_eigs.len()
            ));
        }
        if self.exterior_eigs.iter().chain(&self.interior_eigs).any(|x| !x.is_finite()) {
            return invalid("eigenvalues must be finite".into());
        }
        if !(self.perturbation_eps >= 0.0) || !self.perturbation_eps.is_finite() {
            return invalid(format!("perturbation must be finite and >= 0, got {}", self.perturbation_eps));
        }
        if !(self.declared_separation() > 0.0) {
            return invalid("exterior eigenvalues must be separated from the interior hull".into());
        }
        Ok(())
    }

    /// `[min, max]` of the interior targets.
    pub fn interior_hull(&self) -> (f64, f64) {
        let lo = self.interior_eigs.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = self.interior_eigs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    }

    pub fn declared_separation(&self) -> f64 {
        let (lo, hi) = self.interior_hull();
        self.exterior_eigs
            .iter()
            .map(|&l| {
                if l < lo {
                    lo - l
                } else if l > hi {
                    l - hi
                } else {
                    0.0
                }
            })
            .fold(f64::INFINITY, f64::min)
    }

    pub fn target_window(&self) -> Result<GapWindow, EnsembleError> {
        let (lo, hi) = self.interior_hull();
        Ok(GapWindow::new(lo, hi, self.declared_separation())?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub a: HermitianMatrix,
    pub q1: OrthonormalFrame,
    /// The exact exterior eigenvectors the trial frame was perturbed from.
    pub x1: OrthonormalFrame,
}

/// Builds the instance described by `spec`.
///
/// The perturbation is `ε G / √n` with `G` complex standard Gaussian, so each
/// column moves by about `ε` before re-orthonormalization.
pub fn synth_instance(spec: &InstanceSpec) -> Result<Instance, EnsembleError> {
    spec.validate()?;
    let n = spec.n;
    let x = haar_unitary(n, spec.seed);
    let eigs: Vec<f64> = spec.exterior_eigs.iter().chain(&spec.interior_eigs).copied().collect();
    let scaled = CMatrix::from_fn(n, n, |i, j| x[(i, j)] * eigs[j]);
    let a = HermitianMatrix::new(scaled.matmul(&x.adjoint()))?;

    let exterior: Vec<usize> = (0..spec.k).collect();
    let x1_raw = x.select_columns(&exterior);
    let x1 = OrthonormalFrame::new(x1_raw.clone())?;
    let q1 = if spec.perturbation_eps == 0.0 {
        x1.clone()
    } else {
        let mut rng = seeded_rng(derive_seed(spec.seed, 1));
        let g = complex_gaussian(n, spec.k, &mut rng);
        orthonormalize(&x1_raw.add(&g.scale(spec.perturbation_eps / (n as f64).sqrt())))?
    };
    Ok(Instance { a, q1, x1 })
}
