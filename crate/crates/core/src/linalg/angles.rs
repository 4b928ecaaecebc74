//! Principal angles between subspaces, computed by two independent routes.
//!
//! The cosine route takes singular values of `UᴴV`; the sine route takes
//! singular values of `(I − VVᴴ)U`. `arccos` is ill-conditioned near zero and
//! `arcsin` near `π/2`, so each angle is taken from the sine route below `π/4`
//! and from the cosine route above.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use serde::{Deserialize, Serialize};

use super::frame::OrthonormalFrame;
use super::svd::singular_values;
use super::LinalgError;

/// Principal angles in radians, sorted descending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleSet {
    pub angles: Vec<f64>,
    pub largest: f64,
    /// Largest angle from the cosine route alone.
    pub largest_cosine_route: f64,
    /// Largest angle from the sine route alone.
    pub largest_sine_route: f64,
}

impl AngleSet {
    /// `|cosine route − sine route|` for the largest angle.
    pub fn route_discrepancy(&self) -> f64 {
        (self.largest_cosine_route - self.largest_sine_route).abs()
    }

    pub fn largest_tan(&self) -> f64 {
        self.largest.tan()
    }
}

/// Singular values of `UᴴV`, descending, clamped to `[0, 1]`.
pub fn principal_cosines(u: &OrthonormalFrame, v: &OrthonormalFrame) -> Result<Vec<f64>, LinalgError> {
    check_ambient(u, v)?;
    let cross = u.as_matrix().adjoint_matmul(v.as_matrix());
    Ok(singular_values(&cross)?.into_iter().map(|s| s.clamp(0.0, 1.0)).collect())
}

pub fn principal_angles(u: &OrthonormalFrame, v: &OrthonormalFrame) -> Result<AngleSet, LinalgError> {
    check_ambient(u, v)?;
    // The sine route needs the smaller-rank frame on the left.
    let (small, large) = if u.k() <= v.k() { (u, v) } else { (v, u) };
    let count = small.k();

    // Ascending angles from the cosine route.
    let cosines = principal_cosines(small, large)?;
    let from_cos: Vec<f64> = cosines.iter().map(|&c| c.acos()).collect();

    // Descending angles from the sine route.
    let s = small.as_matrix();
    let l = large.as_matrix();
    let residual = s.sub(&l.matmul(&l.adjoint_matmul(s)));
    let sines = singular_values(&residual)?;
    let from_sin: Vec<f64> = sines.iter().map(|&x| x.clamp(0.0, 1.0).asin()).collect();

    let mut angles: Vec<f64> = (0..count)
        .map(|i| {
            let by_sine = from_sin[i];
            let by_cosine = from_cos[count - 1 - i];
            if by_sine < FRAC_PI_4 {
                by_sine
            } else {
                by_cosine
            }
        })
        .map(|a| a.clamp(0.0, FRAC_PI_2))
        .collect();
    angles.sort_by(|a, b| b.total_cmp(a));

    Ok(AngleSet {
        largest: angles[0],
        angles,
        largest_cosine_route: from_cos[count - 1],
        largest_sine_route: from_sin[0],
    })
}

fn check_ambient(u: &OrthonormalFrame, v: &OrthonormalFrame) -> Result<(), LinalgError> {
    if u.n() != v.n() {
        return Err(LinalgError::DimensionMismatch {
            expected: u.n(),
            actual: v.n(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::CMatrix;
    use crate::linalg::orthonormalize;

    #[test]
    fn identical_subspaces() {
        let u = OrthonormalFrame::coordinate(4, &[1, 3]).unwrap();
        let a = principal_angles(&u, &u).unwrap();
        assert_eq!(a.angles, vec![0.0, 0.0]);
    }

    #[test]
    fn orthogonal_lines() {
        let u = OrthonormalFrame::coordinate(2, &[0]).unwrap();
        let v = OrthonormalFrame::coordinate(2, &[1]).unwrap();
        let a = principal_angles(&u, &v).unwrap();
        assert!((a.largest - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn rotated_line() {
        let t = 0.3f64;
        let u = OrthonormalFrame::coordinate(2, &[0]).unwrap();
        let v = orthonormalize(&CMatrix::from_real_rows(&[&[t.cos()], &[t.sin()]])).unwrap();
        let a = principal_angles(&u, &v).unwrap();
        assert!((a.largest - t).abs() < 1e-15);
        assert!(a.route_discrepancy() < 1e-8);
    }

    #[test]
    fn unequal_ranks_give_min_rank_angles() {
        let u = OrthonormalFrame::coordinate(4, &[0]).unwrap();
        let v = OrthonormalFrame::coordinate(4, &[0, 1, 2]).unwrap();
        let a = principal_angles(&u, &v).unwrap();
        assert_eq!(a.angles.len(), 1);
        assert_eq!(a.largest, 0.0);
        let b = principal_angles(&v, &u).unwrap();
        assert_eq!(b.angles.len(), 1);
    }

    #[test]
    fn mismatched_ambient_dimension() {
        let u = OrthonormalFrame::coordinate(3, &[0]).unwrap();
        let v = OrthonormalFrame::coordinate(4, &[0]).unwrap();
        assert!(matches!(
            principal_angles(&u, &v),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }
}
