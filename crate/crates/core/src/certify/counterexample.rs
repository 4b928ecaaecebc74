use std::f64::consts::SQRT_2;

use crate::linalg::{CMatrix, HermitianMatrix, OrthonormalFrame};

/// The 3×3 instance sitting exactly on `ρ = √2·d`.
///
/// With `Q₁` the first two coordinate vectors, `spec(A₁) = {−1, 1}`,
/// `spec(A₂) = {0}`, `d = 1` and `‖R‖ = √2`, yet `eig(A) = {−2, 1, 1}`: no
/// eigenvalue falls in `(−1, 1)`.
pub fn canonical_counterexample() -> (HermitianMatrix, OrthonormalFrame) {
    let a = CMatrix::from_real_rows(&[&[-1.0, 0.0, SQRT_2], &[0.0, 1.0, 0.0], &[SQRT_2, 0.0, 0.0]]);
    let a = HermitianMatrix::new(a).expect("symmetric literal");
    let q1 = OrthonormalFrame::coordinate(3, &[0, 1]).expect("coordinate frame");
    (a, q1)
}
