//! Singular values through the Hermitian eigensolver.

use num_complex::Complex64;

use super::eigen::eigh;
use super::matrix::{dot, norm2, CMatrix};
use super::LinalgError;

/// Singular values of `m`, descending, `min(rows, cols)` of them.
///
/// Householder QR first reduces `m` to its square triangular factor; one-sided
/// Jacobi then orthogonalizes the columns of that factor, which diagonalizes
/// its Gram matrix without ever forming it. Small singular values therefore
/// keep absolute accuracy `~ eps * ‖M‖`, unlike the explicit Gram route.
pub fn singular_values(m: &CMatrix) -> Result<Vec<f64>, LinalgError> {
    let (rows, cols) = m.shape();
    if rows.min(cols) == 0 {
        return Ok(Vec::new());
    }
    let r = if rows >= cols {
        householder_r(m)
    } else {
        householder_r(&m.adjoint())
    };
    one_sided_jacobi(&r)
}

const ONE_SIDED_MAX_SWEEPS: usize = 64;

fn one_sided_jacobi(m: &CMatrix) -> Result<Vec<f64>, LinalgError> {
    let k = m.cols();
    let mut columns: Vec<Vec<Complex64>> = (0..k).map(|j| m.column(j)).collect();
    let tol = f64::EPSILON * (m.rows() as f64);
    for _ in 0..ONE_SIDED_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..k {
            for q in (p + 1)..k {
                let (head, tail) = columns.split_at_mut(q);
                let (cp, cq) = (&mut head[p], &mut tail[0]);
                let alpha = norm2(cp).powi(2);
                let beta = norm2(cq).powi(2);
                let gamma = dot(cp, cq);
                let g = gamma.norm();
                if g == 0.0 || g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
                    let w = *y * phase;
                    let xp = *x;
                    *x = xp * c - w * s;
                    *y = xp * s + w * c;
                }
            }
        }
        if !rotated {
            let mut values: Vec<f64> = columns.iter().map(|c| norm2(c)).collect();
            values.sort_by(|a, b| b.total_cmp(a));
            return Ok(values);
        }
    }
    Err(LinalgError::NoConvergence {
        sweeps: ONE_SIDED_MAX_SWEEPS,
    })
}

/// Singular values from the eigenvalues of the smaller Gram matrix, descending.
///
/// Accurate in the relative sense only for the large singular values.
pub fn gram_singular_values(m: &CMatrix) -> Result<Vec<f64>, LinalgError> {
    let gram = if m.rows() >= m.cols() {
        m.adjoint_matmul(m)
    } else {
        m.matmul(&m.adjoint())
    };
    if gram.rows() == 0 {
        return Ok(Vec::new());
    }
    let spec = eigh(&gram, false)?;
    Ok(spec.values().iter().rev().map(|&l| l.max(0.0).sqrt()).collect())
}

/// Largest singular value (`0` for an empty or zero matrix).
pub fn spectral_norm(m: &CMatrix) -> f64 {
    match m.shape() {
        (0, _) | (_, 0) => 0.0,
        (_, 1) => super::matrix::norm2(&m.column(0)),
        (1, _) => super::matrix::norm2(m.as_slice()),
        _ => {
            let scale = m.max_abs();
            if scale == 0.0 {
                return 0.0;
            }
            // Rescaling keeps the Gram entries away from overflow/underflow.
            let scaled = m.scale(1.0 / scale);
            let sv = gram_singular_values(&scaled).expect("Gram eigensolve of a bounded matrix converges");
            sv[0] * scale
        }
    }
}

/// Upper-triangular `cols x cols` factor `R` of `M = QR` for `rows >= cols`.
pub(crate) fn householder_r(m: &CMatrix) -> CMatrix {
    let (rows, cols) = m.shape();
    assert!(rows >= cols, "householder_r needs a tall matrix");
    let mut work = m.clone();
    let mut v = vec![Complex64::new(0.0, 0.0); rows];
    for j in 0..cols {
        let norm = (j..rows).map(|i| work[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = work[(j, j)];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        // Reflect x onto -phase*‖x‖*e_j; the sign choice avoids cancellation.
        let alpha = -phase * norm;
        for i in j..rows {
            v[i] = work[(i, j)];
        }
        v[j] -= alpha;
        let v_norm_sq: f64 = v[j..rows].iter().map(|z| z.norm_sqr()).sum();
        if v_norm_sq == 0.0 {
            continue;
        }
        for c in j..cols {
            let proj: Complex64 = (j..rows).map(|i| v[i].conj() * work[(i, c)]).sum();
            let f = proj * (2.0 / v_norm_sq);
            for i in j..rows {
                let vi = v[i];
                work[(i, c)] -= f * vi;
            }
        }
    }
    CMatrix::from_fn(cols, cols, |i, j| if i <= j { work[(i, j)] } else { Complex64::new(0.0, 0.0) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex_column(values: &[f64]) -> CMatrix {
        CMatrix::from_fn(values.len(), 1, |i, _| Complex64::new(values[i], 0.0))
    }

    #[test]
    fn householder_factor_preserves_gram() {
        let m = CMatrix::from_fn(6, 3, |i, j| Complex64::new((i as f64 * 0.7 + j as f64).sin(), (i * j) as f64 * 0.1));
        let r = householder_r(&m);
        assert!(r.adjoint_matmul(&r).max_abs_diff(&m.adjoint_matmul(&m)) < 1e-13);
        for i in 0..3 {
            for j in 0..i {
                assert_eq!(r[(i, j)], Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn zero_matrix_has_zero_norm() {
        assert_eq!(spectral_norm(&CMatrix::zeros(3, 2)), 0.0);
    }

    #[test]
    fn column_norm_is_euclidean() {
        assert_eq!(spectral_norm(&complex_column(&[3.0, 4.0])), 5.0);
    }

    #[test]
    fn jordan_like_block() {
        // σ_max² is the larger eigenvalue of [[1,1],[1,2]]: (3+√5)/2.
        let expected = ((3.0 + 5f64.sqrt()) / 2.0).sqrt();
        let m = CMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]);
        assert!((spectral_norm(&m) - expected).abs() < 1e-15 * expected);
        let sv = singular_values(&m).unwrap();
        assert!((sv[0] - expected).abs() < 1e-14);
        // σ_min = 1/σ_max since |det| = 1.
        assert!((sv[1] - 1.0 / expected).abs() < 1e-14);
    }

    #[test]
    fn tiny_singular_values_keep_absolute_accuracy() {
        let m = CMatrix::from_diagonal(&[1.0, 1e-12]);
        let sv = singular_values(&m).unwrap();
        assert!((sv[1] - 1e-12).abs() < 1e-20);
    }

    #[test]
    fn wide_and_tall_agree() {
        let m = CMatrix::from_fn(4, 2, |i, j| Complex64::new((i + j) as f64, (i * j) as f64 * 0.5));
        let a = singular_values(&m).unwrap();
        let b = singular_values(&m.adjoint()).unwrap();
        assert_eq!(a.len(), 2);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-13);
        }
    }
}
