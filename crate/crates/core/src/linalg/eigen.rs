//! Cyclic Jacobi eigensolver for dense Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary and then applies a real plane rotation that annihilates it. Sweeps
//! run over all pairs `p < q` in row order until the off-diagonal Frobenius
//! mass falls below `1e-13 * ‖A‖_F`, followed by one polishing sweep.

use num_complex::Complex64;

use super::matrix::{CMatrix, ZERO};
use super::LinalgError;

const OFF_DIAGONAL_RELATIVE_THRESHOLD: f64 = 1e-13;
const MAX_SWEEPS: usize = 64;

/// Eigenvalues (ascending) and, optionally, the matching unitary eigenvector frame.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    vectors: Option<CMatrix>,
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Eigenvectors as columns, in the order of [`Spectrum::values`].
    pub fn vectors(&self) -> Option<&CMatrix> {
        self.vectors.as_ref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    #[cfg(test)]
    pub(crate) fn from_values(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        Self { values, vectors: None }
    }
}

/// Eigendecomposition of a square matrix that is Hermitian by construction.
///
/// Only the upper triangle and the real part of the diagonal are trusted; the
/// caller is responsible for Hermiticity.
pub(crate) fn eigh(a: &CMatrix, want_vectors: bool) -> Result<Spectrum, LinalgError> {
    assert!(a.is_square(), "eigh needs a square matrix");
    let n = a.rows();
    let mut work = a.hermitian_part();
    // Eigenvectors are accumulated as rows so that rotations touch contiguous memory.
    let mut vectors_t = want_vectors.then(|| CMatrix::identity(n));

    let threshold = OFF_DIAGONAL_RELATIVE_THRESHOLD * work.frobenius_norm();
    let mut converged = off_diagonal_norm(&work) <= threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(LinalgError::NoConvergence { sweeps });
        }
        sweep(&mut work, vectors_t.as_mut());
        sweeps += 1;
        converged = off_diagonal_norm(&work) <= threshold;
    }
    // One polishing sweep past the threshold; Jacobi converges quadratically
    // so this drives the remaining coupling to rounding level.
    if sweeps > 0 {
        sweep(&mut work, vectors_t.as_mut());
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| work[(i, i)].re.total_cmp(&work[(j, j)].re));
    let values = order.iter().map(|&i| work[(i, i)].re).collect();
    let vectors = vectors_t.map(|vt| CMatrix::from_fn(n, n, |i, j| vt[(order[j], i)]));
    Ok(Spectrum { values, vectors })
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.rows();
    let data = a.as_slice();
    let mut sum = 0.0;
    for i in 0..n {
        for z in &data[i * n + i + 1..(i + 1) * n] {
            sum += 2.0 * z.norm_sqr();
        }
    }
    sum.sqrt()
}

fn sweep(a: &mut CMatrix, mut vectors_t: Option<&mut CMatrix>) {
    let n = a.rows();
    for p in 0..n {
        for q in (p + 1)..n {
            let apq = a[(p, q)];
            let r = apq.norm();
            if r == 0.0 {
                continue;
            }
            let app = a[(p, p)].re;
            let aqq = a[(q, q)].re;
            // Coupling far below rounding of the diagonal: drop it.
            if r < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                continue;
            }
            let phase = apq / r;
            let tau = (aqq - app) / (2.0 * r);
            let t = if tau >= 0.0 {
                1.0 / (tau + (1.0 + tau * tau).sqrt())
            } else {
                -1.0 / (-tau + (1.0 + tau * tau).sqrt())
            };
            let c = 1.0 / (1.0 + t * t).sqrt();
            let s = t * c;
            // U = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
            let u = [
                Complex64::new(c, 0.0),
                Complex64::new(s, 0.0),
                -phase.conj() * s,
                phase.conj() * c,
            ];
            rotate_hermitian(a, p, q, u);
            a[(p, p)] = Complex64::new(app - t * r, 0.0);
            a[(q, q)] = Complex64::new(aqq + t * r, 0.0);
            a[(p, q)] = ZERO;
            a[(q, p)] = ZERO;
            if let Some(vt) = vectors_t.as_deref_mut() {
                rotate_rows(vt, p, q, [u[0], u[2], u[1], u[3]]);
            }
        }
    }
}

/// `A <- Uᴴ A U` for Hermitian `A`, outside the (p, q) block: rows p and q
/// are rotated and the columns restored by Hermitian symmetry.
fn rotate_hermitian(a: &mut CMatrix, p: usize, q: usize, u: [Complex64; 4]) {
    let [u_pp, u_pq, u_qp, u_qq] = u;
    rotate_rows(a, p, q, [u_pp.conj(), u_qp.conj(), u_pq.conj(), u_qq.conj()]);
    let n = a.rows();
    for j in 0..n {
        if j != p && j != q {
            let (ap, aq) = (a[(p, j)], a[(q, j)]);
            a[(j, p)] = ap.conj();
            a[(j, q)] = aq.conj();
        }
    }
}

/// Rows `p, q` of `m` become `w[0] m_p + w[1] m_q` and `w[2] m_p + w[3] m_q`.
fn rotate_rows(m: &mut CMatrix, p: usize, q: usize, w: [Complex64; 4]) {
    debug_assert!(p < q);
    let cols = m.cols();
    let data = m.as_mut_slice();
    let (head, tail) = data.split_at_mut(q * cols);
    let row_p = &mut head[p * cols..(p + 1) * cols];
    let row_q = &mut tail[..cols];
    for (x, y) in row_p.iter_mut().zip(row_q.iter_mut()) {
        let (mp, mq) = (*x, *y);
        *x = w[0] * mp + w[1] * mq;
        *y = w[2] * mp + w[3] * mq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(a: &CMatrix, spec: &Spectrum) -> f64 {
        let x = spec.vectors().unwrap();
        let ax = a.matmul(x);
        let xl = CMatrix::from_fn(x.rows(), x.cols(), |i, j| x[(i, j)] * spec.values()[j]);
        ax.max_abs_diff(&xl)
    }

    #[test]
    fn diagonal_input_sorted() {
        let s = eigh(&CMatrix::from_diagonal(&[3.0, 1.0, 2.0]), true).unwrap();
        assert_eq!(s.values(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn pauli_x() {
        let a = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let s = eigh(&a, true).unwrap();
        assert!((s.values()[0] + 1.0).abs() < 1e-15);
        assert!((s.values()[1] - 1.0).abs() < 1e-15);
        assert!(residual(&a, &s) < 1e-15);
    }

    #[test]
    fn complex_entries_and_residual() {
        let a = CMatrix::from_fn(5, 5, |i, j| {
            let (i, j) = (i as f64, j as f64);
            if i == j {
                Complex64::new(i * 0.7 - 1.0, 0.0)
            } else if i < j {
                Complex64::new((i + j).sin(), (i - 2.0 * j).cos())
            } else {
                Complex64::new((i + j).sin(), -(j - 2.0 * i).cos())
            }
        });
        assert_eq!(a.hermitian_defect(), 0.0);
        let s = eigh(&a, true).unwrap();
        assert!(residual(&a, &s) < 1e-13);
        let x = s.vectors().unwrap();
        assert!(x.adjoint_matmul(x).max_abs_diff(&CMatrix::identity(5)) < 1e-14);
        let trace: f64 = (0..5).map(|i| a[(i, i)].re).sum();
        assert!((s.values().iter().sum::<f64>() - trace).abs() < 1e-13);
    }

    #[test]
    fn one_by_one_and_zero() {
        let s = eigh(&CMatrix::from_diagonal(&[-4.0]), true).unwrap();
        assert_eq!(s.values(), &[-4.0]);
        let z = eigh(&CMatrix::zeros(3, 3), false).unwrap();
        assert_eq!(z.values(), &[0.0, 0.0, 0.0]);
    }
}
