//! Validated operands: Hermitian matrices and orthonormal frames.

use num_complex::Complex64;

use super::eigen::{eigh, Spectrum};
use super::matrix::{dot, norm2, CMatrix, ZERO};
use super::svd::singular_values;
use super::LinalgError;

const HERMITIAN_RELATIVE_TOLERANCE: f64 = 1e-12;
const ORTHONORMAL_TOLERANCE: f64 = 1e-10;
const RANK_RELATIVE_TOLERANCE: f64 = 1e-10;

/// A square, exactly Hermitian complex matrix of order at least 2.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    /// Checks shape and Hermiticity, then stores the symmetrized `(A + Aᴴ)/2`.
    pub fn new(raw: CMatrix) -> Result<Self, LinalgError> {
        let (rows, cols) = raw.shape();
        if rows != cols {
            return Err(LinalgError::NotSquare { rows, cols });
        }
        if rows < 2 {
            return Err(LinalgError::TooSmall { n: rows });
        }
        let defect = raw.hermitian_defect();
        let limit = HERMITIAN_RELATIVE_TOLERANCE * (1.0 + raw.max_abs());
        if !(defect <= limit) {
            return Err(LinalgError::NotHermitian { defect, limit });
        }
        Ok(Self(raw.hermitian_part()))
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn max_abs(&self) -> f64 {
        self.0.max_abs()
    }

    /// The scale-aware comparison tolerance `1e-9 * (1 + ‖A‖_max)`.
    pub fn tolerance(&self) -> f64 {
        1e-9 * (1.0 + self.max_abs())
    }

    /// `Wᴴ A W` for a square unitary `W`.
    pub fn conjugate_by(&self, w: &CMatrix) -> Result<Self, LinalgError> {
        Self::new(w.adjoint_matmul(&self.0.matmul(w)))
    }

    pub fn shifted(&self, shift: f64) -> Self {
        Self(self.0.shift_diagonal(shift))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self(self.0.scale(factor))
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }
}

pub fn validate_hermitian(raw: CMatrix) -> Result<HermitianMatrix, LinalgError> {
    HermitianMatrix::new(raw)
}

/// Eigendecomposition of `a`, eigenvalues ascending.
pub fn hermitian_spectrum(a: &HermitianMatrix, want_vectors: bool) -> Result<Spectrum, LinalgError> {
    eigh(a.as_matrix(), want_vectors)
}

/// An `n x k` matrix with orthonormal columns, `1 <= k <= n`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalFrame(CMatrix);

impl OrthonormalFrame {
    /// Accepts `columns` as-is if its Gram matrix is within `1e-10` of the identity.
    pub fn new(columns: CMatrix) -> Result<Self, LinalgError> {
        if columns.cols() == 0 || columns.cols() > columns.rows() {
            return Err(LinalgError::InvalidRank {
                n: columns.rows(),
                k: columns.cols(),
            });
        }
        let defect = gram_defect(&columns);
        if !(defect <= ORTHONORMAL_TOLERANCE) {
            return Err(LinalgError::NotOrthonormal { defect });
        }
        Ok(Self(columns))
    }

    /// Coordinate frame spanned by the columns `indices` of `I_n`.
    pub fn coordinate(n: usize, indices: &[usize]) -> Result<Self, LinalgError> {
        Self::new(CMatrix::identity(n).select_columns(indices))
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn k(&self) -> usize {
        self.0.cols()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    /// `W Q` for a square unitary `W`.
    pub fn transformed(&self, w: &CMatrix) -> Result<Self, LinalgError> {
        Self::new(w.matmul(&self.0))
    }
}

fn gram_defect(m: &CMatrix) -> f64 {
    m.adjoint_matmul(m).max_abs_diff(&CMatrix::identity(m.cols()))
}

/// Orthonormal basis for the column span of `raw` (Gram-Schmidt, applied twice).
pub fn orthonormalize(raw: &CMatrix) -> Result<OrthonormalFrame, LinalgError> {
    let (n, k) = raw.shape();
    if k == 0 || k > n {
        return Err(LinalgError::InvalidRank { n, k });
    }
    let sv = singular_values(raw)?;
    let (largest, smallest) = (sv[0], sv[k - 1]);
    if !(largest > 0.0) || smallest < RANK_RELATIVE_TOLERANCE * largest {
        return Err(LinalgError::RankDeficient { smallest, largest });
    }
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(k);
    for j in 0..k {
        let v = project_out(raw.column(j), &basis);
        let norm = norm2(&v);
        if !(norm > 0.0) {
            return Err(LinalgError::RankDeficient { smallest, largest });
        }
        basis.push(v.into_iter().map(|z| z / norm).collect());
    }
    OrthonormalFrame::new(CMatrix::from_columns(n, &basis))
}

/// Removes the components along `basis` (orthonormal) from `v`, twice.
fn project_out(mut v: Vec<Complex64>, basis: &[Vec<Complex64>]) -> Vec<Complex64> {
    for _ in 0..2 {
        for b in basis {
            let c = dot(b, &v);
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= c * bi;
            }
        }
    }
    v
}

/// Orthonormal complement `Q₂` of `q1`, so that `[Q₁ Q₂]` is unitary.
///
/// Greedily picks the coordinate vector with the largest residual against the
/// running basis; that residual is always at least `1/√n`. Residuals of all
/// coordinate vectors are deflated in place as the basis grows.
pub fn complete_frame(q1: &OrthonormalFrame) -> Result<OrthonormalFrame, LinalgError> {
    let n = q1.n();
    if q1.k() >= n {
        return Err(LinalgError::InvalidRank { n, k: q1.k() });
    }
    let q = q1.as_matrix();
    let mut basis: Vec<Vec<Complex64>> = (0..q1.k()).map(|j| q.column(j)).collect();
    // residuals[i] = (I − Q₁Q₁ᴴ) e_i
    let mut residuals: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            let mut e = vec![ZERO; n];
            e[i] = Complex64::new(1.0, 0.0);
            project_out(e, &basis)
        })
        .collect();
    let mut complement: Vec<Vec<Complex64>> = Vec::with_capacity(n - q1.k());
    while basis.len() < n {
        let best = (0..n)
            .max_by(|&a, &b| norm2(&residuals[a]).total_cmp(&norm2(&residuals[b])))
            .expect("n >= 1");
        // Re-projecting the winner against the full basis keeps it orthogonal
        // to working precision even after many deflations.
        let r = project_out(residuals[best].clone(), &basis);
        let norm = norm2(&r);
        let unit: Vec<Complex64> = r.into_iter().map(|z| z / norm).collect();
        for res in &mut residuals {
            let c = dot(&unit, res);
            for (x, u) in res.iter_mut().zip(&unit) {
                *x -= c * u;
            }
        }
        basis.push(unit.clone());
        complement.push(unit);
    }
    Ok(OrthonormalFrame(CMatrix::from_columns(n, &complement)))
}
