use crate::linalg::{complete_frame, spectral_norm, CMatrix, HermitianMatrix, LinalgError, OrthonormalFrame};

/// The partition of `QᴴAQ` for `Q = [Q₁ Q₂]` unitary:
///
/// ```text
/// QᴴAQ = [ A₁  Bᴴ ]    A₁ = Q₁ᴴAQ₁,  A₂ = Q₂ᴴAQ₂,  B = Q₂ᴴAQ₁
///        [ B   A₂ ]
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct BlockForm {
    pub a1: CMatrix,
    pub a2: CMatrix,
    pub b: CMatrix,
    /// The completion `Q₂` used to form `a2` and `b`.
    pub q2: OrthonormalFrame,
}

impl BlockForm {
    /// `[[A₁, Bᴴ], [B, A₂]]`.
    pub fn reassemble(&self) -> CMatrix {
        let k = self.a1.rows();
        let m = self.a2.rows();
        CMatrix::from_fn(k + m, k + m, |i, j| match (i < k, j < k) {
            (true, true) => self.a1[(i, j)],
            (true, false) => self.b[(j - k, i)].conj(),
            (false, true) => self.b[(i - k, j)],
            (false, false) => self.a2[(i - k, j - k)],
        })
    }
}

/// `R = AQ₁ − Q₁A₁` and its spectral norm `ρ = ‖R‖`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub r: CMatrix,
    pub rho: f64,
}

pub(crate) fn check_operands(a: &HermitianMatrix, q1: &OrthonormalFrame) -> Result<(), LinalgError> {
    if a.n() != q1.n() {
        return Err(LinalgError::DimensionMismatch {
            expected: a.n(),
            actual: q1.n(),
        });
    }
    if q1.k() >= q1.n() {
        return Err(LinalgError::InvalidRank { n: q1.n(), k: q1.k() });
    }
    Ok(())
}

pub fn block_partition(a: &HermitianMatrix, q1: &OrthonormalFrame) -> Result<BlockForm, LinalgError> {
    check_operands(a, q1)?;
    let q2 = complete_frame(q1)?;
    let am = a.as_matrix();
    let aq1 = am.matmul(q1.as_matrix());
    let aq2 = am.matmul(q2.as_matrix());
    let a1 = q1.as_matrix().adjoint_matmul(&aq1).hermitian_part();
    let a2 = q2.as_matrix().adjoint_matmul(&aq2).hermitian_part();
    let b = q2.as_matrix().adjoint_matmul(&aq1);
    Ok(BlockForm { a1, a2, b, q2 })
}

pub fn residual(a: &HermitianMatrix, q1: &OrthonormalFrame) -> Result<ResidualReport, LinalgError> {
    check_operands(a, q1)?;
    let q = q1.as_matrix();
    let aq = a.as_matrix().matmul(q);
    let a1 = q.adjoint_matmul(&aq);
    let r = aq.sub(&q.matmul(&a1));
    let rho = spectral_norm(&r);
    Ok(ResidualReport { r, rho })
}
