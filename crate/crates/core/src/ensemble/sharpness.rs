use serde::{Deserialize, Serialize};

use super::EnsembleError;
use crate::certify::{apriori_oracle, certify_apriori};
use crate::linalg::{CMatrix, HermitianMatrix, OrthonormalFrame};

/// One row of the sharpness table for `A(ε) = [[2, ε], [ε, 0]]`, `Q₁ = e₁`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharpnessRow {
    pub eps: f64,
    pub tan_bound: f64,
    pub exact_tan: f64,
    pub ratio: f64,
}

/// Compares the a priori bound `ε/2` with the oracle angle on the 2×2 family.
pub fn sharpness_probe(eps_grid: &[f64]) -> Result<Vec<SharpnessRow>, EnsembleError> {
    let q1 = OrthonormalFrame::coordinate(2, &[0])?;
    eps_grid
        .iter()
        .map(|&eps| {
            if !(eps > 0.0 && eps < 1.0) {
                return Err(EnsembleError::InvalidSpec(format!("probe needs 0 < eps < 1, got {eps}")));
            }
            let a = HermitianMatrix::new(CMatrix::from_real_rows(&[&[2.0, eps], &[eps, 0.0]]))?;
            let cert = certify_apriori(&a, &q1)?;
            let oracle = apriori_oracle(&a, &q1, &cert)?;
            let (Some(tan_bound), Some(exact_tan)) = (cert.tan_bound, oracle.exact_tan) else {
                return Err(EnsembleError::InvalidSpec(format!("certificate unexpectedly invalid at eps={eps}")));
            };
            Ok(SharpnessRow {
                eps,
                tan_bound,
                exact_tan,
                ratio: exact_tan / tan_bound,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_at_point_one() {
        let rows = sharpness_probe(&[0.1]).unwrap();
        let expected = (0.5 * 0.1f64.atan()).tan() / 0.05;
        assert!((rows[0].ratio - expected).abs() < 1e-12);
        assert!((rows[0].ratio - 0.99751).abs() < 1e-5);
    }

    #[test]
    fn rejects_out_of_range_eps() {
        assert!(sharpness_probe(&[0.0]).is_err());
        assert!(sharpness_probe(&[1.0]).is_err());
    }
}
