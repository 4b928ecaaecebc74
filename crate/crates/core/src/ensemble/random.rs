//! Seeded random matrices.
//!
//! All randomness flows from ChaCha8 streams keyed by 64-bit seeds; derived
//! seeds come from the SplitMix64 finalizer, so a `(master, index)` pair
//! always maps to the same stream regardless of execution order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{CMatrix, Complex64};

/// Stable mix of a master seed and a stream index.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries `(x + iy)/√2` with `x, y` standard normal, so `E|z|² = 1`.
pub fn complex_gaussian(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re * scale, im * scale)
    })
}

/// Haar-distributed `n x n` unitary.
///
/// QR of a complex Gaussian matrix by twice-iterated Gram-Schmidt. The
/// triangular factor from Gram-Schmidt has a positive real diagonal, which is
/// exactly the phase normalization that makes `Q` Haar distributed.
pub fn haar_unitary(n: usize, seed: u64) -> CMatrix {
    assert!(n >= 1, "haar_unitary needs n >= 1");
    let mut rng = seeded_rng(seed);
    loop {
        let g = complex_gaussian(n, n, &mut rng);
        if let Some(q) = gram_schmidt_q(&g) {
            return q;
        }
        // A numerically singular Gaussian draw has probability zero; redraw.
    }
}

fn gram_schmidt_q(g: &CMatrix) -> Option<CMatrix> {
    let n = g.rows();
    let mut q = CMatrix::zeros(n, g.cols());
    for j in 0..g.cols() {
        let mut v = g.column(j);
        for _ in 0..2 {
            for p in 0..j {
                let c: Complex64 = (0..n).map(|i| q[(i, p)].conj() * v[i]).sum();
                for (i, vi) in v.iter_mut().enumerate() {
                    *vi -= c * q[(i, p)];
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 1e-12) {
            return None;
        }
        let unit: Vec<Complex64> = v.into_iter().map(|z| z / norm).collect();
        q.set_column(j, &unit);
    }
    Some(q)
}
