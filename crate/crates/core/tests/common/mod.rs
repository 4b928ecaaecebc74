#![allow(dead_code)]

use tantheta::ensemble::{complex_gaussian, seeded_rng, synth_instance, Instance, SweepConfig};
use tantheta::linalg::{orthonormalize, HermitianMatrix, OrthonormalFrame};

/// `(G + Gᴴ)/2` for a complex Gaussian `G`.
pub fn random_hermitian(n: usize, seed: u64) -> HermitianMatrix {
    let g = complex_gaussian(n, n, &mut seeded_rng(seed));
    HermitianMatrix::new(g.add(&g.adjoint()).scale(0.5)).unwrap()
}

pub fn random_frame(n: usize, k: usize, seed: u64) -> OrthonormalFrame {
    orthonormalize(&complex_gaussian(n, k, &mut seeded_rng(seed))).unwrap()
}

/// Orthonormal basis of `span(U + eps·G)`, a frame at angle about `eps` from `u`.
pub fn perturbed_frame(u: &OrthonormalFrame, eps: f64, seed: u64) -> OrthonormalFrame {
    let g = complex_gaussian(u.n(), u.k(), &mut seeded_rng(seed));
    orthonormalize(&u.as_matrix().add(&g.scale(eps))).unwrap()
}

/// The `index`-th instance of the default sweep ensemble under `master`.
pub fn ensemble_instance(master: u64, index: usize) -> Instance {
    let config = SweepConfig::new(master, index + 1);
    synth_instance(&config.instance_spec(index)).unwrap()
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}
