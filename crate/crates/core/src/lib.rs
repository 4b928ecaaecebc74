//! Residual-based `tan θ` certificates for approximate spectral subspaces of
//! Hermitian matrices.
//!
//! Given a Hermitian `A` and an orthonormal basis `Q₁` of a trial subspace,
//! [`certify::certify_apriori`] bounds the largest principal angle between
//! `span(Q₁)` and the true spectral subspace by `‖R‖/d`, using only the
//! spectra of the compressions `Q₁ᴴAQ₁` and `Q₂ᴴAQ₂`, and encloses the
//! remaining eigenvalues. [`certify::certify_aposteriori`] gives the bound
//! `‖R‖/δ` when an interval containing the complementary exact eigenvalues is
//! known. Every certificate can be checked against an exact eigendecomposition.

// `!(x > 0.0)` style tests are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod certify;
pub mod ensemble;
pub mod io;
pub mod linalg;
