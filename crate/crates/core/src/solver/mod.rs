//! Exact linear algebra on graded slices of `U_n`.
//!
//! Every slice is finite dimensional, so existence statements about
//! homogeneous elements and derivations become finite linear systems.

mod derspace;
mod preimage;
mod matrix;
mod slice;

pub use derspace::{derivation_space, ConstrainedSolutions, DerivationSpace};
pub use preimage::{ad_preimage, twisted_kernel, rfactor_decompose, Preimage};
pub use matrix::{dot, RationalMatrix, Rref, Solution};
pub use slice::{dim, operator_matrix, operator_matrix_on, slice, weighted_slice, GradedSlice};

use crate::scalar::Scalar;

/// A result that contradicts a proven identity of `U_n`, with the linear system
/// that produced it. Empty fields mean the failure did not come from a
/// linear solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnomalyReport {
    pub message: String,
    pub matrix: RationalMatrix,
    pub rhs: Vec<Scalar>,
    /// A left null vector pairing nonzero with `rhs`, when the system was
    /// inconsistent; otherwise a witness vector or empty.
    pub certificate: Vec<Scalar>,
}
