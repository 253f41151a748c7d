//! Small dense complex linear algebra: 2x2 to 8x8 gates, qubit states,
//! strategy-matrix constructors and a 4x4 symmetric eigensolver.

mod gates;
mod matrix;
mod symmetric;

pub use gates::{
    check_gamma, entangler, entangler_generator, flip, identity2, normalize_su2, sigma_x, sigma_y,
    sigma_z, unitary_from_su2, unitary_from_two_param_diag, unitary_from_two_param_offdiag,
};
pub(crate) use gates::{check_range, su2_unchecked, two_param_diag_unchecked, two_param_offdiag_unchecked};
pub use matrix::{kron, kron_all, ComplexMatrix, ComplexScalar, StateVector};
pub use symmetric::{jacobi_eigs, EigenDecomposition4, SymmetricMatrix4, MAX_JACOBI_SWEEPS};
pub(crate) use symmetric::dot;
