//! Dense complex linear algebra.

pub mod eigen;
pub mod matrix;
pub mod random;

pub use eigen::{
    check_property, hermitian_eigensystem, hermitian_eigenvalues, hermiticity_deviation,
    schmidt_coefficients, trace_norm, unitarity_deviation, unitary_with_first_column, Eigensystem,
    Property, DEFAULT_TOL,
};
pub use matrix::{
    conjugate, embed_operator, gates, inverse_permutation, partial_trace, permute_state,
    permute_subsystems, tensor, tensor_all, ComplexMatrix, ComplexVector, C64, I, ONE, ZERO,
};
pub use random::{random_state, random_unitary};
