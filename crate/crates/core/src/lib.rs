//! Real-Hilbert-space simulation of complex quantum states, operators and
//! interactive-proof verifiers.
//!
//! Every complex object is mapped to a real one on a space enlarged by one
//! "extra" qubit per party. In the frame rotated by
//! `V = (1/√2)[[1, 1], [i, -i]]` the extra qubit labels a coherent mixture of
//! the original and the complex-conjugated computation, which is what makes
//! honest parties' real operations commute with a measurement of that qubit.
//!
//! Layout convention: qubit/subsystem 0 is the most significant tensor factor,
//! and extra qubits are prepended.

pub mod encode;
pub mod error;
pub mod linalg;
pub mod multiparty;
pub mod protocols;
pub mod separable;

#[cfg(feature = "cli")]
pub mod cli;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, ComplexVector, C64};
