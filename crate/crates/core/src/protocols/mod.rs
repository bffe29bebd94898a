//! Verifiers and provers: single and unentangled-pair proofs, interactive
//! protocols, and the global-phase distinguishability game.

pub mod distinguish;
pub mod interactive;
pub mod qma;
pub mod qma2;

pub use distinguish::{
    build_global_phase_instance, counterexample_report, helstrom_probability, CounterexampleReport,
    DistinguishabilityInstance,
};
pub use interactive::{
    commutation_check, corrupt_encoding, encode_protocol, encode_strategy, random_protocol_with,
    random_strategy_with, run_protocol, run_protocol_dephased, EncodingFrame, FirstMover, ProtocolSpec,
    ProverStrategy, Registers,
};
pub use qma::{
    doubled_spectrum, qma_encoding_check, qma_optimal_prover, spectrum_doubling_deviation, OptimalProof,
    QmaEncodingReport, QmaVerifier,
};
pub use qma2::{
    product_max_dense, qma2_encoding_check, qma2_product_max, seesaw_from, ProductOptimum, Qma2EncodingReport,
    SeeSawOptions,
};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, hermiticity_deviation, ComplexMatrix};

/// Tolerance for POVM, unitarity and normalization checks.
pub const POVM_TOL: f64 = 1e-10;

/// Requires `a` Hermitian with spectrum in `[-tol, 1 + tol]`.
pub fn validate_povm(a: &ComplexMatrix, tol: f64) -> Result<()> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!("accept operator is {}x{}", a.rows(), a.cols())));
    }
    let deviation = hermiticity_deviation(a);
    if deviation > tol {
        return Err(Error::NotHermitian { deviation, tol });
    }
    let spectrum = hermitian_eigenvalues(a, tol)?;
    let (max, min) = (spectrum[0], *spectrum.last().unwrap());
    if min < -tol || max > 1.0 + tol {
        return Err(Error::NotPovmElement { min, max });
    }
    Ok(())
}
