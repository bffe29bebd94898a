//! Single-proof verifiers: the optimal prover and the check that encoding the
//! accept operator changes neither the best achievable acceptance nor the
//! honest proof's acceptance.

use crate::encode::{encode_matrix, encode_state, EncodedOperator};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigensystem, hermitian_eigenvalues, ComplexMatrix, ComplexVector};

use super::{validate_povm, POVM_TOL};

/// Accept operator `A` with promise bounds `0 ≤ s < c ≤ 1`.
#[derive(Clone, Debug)]
pub struct QmaVerifier {
    accept: ComplexMatrix,
    completeness: f64,
    soundness: f64,
}

impl QmaVerifier {
    pub fn new(accept: ComplexMatrix, completeness: f64, soundness: f64) -> Result<Self> {
        if !(0.0 <= soundness && soundness < completeness && completeness <= 1.0) {
            return Err(Error::InvalidBounds { completeness, soundness });
        }
        validate_povm(&accept, POVM_TOL)?;
        Ok(Self { accept, completeness, soundness })
    }

    /// Bounds `c = 2/3`, `s = 1/3`.
    pub fn from_accept(accept: ComplexMatrix) -> Result<Self> {
        Self::new(accept, 2.0 / 3.0, 1.0 / 3.0)
    }

    pub fn accept(&self) -> &ComplexMatrix {
        &self.accept
    }

    pub fn completeness(&self) -> f64 {
        self.completeness
    }

    pub fn soundness(&self) -> f64 {
        self.soundness
    }

    pub fn dim(&self) -> usize {
        self.accept.rows()
    }
}

#[derive(Clone, Debug)]
pub struct OptimalProof {
    pub probability: f64,
    pub proof: ComplexVector,
}

/// The best proof is a top eigenvector of `A`.
pub fn qma_optimal_prover(v: &QmaVerifier) -> Result<OptimalProof> {
    let es = hermitian_eigensystem(&v.accept, POVM_TOL)?;
    Ok(OptimalProof {
        probability: es.max_eigenvalue(),
        proof: es.top_eigenvector().clone(),
    })
}

#[derive(Clone, Debug)]
pub struct QmaEncodingReport {
    /// `λ_max(A)`.
    pub complex_max: f64,
    /// `λ_max(R(A))`: the best any proof, real or complex, can do against the
    /// encoded verifier.
    pub encoded_max: f64,
    /// `⟨ψ|A|ψ⟩` for the optimal complex proof.
    pub honest_complex: f64,
    /// `R(ψ)ᵀ R(A) R(ψ)`.
    pub honest_encoded: f64,
    /// Largest off-diagonal block entry of `(V†⊗I) R(A) (V⊗I)`.
    pub block_deviation: f64,
}

impl QmaEncodingReport {
    pub const MAX_TOL: f64 = 1e-9;
    pub const HONEST_TOL: f64 = 1e-10;
    pub const BLOCK_TOL: f64 = 1e-12;

    pub fn soundness_preserved(&self) -> bool {
        (self.complex_max - self.encoded_max).abs() <= Self::MAX_TOL
    }

    pub fn completeness_preserved(&self) -> bool {
        (self.honest_complex - self.honest_encoded).abs() <= Self::HONEST_TOL
    }

    pub fn block_diagonal(&self) -> bool {
        self.block_deviation <= Self::BLOCK_TOL
    }

    pub fn passes(&self) -> bool {
        self.soundness_preserved() && self.completeness_preserved() && self.block_diagonal()
    }
}

pub fn qma_encoding_check(v: &QmaVerifier) -> Result<QmaEncodingReport> {
    let honest = qma_optimal_prover(v)?;
    let encoded = EncodedOperator { matrix: encode_matrix(&v.accept), source_dim: v.dim() };
    let encoded_max = hermitian_eigenvalues(&encoded.matrix, POVM_TOL)?[0];
    let proof = encode_state(&honest.proof)?;
    let honest_encoded = encoded.matrix.expectation(&proof.vector).re;
    let honest_complex = v.accept.expectation(&honest.proof).re;
    let d = v.dim();
    let block = encoded.block_form();
    let block_deviation = block.block(0, d, d, d).max_abs().max(block.block(d, 0, d, d).max_abs());
    Ok(QmaEncodingReport {
        complex_max: honest.probability,
        encoded_max,
        honest_complex,
        honest_encoded,
        block_deviation,
    })
}

/// Spectrum of `A` with each eigenvalue repeated twice, next to the spectrum
/// of `R(A)`, both sorted descending.
pub fn doubled_spectrum(a: &ComplexMatrix) -> Result<(Vec<f64>, Vec<f64>)> {
    let single = hermitian_eigenvalues(a, POVM_TOL)?;
    let doubled = single.iter().flat_map(|&l| [l, l]).collect();
    let encoded = hermitian_eigenvalues(&encode_matrix(a), POVM_TOL)?;
    Ok((doubled, encoded))
}

/// Largest gap between the doubled spectrum of `A` and the spectrum of `R(A)`.
pub fn spectrum_doubling_deviation(a: &ComplexMatrix) -> Result<f64> {
    let (doubled, encoded) = doubled_spectrum(a)?;
    Ok(doubled.iter().zip(&encoded).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
}
