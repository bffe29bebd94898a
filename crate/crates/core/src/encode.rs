//! Single-party real encoding with one extra qubit.
//!
//! Operators map to `R(M) = I⊗Re(M) + iY⊗Im(M)`, the real block matrix
//! `[[Re M, Im M], [-Im M, Re M]]`. States map to
//! `R(ψ) = V⊗I · (|0⟩|ψ⟩ + |1⟩|ψ*⟩)/√2 = |0⟩Re ψ - |1⟩Im ψ`.
//! The minus sign on the imaginary half is forced by `V`: with it,
//! `R(M)R(ψ) = R(Mψ)` and `R(ψ)ᵀR(M)R(ψ) = Re⟨ψ|M|ψ⟩` hold exactly.
//!
//! Global phase is not quotiented out: `R(e^{iθ}ψ) ≠ R(ψ)` in general.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::linalg::{check_property, ComplexMatrix, ComplexVector, Property, C64, ONE, ZERO};

/// Normalization tolerance for states handed to the encoders.
pub const NORM_TOL: f64 = 1e-10;

/// `V = (1/√2)[[1, 1], [i, -i]]`; satisfies `V Z V† = Y`.
pub fn basis_change_v() -> ComplexMatrix {
    let h = FRAC_1_SQRT_2;
    ComplexMatrix::from_rows(&[
        vec![C64::new(h, 0.0), C64::new(h, 0.0)],
        vec![C64::new(0.0, h), C64::new(0.0, -h)],
    ])
    .unwrap()
}

/// `iY = [[0, 1], [-1, 0]]`.
pub fn i_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![ZERO, ONE], vec![-ONE, ZERO]]).unwrap()
}

/// Projector onto `V|b⟩`, the extra-qubit frame in which encoded operators
/// are block diagonal.
pub fn frame_projector(b: usize) -> ComplexMatrix {
    basis_change_v().column(b).projector()
}

#[derive(Clone, Debug, PartialEq)]
pub struct EncodedState {
    pub vector: ComplexVector,
    pub source_dim: usize,
}

impl EncodedState {
    /// Index of the extra qubit in the encoded register.
    pub const EXTRA_QUBIT_INDEX: usize = 0;

    /// `(V†⊗I) R(ψ)`, which equals `(|0⟩|ψ⟩ + |1⟩|ψ*⟩)/√2`.
    pub fn branch_form(&self) -> ComplexVector {
        let vd = basis_change_v().adjoint().tensor(&ComplexMatrix::identity(self.source_dim));
        vd.apply(&self.vector)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EncodedOperator {
    pub matrix: ComplexMatrix,
    pub source_dim: usize,
}

impl EncodedOperator {
    /// `(V†⊗I) R(M) (V⊗I)`, block diagonal with blocks `M` and `M*`.
    pub fn block_form(&self) -> ComplexMatrix {
        let v = basis_change_v().tensor(&ComplexMatrix::identity(self.source_dim));
        v.adjoint().matmul(&self.matrix).matmul(&v)
    }
}

/// Real-linear map `ψ ↦ |0⟩Re ψ - |1⟩Im ψ` on arbitrary (not necessarily
/// normalized) vectors.
pub fn encode_vector(psi: &ComplexVector) -> ComplexVector {
    let re = psi.as_slice().iter().map(|z| C64::new(z.re, 0.0));
    let im = psi.as_slice().iter().map(|z| C64::new(-z.im, 0.0));
    ComplexVector::new(re.chain(im).collect())
}

pub fn encode_state(psi: &ComplexVector) -> Result<EncodedState> {
    let norm_sqr = psi.norm_sqr();
    if (norm_sqr - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { norm_sqr });
    }
    Ok(EncodedState {
        vector: encode_vector(psi),
        source_dim: psi.dim(),
    })
}

/// Left inverse of [`encode_state`]: `ψ = top - i·bottom`.
pub fn decode_state(e: &EncodedState) -> ComplexVector {
    let d = e.source_dim;
    let v = e.vector.as_slice();
    ComplexVector::new((0..d).map(|k| C64::new(v[k].re, -v[d + k].re)).collect())
}

/// `R(M) = I⊗Re(M) + iY⊗Im(M)` as an explicit real matrix.
pub fn encode_matrix(m: &ComplexMatrix) -> ComplexMatrix {
    let (r, c) = (m.rows(), m.cols());
    ComplexMatrix::from_fn(2 * r, 2 * c, |i, j| {
        let z = m[(i % r, j % c)];
        match (i < r, j < c) {
            (true, true) | (false, false) => C64::new(z.re, 0.0),
            (true, false) => C64::new(z.im, 0.0),
            (false, true) => C64::new(-z.im, 0.0),
        }
    })
}

pub fn encode_operator(m: &ComplexMatrix) -> Result<EncodedOperator> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "cannot encode non-square {}x{} operator",
            m.rows(),
            m.cols()
        )));
    }
    Ok(EncodedOperator {
        matrix: encode_matrix(m),
        source_dim: m.rows(),
    })
}

/// `|0⟩⟨0|⊗M + |1⟩⟨1|⊗M*`, the conjugation-branch form of `M`.
pub fn conjugation_branch_form(m: &ComplexMatrix) -> ComplexMatrix {
    let p0 = ComplexMatrix::real_diagonal(&[1.0, 0.0]);
    let p1 = ComplexMatrix::real_diagonal(&[0.0, 1.0]);
    &p0.tensor(m) + &p1.tensor(&m.conjugate())
}

/// Returns `(Re⟨ψ|M|ψ⟩, R(ψ)ᵀ R(M) R(ψ))`.
pub fn verify_expectation(m: &ComplexMatrix, psi: &ComplexVector) -> Result<(f64, f64)> {
    if !m.is_square() || m.rows() != psi.dim() {
        return Err(Error::DimensionMismatch(format!(
            "operator {}x{} vs state of dimension {}",
            m.rows(),
            m.cols(),
            psi.dim()
        )));
    }
    let complex_side = m.expectation(psi).re;
    let r = encode_vector(psi);
    let encoded_side = encode_matrix(m).expectation(&r).re;
    Ok((complex_side, encoded_side))
}

/// Whether `check_property` agrees on `M` and `R(M)`.
pub fn property_transported(m: &ComplexMatrix, which: Property, tol: f64) -> bool {
    check_property(m, which, tol) == check_property(&encode_matrix(m), which, tol)
}

/// Multiplication by a global phase, encoded: `R(e^{iθ} I)`.
pub fn encoded_phase(theta: f64, dim: usize) -> ComplexMatrix {
    encode_matrix(&ComplexMatrix::identity(dim).scale(C64::from_polar(1.0, theta)))
}
