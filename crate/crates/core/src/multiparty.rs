//! m-party encoding: one extra qubit per party, GHZ-correlated.
//!
//! Register layout: the `m` extra qubits occupy subsystems `0..m` (extra `j`
//! belongs to party `j`), followed by the party systems in order. Parties are
//! indexed from 0.

use crate::encode::{frame_projector, i_y};
use crate::error::{Error, Result};
use crate::linalg::{embed_operator, ComplexMatrix, ComplexVector, C64};

/// Per-party system dimensions of the joint (unencoded) register.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartyLayout {
    party_dims: Vec<usize>,
}

impl PartyLayout {
    pub fn new(party_dims: Vec<usize>) -> Result<Self> {
        if party_dims.is_empty() || party_dims.contains(&0) {
            return Err(Error::DimensionMismatch(format!(
                "invalid party dimensions {party_dims:?}"
            )));
        }
        Ok(Self { party_dims })
    }

    /// `m` parties of equal dimension.
    pub fn uniform(parties: usize, dim: usize) -> Self {
        Self::new(vec![dim; parties]).expect("uniform layout")
    }

    pub fn parties(&self) -> usize {
        self.party_dims.len()
    }

    pub fn party_dims(&self) -> &[usize] {
        &self.party_dims
    }

    pub fn system_dim(&self) -> usize {
        self.party_dims.iter().product()
    }

    /// Subsystem dimensions of the encoded register: `m` qubits, then parties.
    pub fn encoded_dims(&self) -> Vec<usize> {
        let mut dims = vec![2; self.parties()];
        dims.extend_from_slice(&self.party_dims);
        dims
    }

    pub fn encoded_dim(&self) -> usize {
        self.system_dim() << self.parties()
    }

    fn check_party(&self, party: usize) -> Result<()> {
        if party >= self.parties() {
            return Err(Error::PartyOutOfRange {
                party,
                parties: self.parties(),
            });
        }
        Ok(())
    }
}

/// An operator applied by one party to its own system.
#[derive(Clone, Debug)]
pub struct PartyOperator {
    pub party: usize,
    pub operator: ComplexMatrix,
}

impl PartyOperator {
    pub fn new(party: usize, operator: ComplexMatrix) -> Self {
        Self { party, operator }
    }

    /// The operator embedded in the joint unencoded system.
    pub fn on_system(&self, layout: &PartyLayout) -> Result<ComplexMatrix> {
        layout.check_party(self.party)?;
        embed_operator(&self.operator, layout.party_dims(), &[self.party])
    }
}

#[derive(Clone, Debug)]
pub struct MultipartyEncodedState {
    pub vector: ComplexVector,
    pub parties: usize,
    pub source_dim: usize,
    /// Extra qubit `k` is held by party `party_of_extra[k]`.
    pub party_of_extra: Vec<usize>,
}

/// `R^(m)` on an arbitrary vector. Amplitude of extra string `x` and system
/// index `k` is `2^{(1-m)/2} Re(i^{|x|} ψ_k)`.
pub fn encode_vector_m(psi: &ComplexVector, m: usize) -> ComplexVector {
    assert!(m >= 1, "at least one party");
    let scale = 2f64.powf((1.0 - m as f64) / 2.0);
    let mut out = Vec::with_capacity(psi.dim() << m);
    for x in 0..1usize << m {
        let weight = x.count_ones() % 4;
        out.extend(psi.as_slice().iter().map(|z| {
            let r = match weight {
                0 => z.re,
                1 => -z.im,
                2 => -z.re,
                _ => z.im,
            };
            C64::new(r * scale, 0.0)
        }));
    }
    ComplexVector::new(out)
}

pub fn encode_state_m(psi: &ComplexVector, m: usize) -> Result<MultipartyEncodedState> {
    let norm_sqr = psi.norm_sqr();
    if (norm_sqr - 1.0).abs() > crate::encode::NORM_TOL {
        return Err(Error::NotNormalized { norm_sqr });
    }
    if m == 0 {
        return Err(Error::UnsupportedPartyCount { expected: 1, got: 0 });
    }
    Ok(MultipartyEncodedState {
        vector: encode_vector_m(psi, m),
        parties: m,
        source_dim: psi.dim(),
        party_of_extra: (0..m).collect(),
    })
}

/// `(|0…0⟩|ψ⟩ + |1…1⟩|ψ*⟩)/√2` with `m` extra qubits.
pub fn ghz_branch_form(psi: &ComplexVector, m: usize) -> ComplexVector {
    let zeros = ComplexVector::basis(1 << m, 0).tensor(psi);
    let ones = ComplexVector::basis(1 << m, (1 << m) - 1).tensor(&psi.conjugate());
    zeros.add(&ones).scale_real(std::f64::consts::FRAC_1_SQRT_2)
}

/// `R^(m)_j(M) = V_j (|0⟩⟨0|_j⊗M + |1⟩⟨1|_j⊗M*) V_j†`, acting on extra qubit
/// `j` and party `j`'s system, identity elsewhere. Real by construction:
/// `I⊗Re(M) + iY_j⊗Im(M)`.
pub fn encode_party_operator(op: &PartyOperator, layout: &PartyLayout) -> Result<ComplexMatrix> {
    layout.check_party(op.party)?;
    let d = layout.party_dims()[op.party];
    if !op.operator.is_square() || op.operator.rows() != d {
        return Err(Error::DimensionMismatch(format!(
            "party {} has dimension {d}, operator is {}x{}",
            op.party,
            op.operator.rows(),
            op.operator.cols()
        )));
    }
    let m = layout.parties();
    let extras = vec![2; m];
    let e0 = ComplexMatrix::identity(1 << m);
    let e1 = embed_operator(&i_y(), &extras, &[op.party])?;
    let s_re = embed_operator(&op.operator.real_part(), layout.party_dims(), &[op.party])?;
    let s_im = embed_operator(&op.operator.imag_part(), layout.party_dims(), &[op.party])?;
    Ok(&e0.tensor(&s_re) + &e1.tensor(&s_im))
}

/// Projector onto `V|b⟩` on extra qubit `j` of the encoded register.
pub fn extra_frame_projector(layout: &PartyLayout, j: usize, b: usize) -> Result<ComplexMatrix> {
    layout.check_party(j)?;
    embed_operator(&frame_projector(b), &layout.encoded_dims(), &[j])
}

/// Largest commutator entry between `op` and the frame projector on every
/// extra qubit.
pub fn extra_frame_commutator(op: &ComplexMatrix, layout: &PartyLayout) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for j in 0..layout.parties() {
        let p = extra_frame_projector(layout, j, 0)?;
        worst = worst.max(op.commutator(&p).max_abs());
    }
    Ok(worst)
}

#[derive(Clone, Copy, Debug)]
pub struct Lemma2Check {
    /// `Re⟨ψ|M_1⋯M_n|ψ⟩`.
    pub complex_side: f64,
    /// `R^(m)(ψ)ᵀ R_{j1}(M_1)⋯R_{jn}(M_n) R^(m)(ψ)`.
    pub encoded_side: f64,
    /// Largest entry of `R^(m)(M_1⋯M_n ψ) - R_{j1}(M_1)⋯R_{jn}(M_n) R^(m)(ψ)`.
    pub composition_deviation: f64,
}

impl Lemma2Check {
    pub fn holds(&self, tol: f64) -> bool {
        (self.complex_side - self.encoded_side).abs() <= tol && self.composition_deviation <= tol
    }
}

/// Checks the expectation and composition laws for a product of party
/// operators applied right-to-left (`ops[0]` outermost).
pub fn verify_lemma2(ops: &[PartyOperator], psi: &ComplexVector, layout: &PartyLayout) -> Result<Lemma2Check> {
    if psi.dim() != layout.system_dim() {
        return Err(Error::DimensionMismatch(format!(
            "state of dimension {} vs joint system of dimension {}",
            psi.dim(),
            layout.system_dim()
        )));
    }
    let m = layout.parties();
    let mut complex_product = ComplexMatrix::identity(layout.system_dim());
    let mut encoded_product = ComplexMatrix::identity(layout.encoded_dim());
    for op in ops {
        complex_product = complex_product.matmul(&op.on_system(layout)?);
        encoded_product = encoded_product.matmul(&encode_party_operator(op, layout)?);
    }
    let encoded_psi = encode_vector_m(psi, m);
    let complex_side = complex_product.expectation(psi).re;
    let encoded_side = encoded_product.expectation(&encoded_psi).re;
    let lhs = encode_vector_m(&complex_product.apply(psi), m);
    let rhs = encoded_product.apply(&encoded_psi);
    Ok(Lemma2Check {
        complex_side,
        encoded_side,
        composition_deviation: lhs.max_abs_diff(&rhs),
    })
}
