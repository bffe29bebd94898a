//! Separable operators, partial complex conjugation, and the encoding that
//! keeps product structure intact across parties.
//!
//! Two register layouts appear here:
//! * extras-first: `[x_1, …, x_m, sys_1, …, sys_m]`, where the branch
//!   operator `Σ_z |z⟩⟨z| ⊗ M^{*z}` lives;
//! * party-grouped: `[x_1, sys_1, x_2, sys_2, …]`, where each party's encoded
//!   share is a contiguous tensor factor. [`encode_separable`] and
//!   [`encode_product_state`] return this layout.

use rand::Rng;

use crate::encode::{basis_change_v, encode_matrix, encode_vector};
use crate::error::{Error, Result};
use crate::linalg::random::{random_density_with, random_hermitian_with};
use crate::linalg::{
    hermiticity_deviation, permute_subsystems, tensor_all, ComplexMatrix, ComplexVector, C64, ZERO,
};

/// Hermiticity tolerance for factors at construction.
pub const FACTOR_TOL: f64 = 1e-10;

/// `Σ_j M_{1,j} ⊗ … ⊗ M_{m,j}` with every factor Hermitian.
#[derive(Clone, Debug)]
pub struct SeparableOperator {
    party_dims: Vec<usize>,
    terms: Vec<Vec<ComplexMatrix>>,
}

impl SeparableOperator {
    pub fn new(party_dims: Vec<usize>, terms: Vec<Vec<ComplexMatrix>>) -> Result<Self> {
        Self::with_tolerance(party_dims, terms, FACTOR_TOL)
    }

    /// Factors must be Hermitian within `tol`; they are rejected, not
    /// symmetrized.
    pub fn with_tolerance(party_dims: Vec<usize>, terms: Vec<Vec<ComplexMatrix>>, tol: f64) -> Result<Self> {
        if party_dims.is_empty() {
            return Err(Error::DimensionMismatch("separable operator needs at least one party".into()));
        }
        for (t, term) in terms.iter().enumerate() {
            if term.len() != party_dims.len() {
                return Err(Error::DimensionMismatch(format!(
                    "term {t} has {} factors, expected {}",
                    term.len(),
                    party_dims.len()
                )));
            }
            for (k, f) in term.iter().enumerate() {
                if !f.is_square() || f.rows() != party_dims[k] {
                    return Err(Error::DimensionMismatch(format!(
                        "factor {k} of term {t} is {}x{}, party dimension is {}",
                        f.rows(),
                        f.cols(),
                        party_dims[k]
                    )));
                }
                let deviation = hermiticity_deviation(f);
                if deviation > tol {
                    return Err(Error::NonHermitianFactor { term: t, party: k, deviation });
                }
            }
        }
        Ok(Self { party_dims, terms })
    }

    pub fn parties(&self) -> usize {
        self.party_dims.len()
    }

    pub fn party_dims(&self) -> &[usize] {
        &self.party_dims
    }

    pub fn terms(&self) -> &[Vec<ComplexMatrix>] {
        &self.terms
    }

    pub fn dim(&self) -> usize {
        self.party_dims.iter().product()
    }

    /// The materialized sum `Σ_j ⊗_k M_{k,j}`.
    pub fn to_matrix(&self) -> ComplexMatrix {
        let d = self.dim();
        self.terms
            .iter()
            .fold(ComplexMatrix::zeros(d, d), |acc, term| &acc + &tensor_all(term))
    }
}

/// Bit-string `z ∈ {0,1}^m` selecting which parties get conjugated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConjugationMask {
    bits: Vec<bool>,
}

impl ConjugationMask {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn none(m: usize) -> Self {
        Self::new(vec![false; m])
    }

    /// Party 0 is the most significant bit of `index`.
    pub fn from_index(m: usize, index: usize) -> Self {
        Self::new((0..m).map(|k| (index >> (m - 1 - k)) & 1 == 1).collect())
    }

    pub fn index(&self) -> usize {
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    /// All `2^m` masks in index order.
    pub fn all(m: usize) -> impl Iterator<Item = ConjugationMask> {
        (0..1usize << m).map(move |i| Self::from_index(m, i))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_set(&self, party: usize) -> bool {
        self.bits[party]
    }
}

impl std::fmt::Display for ConjugationMask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", b as u8)?;
        }
        Ok(())
    }
}

fn check_mask(m: &SeparableOperator, z: &ConjugationMask) -> Result<()> {
    if z.len() != m.parties() {
        return Err(Error::MaskLengthMismatch { mask: z.len(), parties: m.parties() });
    }
    Ok(())
}

/// `M^{*z}`: conjugates factor `k` of every term where `z_k = 1`.
pub fn partial_conjugate(m: &SeparableOperator, z: &ConjugationMask) -> Result<SeparableOperator> {
    check_mask(m, z)?;
    let terms = m
        .terms
        .iter()
        .map(|term| {
            term.iter()
                .enumerate()
                .map(|(k, f)| if z.is_set(k) { f.conjugate() } else { f.clone() })
                .collect()
        })
        .collect();
    Ok(SeparableOperator { party_dims: m.party_dims.clone(), terms })
}

/// `tr(AB)` without forming the product.
pub fn trace_of_product(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    let n = a.rows();
    let mut s = ZERO;
    for i in 0..n {
        for j in 0..n {
            s += a[(i, j)] * b[(j, i)];
        }
    }
    s
}

/// Returns `(tr(MN), tr(M^{*z} N^{*z}))`.
pub fn verify_trace_identity(m: &SeparableOperator, n: &SeparableOperator, z: &ConjugationMask) -> Result<(C64, C64)> {
    if m.party_dims != n.party_dims {
        return Err(Error::DimensionMismatch(format!(
            "party dimensions {:?} vs {:?}",
            m.party_dims, n.party_dims
        )));
    }
    let original = trace_of_product(&m.to_matrix(), &n.to_matrix());
    let conjugated = trace_of_product(
        &partial_conjugate(m, z)?.to_matrix(),
        &partial_conjugate(n, z)?.to_matrix(),
    );
    Ok((original, conjugated))
}

/// `M' = Σ_z |z⟩⟨z| ⊗ M^{*z}` on the extras-first layout.
pub fn branch_operator(m: &SeparableOperator) -> ComplexMatrix {
    let k = m.parties();
    let mut out = ComplexMatrix::zeros(m.dim() << k, m.dim() << k);
    for z in ConjugationMask::all(k) {
        let proj = ComplexVector::basis(1 << k, z.index()).projector();
        let conj = partial_conjugate(m, &z).expect("mask built from party count");
        out = &out + &proj.tensor(&conj.to_matrix());
    }
    out
}

/// `|ψ'⟩ = 2^{-m/2} Σ_z |z⟩ ⊗ |ψ⟩^{*z}` for a product state, extras-first.
pub fn branch_state(factors: &[ComplexVector]) -> ComplexVector {
    let k = factors.len();
    let dim: usize = factors.iter().map(ComplexVector::dim).product();
    let mut out = ComplexVector::zeros(dim << k);
    for z in ConjugationMask::all(k) {
        let branch = factors
            .iter()
            .enumerate()
            .fold(ComplexVector::new(vec![C64::new(1.0, 0.0)]), |acc, (p, f)| {
                acc.tensor(&if z.is_set(p) { f.conjugate() } else { f.clone() })
            });
        out = out.add(&ComplexVector::basis(1 << k, z.index()).tensor(&branch));
    }
    out.scale_real(2f64.powf(-(k as f64) / 2.0))
}

/// Largest entry of `Σ_z Π_z M' Π_z - M'` where `Π_z` projects the extra
/// qubits onto `|z⟩`.
pub fn resolution_deviation(m: &SeparableOperator) -> f64 {
    let k = m.parties();
    let mp = branch_operator(m);
    let id = ComplexMatrix::identity(m.dim());
    let mut sum = ComplexMatrix::zeros(mp.rows(), mp.cols());
    for z in 0..1usize << k {
        let pz = ComplexVector::basis(1 << k, z).projector().tensor(&id);
        sum = &sum + &pz.matmul(&mp).matmul(&pz);
    }
    sum.max_abs_diff(&mp)
}

/// `extras-first → party-grouped` subsystem permutation for `m` parties.
pub fn party_grouping_perm(m: usize) -> Vec<usize> {
    (0..m).flat_map(|k| [k, m + k]).collect()
}

fn extras_first_dims(party_dims: &[usize]) -> Vec<usize> {
    let mut dims = vec![2; party_dims.len()];
    dims.extend_from_slice(party_dims);
    dims
}

/// Reorders an extras-first operator into the party-grouped layout.
pub fn group_by_party(a: &ComplexMatrix, party_dims: &[usize]) -> Result<ComplexMatrix> {
    let m = party_dims.len();
    permute_subsystems(a, &extras_first_dims(party_dims), &party_grouping_perm(m))
}

fn require_two_parties(m: &SeparableOperator) -> Result<()> {
    if m.parties() != 2 {
        return Err(Error::UnsupportedPartyCount { expected: 2, got: m.parties() });
    }
    Ok(())
}

/// `R^(2)_{1,2}(M) = Σ_j R(M_{1,j}) ⊗ R(M_{2,j})`, party-grouped layout
/// `[x_1, sys_1, x_2, sys_2]`.
pub fn encode_separable(m: &SeparableOperator) -> Result<ComplexMatrix> {
    require_two_parties(m)?;
    let d = 4 * m.dim();
    Ok(m.terms.iter().fold(ComplexMatrix::zeros(d, d), |acc, term| {
        &acc + &encode_matrix(&term[0]).tensor(&encode_matrix(&term[1]))
    }))
}

/// `(V_1⊗V_2) M' (V_1†⊗V_2†)`, regrouped into the party-grouped layout.
/// Equal to [`encode_separable`] by construction of `R`.
pub fn separable_block_form(m: &SeparableOperator) -> Result<ComplexMatrix> {
    require_two_parties(m)?;
    let v = basis_change_v();
    let vv = v.tensor(&v).tensor(&ComplexMatrix::identity(m.dim()));
    let rotated = vv.matmul(&branch_operator(m)).matmul(&vv.adjoint());
    group_by_party(&rotated, m.party_dims())
}

/// `R_1(ψ_1) ⊗ R_2(ψ_2)`, party-grouped.
pub fn encode_product_state(psi1: &ComplexVector, psi2: &ComplexVector) -> Result<ComplexVector> {
    for psi in [psi1, psi2] {
        let norm_sqr = psi.norm_sqr();
        if (norm_sqr - 1.0).abs() > crate::encode::NORM_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
    }
    Ok(encode_vector(psi1).tensor(&encode_vector(psi2)))
}

#[derive(Clone, Copy, Debug)]
pub struct Lemma4Check {
    /// `⟨ψ_1ψ_2|M|ψ_1ψ_2⟩`; its imaginary part vanishes for Hermitian `M`.
    pub complex_side: C64,
    pub encoded_side: f64,
}

impl Lemma4Check {
    pub fn holds(&self, tol: f64) -> bool {
        self.complex_side.im.abs() <= tol && (self.complex_side.re - self.encoded_side).abs() <= tol
    }
}

pub fn verify_lemma4(m: &SeparableOperator, psi1: &ComplexVector, psi2: &ComplexVector) -> Result<Lemma4Check> {
    require_two_parties(m)?;
    if psi1.dim() != m.party_dims[0] || psi2.dim() != m.party_dims[1] {
        return Err(Error::DimensionMismatch(format!(
            "product state of dimensions ({}, {}) vs parties {:?}",
            psi1.dim(),
            psi2.dim(),
            m.party_dims
        )));
    }
    let psi = psi1.tensor(psi2);
    let complex_side = m.to_matrix().expectation(&psi);
    let encoded = encode_product_state(psi1, psi2)?;
    let encoded_side = encode_separable(m)?.expectation(&encoded).re;
    Ok(Lemma4Check { complex_side, encoded_side })
}

/// Random separable operator with Hermitian (Gaussian) factors.
pub fn random_separable_with(rng: &mut impl Rng, party_dims: &[usize], terms: usize) -> SeparableOperator {
    let terms = (0..terms)
        .map(|_| party_dims.iter().map(|&d| random_hermitian_with(rng, d)).collect())
        .collect();
    SeparableOperator::new(party_dims.to_vec(), terms).expect("Hermitian by construction")
}

/// Random separable POVM element `Σ_j p_j ρ_{1,j} ⊗ … ⊗ ρ_{m,j}` with density
/// matrix factors and weights summing to at most one, so `0 ≼ A ≼ I`.
pub fn random_separable_povm_with(rng: &mut impl Rng, party_dims: &[usize], terms: usize) -> SeparableOperator {
    let weights: Vec<f64> = (0..terms).map(|_| rng.random::<f64>()).collect();
    let total: f64 = weights.iter().sum::<f64>() / rng.random_range(0.5..1.0);
    let terms = weights
        .iter()
        .map(|w| {
            party_dims
                .iter()
                .enumerate()
                .map(|(k, &d)| {
                    let rho = random_density_with(rng, d);
                    if k == 0 {
                        rho.scale_real(w / total)
                    } else {
                        rho
                    }
                })
                .collect()
        })
        .collect();
    SeparableOperator::new(party_dims.to_vec(), terms).expect("Hermitian by construction")
}
