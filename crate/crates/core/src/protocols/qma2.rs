//! Two unentangled proofs: see-saw maximization of `⟨ψ_1ψ_2|A|ψ_1ψ_2⟩` and
//! the check that encoding and partial conjugation leave the product maximum
//! unchanged.

use crate::encode::{encode_vector, NORM_TOL};
use crate::error::{Error, Result};
use crate::linalg::random::{derive_seed, random_state_with, rng_from_seed};
use crate::linalg::{hermitian_eigensystem, ComplexMatrix, ComplexVector, ZERO};
use crate::separable::{encode_separable, partial_conjugate, ConjugationMask, SeparableOperator};

use super::{validate_povm, POVM_TOL};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeeSawOptions {
    pub restarts: usize,
    pub max_sweeps: usize,
    /// Stop once a sweep improves the objective by less than this.
    pub tol: f64,
    pub seed: u64,
}

impl Default for SeeSawOptions {
    fn default() -> Self {
        Self { restarts: 20, max_sweeps: 200, tol: 1e-12, seed: 1 }
    }
}

#[derive(Clone, Debug)]
pub struct ProductOptimum {
    pub probability: f64,
    pub psi1: ComplexVector,
    pub psi2: ComplexVector,
    /// Objective after each sweep of the winning restart.
    pub history: Vec<f64>,
}

/// `B[i,j] = Σ conj(φ_k) A[(i,k),(j,l)] φ_l`: contracts party 2 with `φ`.
pub fn contract_second(a: &ComplexMatrix, d1: usize, d2: usize, phi: &ComplexVector) -> ComplexMatrix {
    let p = phi.as_slice();
    ComplexMatrix::from_fn(d1, d1, |i, j| {
        let mut s = ZERO;
        for k in 0..d2 {
            let row = i * d2 + k;
            let mut inner = ZERO;
            for l in 0..d2 {
                inner += a[(row, j * d2 + l)] * p[l];
            }
            s += p[k].conj() * inner;
        }
        s
    })
}

/// `B[k,l] = Σ conj(φ_i) A[(i,k),(j,l)] φ_j`: contracts party 1 with `φ`.
pub fn contract_first(a: &ComplexMatrix, d1: usize, d2: usize, phi: &ComplexVector) -> ComplexMatrix {
    let p = phi.as_slice();
    ComplexMatrix::from_fn(d2, d2, |k, l| {
        let mut s = ZERO;
        for i in 0..d1 {
            let mut inner = ZERO;
            for j in 0..d1 {
                inner += a[(i * d2 + k, j * d2 + l)] * p[j];
            }
            s += p[i].conj() * inner;
        }
        s
    })
}

fn top(b: &ComplexMatrix) -> Result<(f64, ComplexVector)> {
    let es = hermitian_eigensystem(b, POVM_TOL)?;
    Ok((es.max_eigenvalue(), es.top_eigenvector().clone()))
}

/// One see-saw run from a given second factor.
pub fn seesaw_from(
    a: &ComplexMatrix,
    d1: usize,
    d2: usize,
    start: ComplexVector,
    max_sweeps: usize,
    tol: f64,
) -> Result<ProductOptimum> {
    let mut psi2 = start;
    let mut psi1 = ComplexVector::basis(d1, 0);
    let mut history: Vec<f64> = Vec::new();
    for _ in 0..max_sweeps {
        let (_, v1) = top(&contract_second(a, d1, d2, &psi2))?;
        psi1 = v1;
        let (value, v2) = top(&contract_first(a, d1, d2, &psi1))?;
        psi2 = v2;
        let done = history.last().is_some_and(|&prev| value - prev < tol);
        history.push(value);
        if done {
            break;
        }
    }
    Ok(ProductOptimum {
        probability: *history.last().unwrap_or(&0.0),
        psi1,
        psi2,
        history,
    })
}

/// Best see-saw result over `opts.restarts` random starts on a dense
/// bipartite operator with local dimensions `d1`, `d2`. Restart `r` is seeded
/// with `derive_seed(opts.seed, r)`, so the result does not depend on the
/// order restarts run in.
pub fn product_max_dense(a: &ComplexMatrix, d1: usize, d2: usize, opts: &SeeSawOptions) -> Result<ProductOptimum> {
    if !a.is_square() || a.rows() != d1 * d2 {
        return Err(Error::DimensionMismatch(format!(
            "operator of dimension {} vs local dimensions {d1}x{d2}",
            a.rows()
        )));
    }
    let mut best: Option<ProductOptimum> = None;
    for r in 0..opts.restarts.max(1) {
        let mut rng = rng_from_seed(derive_seed(opts.seed, r as u64));
        let start = random_state_with(&mut rng, d2);
        let run = seesaw_from(a, d1, d2, start, opts.max_sweeps, opts.tol)?;
        if best.as_ref().is_none_or(|b| run.probability > b.probability) {
            best = Some(run);
        }
    }
    Ok(best.expect("at least one restart"))
}

fn check_two_party_povm(a: &SeparableOperator) -> Result<ComplexMatrix> {
    if a.parties() != 2 {
        return Err(Error::NotSeparable2Party(a.parties()));
    }
    let m = a.to_matrix();
    validate_povm(&m, POVM_TOL)?;
    Ok(m)
}

pub fn qma2_product_max(a: &SeparableOperator, opts: &SeeSawOptions) -> Result<ProductOptimum> {
    let m = check_two_party_povm(a)?;
    product_max_dense(&m, a.party_dims()[0], a.party_dims()[1], opts)
}

#[derive(Clone, Debug)]
pub struct Qma2EncodingReport {
    pub original: f64,
    /// Product maximum of the encoded operator over local dimensions `2d_k`.
    pub encoded: f64,
    /// Product maximum of `A^{*z}` for every mask, in index order.
    pub masked: Vec<(ConjugationMask, f64)>,
    /// `⟨ψ_1ψ_2|A|ψ_1ψ_2⟩` for the optimal witnesses.
    pub honest_complex: f64,
    /// The same value for `R(ψ_1)⊗R(ψ_2)` against the encoded operator.
    pub honest_encoded: f64,
}

impl Qma2EncodingReport {
    pub const SEESAW_TOL: f64 = 1e-6;
    pub const HONEST_TOL: f64 = 1e-10;

    /// Largest gap between the original product maximum and any other one.
    pub fn max_gap(&self) -> f64 {
        self.masked
            .iter()
            .map(|(_, v)| (v - self.original).abs())
            .fold((self.encoded - self.original).abs(), f64::max)
    }

    pub fn passes(&self) -> bool {
        self.max_gap() <= Self::SEESAW_TOL && (self.honest_complex - self.honest_encoded).abs() <= Self::HONEST_TOL
    }
}

pub fn qma2_encoding_check(a: &SeparableOperator, opts: &SeeSawOptions) -> Result<Qma2EncodingReport> {
    let original = qma2_product_max(a, opts)?;
    let (d1, d2) = (a.party_dims()[0], a.party_dims()[1]);
    let encoded_op = encode_separable(a)?;
    let encoded = product_max_dense(&encoded_op, 2 * d1, 2 * d2, opts)?;
    let masked = ConjugationMask::all(2)
        .map(|z| {
            let v = qma2_product_max(&partial_conjugate(a, &z)?, opts)?;
            Ok((z, v.probability))
        })
        .collect::<Result<Vec<_>>>()?;
    let (p1, p2) = (&original.psi1, &original.psi2);
    for p in [p1, p2] {
        if (p.norm_sqr() - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sqr: p.norm_sqr() });
        }
    }
    let honest_complex = a.to_matrix().expectation(&p1.tensor(p2)).re;
    let honest_encoded = encoded_op.expectation(&encode_vector(p1).tensor(&encode_vector(p2))).re;
    Ok(Qma2EncodingReport {
        original: original.probability,
        encoded: encoded.probability,
        masked,
        honest_complex,
        honest_encoded,
    })
}
