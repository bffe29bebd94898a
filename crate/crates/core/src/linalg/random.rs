//! Seeded random states, unitaries and operators for test inputs.
//!
//! Every generator has a `_with` variant drawing from a caller-supplied RNG
//! and a seeded variant that builds a fresh ChaCha stream, so the same seed
//! always yields bit-identical output.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::matrix::{ComplexMatrix, ComplexVector, C64};

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state: normalized complex-Gaussian vector.
pub fn random_state_with(rng: &mut impl Rng, dim: usize) -> ComplexVector {
    assert!(dim >= 1);
    ComplexVector::new((0..dim).map(|_| gaussian(rng)).collect()).normalized()
}

pub fn random_state(dim: usize, seed: u64) -> ComplexVector {
    random_state_with(&mut rng_from_seed(seed), dim)
}

/// Haar-random unitary: modified Gram–Schmidt on the columns of a
/// complex-Gaussian matrix.
pub fn random_unitary_with(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    assert!(dim >= 1);
    let mut cols: Vec<ComplexVector> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut w = ComplexVector::new((0..dim).map(|_| gaussian(rng)).collect());
        for _ in 0..2 {
            for c in &cols {
                let ov = c.inner(&w);
                w = w.sub(&c.scale(ov));
            }
        }
        let n = w.norm();
        if n > 1e-6 {
            cols.push(w.scale_real(1.0 / n));
        }
    }
    ComplexMatrix::from_fn(dim, dim, |i, j| cols[j].as_slice()[i])
}

pub fn random_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    random_unitary_with(&mut rng_from_seed(seed), dim)
}

/// Complex-Gaussian (Ginibre) matrix.
pub fn random_matrix_with(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, dim, |_, _| gaussian(rng))
}

/// Hermitian matrix `(G + G†)/2` for Ginibre `G`.
pub fn random_hermitian_with(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let g = random_matrix_with(rng, dim);
    (&g + &g.adjoint()).scale_real(0.5)
}

pub fn random_hermitian(dim: usize, seed: u64) -> ComplexMatrix {
    random_hermitian_with(&mut rng_from_seed(seed), dim)
}

/// Positive semidefinite `G G†`, trace-normalized to a density matrix.
pub fn random_density_with(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let g = random_matrix_with(rng, dim);
    let p = g.matmul(&g.adjoint());
    let tr = p.trace().re;
    p.scale_real(1.0 / tr)
}

/// `U diag(λ) U†` with Haar `U` and `λ` uniform on [0, 1].
pub fn random_povm_element_with(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let u = random_unitary_with(rng, dim);
    let lambdas: Vec<f64> = (0..dim).map(|_| rng.random::<f64>()).collect();
    u.matmul(&ComplexMatrix::real_diagonal(&lambdas))
        .matmul(&u.adjoint())
}

pub fn random_povm_element(dim: usize, seed: u64) -> ComplexMatrix {
    random_povm_element_with(&mut rng_from_seed(seed), dim)
}

/// Derives an independent stream seed for sub-task `index` of `master`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
