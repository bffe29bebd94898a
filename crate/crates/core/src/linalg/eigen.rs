//! Hermitian eigensolver (cyclic complex Jacobi) and spectral property checks.

use super::matrix::{ComplexMatrix, ComplexVector, C64, ZERO};
use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues sorted descending, paired with orthonormal eigenvectors.
#[derive(Clone, Debug)]
pub struct Eigensystem {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<ComplexVector>,
}

impl Eigensystem {
    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }

    pub fn top_eigenvector(&self) -> &ComplexVector {
        &self.eigenvectors[0]
    }

    /// `Σ λ_k |v_k⟩⟨v_k|`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let mut out = ComplexMatrix::zeros(n, n);
        for (&l, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            out = &out + &v.projector().scale_real(l);
        }
        out
    }

    /// Projector onto the span of eigenvectors whose eigenvalue lies within
    /// `tol` of `value`. Degenerate eigenspaces carry no preferred basis, so
    /// comparisons should go through this.
    pub fn eigenspace_projector(&self, value: f64, tol: f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let mut out = ComplexMatrix::zeros(n, n);
        for (&l, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            if (l - value).abs() <= tol {
                out = &out + &v.projector();
            }
        }
        out
    }
}

/// Largest entry of `a - a†`.
pub fn hermiticity_deviation(a: &ComplexMatrix) -> f64 {
    if !a.is_square() {
        return f64::INFINITY;
    }
    let n = a.rows();
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Largest entry of `a† a - I`.
pub fn unitarity_deviation(a: &ComplexMatrix) -> f64 {
    if !a.is_square() {
        return f64::INFINITY;
    }
    a.adjoint()
        .matmul(a)
        .max_abs_diff(&ComplexMatrix::identity(a.rows()))
}

pub fn hermitian_eigensystem(a: &ComplexMatrix, tol: f64) -> Result<Eigensystem> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigensystem of non-square {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let deviation = hermiticity_deviation(a);
    if deviation > tol {
        return Err(Error::NotHermitian { deviation, tol });
    }
    let n = a.rows();
    // symmetrize so the rotations see an exactly Hermitian input
    let mut m = ComplexMatrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    let scale = m.frobenius_norm().max(f64::MIN_POSITIVE);
    let threshold = tol * scale;

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&m) <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].re.total_cmp(&m[(i, i)].re));
    let eigenvalues = order.iter().map(|&k| m[(k, k)].re).collect();
    let eigenvectors = order.iter().map(|&k| v.column(k)).collect();
    Ok(Eigensystem {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigenvalues only, sorted descending.
pub fn hermitian_eigenvalues(a: &ComplexMatrix, tol: f64) -> Result<Vec<f64>> {
    Ok(hermitian_eigensystem(a, tol)?.eigenvalues)
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation zeroing `m[p][q]`; accumulates into `v`.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r; // e^{iφ}
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let zeta = (aqq - app) / (2.0 * r);
    let t = if zeta >= 0.0 {
        1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
    } else {
        -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // W = diag(1, e^{-iφ}) · [[c, s], [-s, c]] on the (p, q) plane
    let w_pp = C64::new(c, 0.0);
    let w_pq = C64::new(s, 0.0);
    let w_qp = -phase.conj() * s;
    let w_qq = phase.conj() * c;

    let n = m.rows();
    // m <- m W
    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = mkp * w_pp + mkq * w_qp;
        m[(k, q)] = mkp * w_pq + mkq * w_qq;
    }
    // m <- W† m
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = w_pp.conj() * mpk + w_qp.conj() * mqk;
        m[(q, k)] = w_pq.conj() * mpk + w_qq.conj() * mqk;
    }
    m[(p, q)] = ZERO;
    m[(q, p)] = ZERO;
    m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = C64::new(m[(q, q)].re, 0.0);
    // v <- v W
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * w_pp + vkq * w_qp;
        v[(k, q)] = vkp * w_pq + vkq * w_qq;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    Unitary,
    Hermitian,
    PositiveSemidefinite,
    RealEntried,
}

pub fn check_property(a: &ComplexMatrix, which: Property, tol: f64) -> bool {
    if !a.is_square() {
        return false;
    }
    match which {
        Property::Unitary => unitarity_deviation(a) <= tol,
        Property::Hermitian => hermiticity_deviation(a) <= tol,
        Property::PositiveSemidefinite => match hermitian_eigensystem(a, tol) {
            Ok(es) => es.min_eigenvalue() >= -tol,
            Err(_) => false,
        },
        Property::RealEntried => a.max_imag() <= tol,
    }
}

/// Schmidt coefficients of a bipartite pure state across a `left | right`
/// cut, descending. Computed from the spectrum of the reduced Gram matrix.
pub fn schmidt_coefficients(v: &ComplexVector, left: usize, right: usize) -> Result<Vec<f64>> {
    let c = super::matrix::coefficient_matrix(v, left, right)?;
    let gram = c.matmul(&c.adjoint());
    Ok(hermitian_eigenvalues(&gram, DEFAULT_TOL)?
        .into_iter()
        .map(|l| l.max(0.0).sqrt())
        .collect())
}

/// Trace norm `‖a‖₁ = Σ|λ_k|` of a Hermitian matrix.
pub fn trace_norm(a: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(a, DEFAULT_TOL)?
        .iter()
        .map(|l| l.abs())
        .sum())
}

/// Unitary whose first column is the normalized `v` (Gram–Schmidt completion
/// against the computational basis).
pub fn unitary_with_first_column(v: &ComplexVector) -> ComplexMatrix {
    let n = v.dim();
    let mut cols: Vec<ComplexVector> = vec![v.normalized()];
    for k in 0..n {
        if cols.len() == n {
            break;
        }
        let mut w = ComplexVector::basis(n, k);
        for _ in 0..2 {
            for c in &cols {
                let ov = c.inner(&w);
                w = w.sub(&c.scale(ov));
            }
        }
        if w.norm() > 1e-8 {
            cols.push(w.normalized());
        }
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j].as_slice()[i])
}
