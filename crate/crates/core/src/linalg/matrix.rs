use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows).expect("ragged real rows")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    pub fn real_diagonal(entries: &[f64]) -> Self {
        let e: Vec<C64> = entries.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::diagonal(&e)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Dimension of a square matrix.
    pub fn dim(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> ComplexVector {
        ComplexVector::new((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    /// Entrywise complex conjugate.
    pub fn conjugate(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn real_part(&self) -> Self {
        self.map(|z| C64::new(z.re, 0.0))
    }

    pub fn imag_part(&self) -> Self {
        self.map(|z| C64::new(z.im, 0.0))
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest imaginary-part magnitude over all entries.
    pub fn max_imag(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// Max-entry distance; infinite when shapes differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "matmul shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let b_row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &ComplexVector) -> ComplexVector {
        assert_eq!(self.cols, v.dim(), "matrix-vector shape mismatch");
        ComplexVector::new(
            (0..self.rows)
                .map(|i| self.row(i).iter().zip(v.as_slice()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// `⟨u|self|v⟩`.
    pub fn sandwich(&self, u: &ComplexVector, v: &ComplexVector) -> C64 {
        u.inner(&self.apply(v))
    }

    /// Real quadratic form `⟨v|self|v⟩`.
    pub fn expectation(&self, v: &ComplexVector) -> C64 {
        self.sandwich(v, v)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    /// Kronecker product; `self` is the most significant factor.
    pub fn tensor(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = vec![ZERO; rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == ZERO {
                    continue;
                }
                for k in 0..other.rows {
                    let r = i * other.rows + k;
                    for l in 0..other.cols {
                        data[r * cols + j * other.cols + l] = a * other[(k, l)];
                    }
                }
            }
        }
        Self { rows, cols, data }
    }

    /// Sub-block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }
}

pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.tensor(b)
}

pub fn conjugate(a: &ComplexMatrix) -> ComplexMatrix {
    a.conjugate()
}

/// Tensor product of a list of operators, first entry most significant.
pub fn tensor_all<'a>(factors: impl IntoIterator<Item = &'a ComplexMatrix>) -> ComplexMatrix {
    factors
        .into_iter()
        .fold(ComplexMatrix::identity(1), |acc, f| acc.tensor(f))
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Dense complex vector; a column state when normalized.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexVector {
    data: Vec<C64>,
}

impl ComplexVector {
    pub fn new(data: Vec<C64>) -> Self {
        Self { data }
    }

    pub fn from_real(data: &[f64]) -> Self {
        Self::new(data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![ZERO; dim])
    }

    /// Computational basis vector `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.data[index] = ONE;
        v
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        self.scale_real(1.0 / n)
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    /// Conjugate-linear in `self`: `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> C64 {
        assert_eq!(self.dim(), other.dim(), "inner product dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.data.iter().map(|z| z.conj()).collect())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.data.iter().map(|&z| z * s).collect())
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self::new(self.data.iter().map(|&z| z * s).collect())
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.data {
            for b in &other.data {
                out.push(a * b);
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self::new(self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self::new(self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_imag(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// `|self⟩⟨other|`.
    pub fn outer(&self, other: &Self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim(), other.dim(), |i, j| {
            self.data[i] * other.data[j].conj()
        })
    }

    /// `|self⟩⟨self|`.
    pub fn projector(&self) -> ComplexMatrix {
        self.outer(self)
    }
}

/// Single-qubit and two-qubit gates used throughout.
pub mod gates {
    use super::{ComplexMatrix, C64, I, ONE, ZERO};
    use std::f64::consts::FRAC_1_SQRT_2;

    pub fn identity() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    pub fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]]).unwrap()
    }

    pub fn pauli_y() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![ZERO, -I], vec![I, ZERO]]).unwrap()
    }

    pub fn pauli_z() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![ONE, ZERO], vec![ZERO, -ONE]]).unwrap()
    }

    pub fn hadamard() -> ComplexMatrix {
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        ComplexMatrix::from_rows(&[vec![h, h], vec![h, -h]]).unwrap()
    }

    pub fn s() -> ComplexMatrix {
        ComplexMatrix::diagonal(&[ONE, I])
    }

    pub fn t() -> ComplexMatrix {
        phase(std::f64::consts::FRAC_PI_4)
    }

    /// `diag(1, e^{iθ})`.
    pub fn phase(theta: f64) -> ComplexMatrix {
        ComplexMatrix::diagonal(&[ONE, C64::from_polar(1.0, theta)])
    }

    /// Control on the first (most significant) qubit.
    pub fn cnot() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
        ])
    }

    pub fn swap() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
        ])
    }
}

fn check_layout(dims: &[usize], total: usize) -> Result<()> {
    let prod: usize = dims.iter().product();
    if prod != total {
        return Err(Error::DimensionMismatch(format!(
            "subsystem dims {dims:?} multiply to {prod}, operator has dimension {total}"
        )));
    }
    Ok(())
}

fn check_perm(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::InvalidPermutation(perm.to_vec()));
    }
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidPermutation(perm.to_vec()));
        }
        seen[p] = true;
    }
    Ok(())
}

/// For each output basis index, the input basis index it reads from.
/// Output subsystem `j` is input subsystem `perm[j]`.
fn permutation_index_map(dims: &[usize], perm: &[usize]) -> Vec<usize> {
    let n = dims.len();
    let out_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let total: usize = dims.iter().product();
    // stride of each input subsystem
    let mut in_stride = vec![1usize; n];
    for k in (0..n.saturating_sub(1)).rev() {
        in_stride[k] = in_stride[k + 1] * dims[k + 1];
    }
    let mut map = Vec::with_capacity(total);
    let mut digits = vec![0usize; n];
    for _ in 0..total {
        let idx = digits
            .iter()
            .enumerate()
            .map(|(j, &d)| d * in_stride[perm[j]])
            .sum();
        map.push(idx);
        for j in (0..n).rev() {
            digits[j] += 1;
            if digits[j] < out_dims[j] {
                break;
            }
            digits[j] = 0;
        }
    }
    map
}

/// Reorders the tensor factors of an operator: output subsystem `j` is input
/// subsystem `perm[j]`. The inverse permutation undoes it.
pub fn permute_subsystems(a: &ComplexMatrix, dims: &[usize], perm: &[usize]) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("operator is not square".into()));
    }
    check_layout(dims, a.rows())?;
    check_perm(perm, dims.len())?;
    let map = permutation_index_map(dims, perm);
    Ok(ComplexMatrix::from_fn(a.rows(), a.cols(), |i, j| a[(map[i], map[j])]))
}

pub fn permute_state(v: &ComplexVector, dims: &[usize], perm: &[usize]) -> Result<ComplexVector> {
    check_layout(dims, v.dim())?;
    check_perm(perm, dims.len())?;
    let map = permutation_index_map(dims, perm);
    Ok(ComplexVector::new(map.iter().map(|&k| v.as_slice()[k]).collect()))
}

pub fn inverse_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (j, &p) in perm.iter().enumerate() {
        inv[p] = j;
    }
    inv
}

/// Places `op` on the subsystems `targets` (in that factor order) of a
/// register with subsystem dimensions `dims`, identity elsewhere.
pub fn embed_operator(op: &ComplexMatrix, dims: &[usize], targets: &[usize]) -> Result<ComplexMatrix> {
    let n = dims.len();
    let mut seen = vec![false; n];
    for &t in targets {
        if t >= n || seen[t] {
            return Err(Error::DimensionMismatch(format!(
                "invalid target list {targets:?} for {n} subsystems"
            )));
        }
        seen[t] = true;
    }
    let target_dim: usize = targets.iter().map(|&t| dims[t]).product();
    if !op.is_square() || op.rows() != target_dim {
        return Err(Error::DimensionMismatch(format!(
            "operator of dimension {}x{} does not act on targets {targets:?} (dimension {target_dim})",
            op.rows(),
            op.cols()
        )));
    }
    let rest: Vec<usize> = (0..n).filter(|k| !seen[*k]).collect();
    let rest_dim: usize = rest.iter().map(|&k| dims[k]).product();
    let full = op.tensor(&ComplexMatrix::identity(rest_dim));
    // layout of `full`: targets then rest
    let layout: Vec<usize> = targets.iter().chain(&rest).copied().collect();
    let layout_dims: Vec<usize> = layout.iter().map(|&k| dims[k]).collect();
    let perm = inverse_permutation(&layout);
    permute_subsystems(&full, &layout_dims, &perm)
}

/// Traces out every subsystem not listed in `keep`; kept subsystems stay in
/// ascending order.
pub fn partial_trace(rho: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    if !rho.is_square() {
        return Err(Error::DimensionMismatch("operator is not square".into()));
    }
    check_layout(dims, rho.rows())?;
    let n = dims.len();
    let mut keep_sorted = keep.to_vec();
    keep_sorted.sort_unstable();
    keep_sorted.dedup();
    if keep_sorted.iter().any(|&k| k >= n) {
        return Err(Error::DimensionMismatch(format!("keep list {keep:?} out of range")));
    }
    let traced: Vec<usize> = (0..n).filter(|k| !keep_sorted.contains(k)).collect();
    let layout: Vec<usize> = keep_sorted.iter().chain(&traced).copied().collect();
    let permuted = permute_subsystems(rho, dims, &layout)?;
    let dk: usize = keep_sorted.iter().map(|&k| dims[k]).product();
    let dt: usize = traced.iter().map(|&k| dims[k]).product();
    Ok(ComplexMatrix::from_fn(dk, dk, |i, j| {
        (0..dt).map(|t| permuted[(i * dt + t, j * dt + t)]).sum()
    }))
}

/// Reshapes a bipartite vector into its `left x right` coefficient matrix.
pub fn coefficient_matrix(v: &ComplexVector, left: usize, right: usize) -> Result<ComplexMatrix> {
    if left * right != v.dim() {
        return Err(Error::DimensionMismatch(format!(
            "cut {left}x{right} does not match vector dimension {}",
            v.dim()
        )));
    }
    ComplexMatrix::from_vec(left, right, v.as_slice().to_vec())
}

#[cfg(test)]
mod tests {
    use super::gates::*;
    use super::*;

    #[test]
    fn tensor_of_identities_is_identity() {
        assert_eq!(identity().tensor(&identity()), ComplexMatrix::identity(4));
    }

    #[test]
    fn tensor_of_basis_states() {
        let v = ComplexVector::basis(2, 0).tensor(&ComplexVector::basis(2, 1));
        assert_eq!(v, ComplexVector::basis(4, 1));
    }

    #[test]
    fn z_tensor_x_block_structure() {
        let zx = pauli_z().tensor(&pauli_x());
        let x = pauli_x();
        assert_eq!(zx.block(0, 0, 2, 2), x);
        assert_eq!(zx.block(2, 2, 2, 2), -&x);
        assert_eq!(zx.block(0, 2, 2, 2), ComplexMatrix::zeros(2, 2));
        assert_eq!(zx.block(2, 0, 2, 2), ComplexMatrix::zeros(2, 2));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(pauli_x().conjugate(), pauli_x());
        assert_eq!(pauli_y().conjugate(), -&pauli_y());
        assert_eq!(s().conjugate(), ComplexMatrix::diagonal(&[ONE, -I]));
    }

    #[test]
    fn swap_on_x_tensor_z() {
        let xz = pauli_x().tensor(&pauli_z());
        let swapped = permute_subsystems(&xz, &[2, 2], &[1, 0]).unwrap();
        assert_eq!(swapped, pauli_z().tensor(&pauli_x()));
        let back = permute_subsystems(&swapped, &[2, 2], &[1, 0]).unwrap();
        assert_eq!(back, xz);
        assert_eq!(permute_subsystems(&xz, &[2, 2], &[0, 1]).unwrap(), xz);
    }

    #[test]
    fn permute_matches_swap_gate_conjugation() {
        let a = pauli_y().tensor(&hadamard());
        let via_gate = swap().matmul(&a).matmul(&swap());
        assert!(permute_subsystems(&a, &[2, 2], &[1, 0]).unwrap().max_abs_diff(&via_gate) < 1e-15);
    }

    #[test]
    fn permute_rejects_bad_input() {
        let a = ComplexMatrix::identity(4);
        assert!(matches!(
            permute_subsystems(&a, &[2, 3], &[1, 0]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            permute_subsystems(&a, &[2, 2], &[0, 0]),
            Err(Error::InvalidPermutation(_))
        ));
    }

    #[test]
    fn three_way_permutation_with_unequal_dims() {
        let a = ComplexMatrix::from_fn(2, 2, |i, j| C64::new((i * 2 + j) as f64, 0.0));
        let b = ComplexMatrix::from_fn(3, 3, |i, j| C64::new(0.0, (i * 3 + j) as f64));
        let c = hadamard();
        let abc = tensor_all([&a, &b, &c]);
        let cab = permute_subsystems(&abc, &[2, 3, 2], &[2, 0, 1]).unwrap();
        assert!(cab.max_abs_diff(&tensor_all([&c, &a, &b])) < 1e-12);
        let inv = inverse_permutation(&[2, 0, 1]);
        let back = permute_subsystems(&cab, &[2, 2, 3], &inv).unwrap();
        assert!(back.max_abs_diff(&abc) < 1e-12);
    }

    #[test]
    fn embed_places_operator_on_targets() {
        let e = embed_operator(&pauli_x(), &[2, 2, 2], &[1]).unwrap();
        assert_eq!(e, tensor_all([&identity(), &pauli_x(), &identity()]));
        // reversed target order flips control and target
        let rev = embed_operator(&cnot(), &[2, 2], &[1, 0]).unwrap();
        assert_eq!(rev, swap().matmul(&cnot()).matmul(&swap()));
    }

    #[test]
    fn partial_trace_of_product() {
        let a = ComplexVector::from_real(&[0.6, 0.8]).projector();
        let b = ComplexVector::new(vec![ONE, I]).normalized().projector();
        let ab = a.tensor(&b);
        assert!(partial_trace(&ab, &[2, 2], &[0]).unwrap().max_abs_diff(&a) < 1e-15);
        assert!(partial_trace(&ab, &[2, 2], &[1]).unwrap().max_abs_diff(&b) < 1e-15);
    }

    #[test]
    fn from_rows_rejects_ragged() {
        let err = ComplexMatrix::from_rows(&[vec![ONE, ZERO], vec![ONE]]).unwrap_err();
        assert!(err.to_string().contains("row 1"));
    }
}
