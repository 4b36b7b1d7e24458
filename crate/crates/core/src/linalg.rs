//! Dense complex linear algebra for the small (dimension ≤ 8) matrices used
//! throughout the crate.
//!
//! Tensor products follow the ket convention: the left factor of `kron` is the
//! most significant index block, so `|q e a⟩` has flat index `q·4 + e·2 + a`.

use std::fmt;
use std::ops::Index;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

/// Default tolerance for unitarity checks.
pub const UNITARY_TOL: f64 = 1e-10;
/// Default tolerance for Hermiticity checks.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Default floor for eigenvalues in positive-semidefiniteness checks.
pub const PSD_TOL: f64 = 1e-9;

/// Candidates whose Gram-Schmidt residual falls below this are skipped during
/// isometry completion.
const COMPLETION_RESIDUAL_FLOOR: f64 = 1e-8;

pub(crate) const ZERO: Complex = Complex::new(0.0, 0.0);
pub(crate) const ONE: Complex = Complex::new(1.0, 0.0);

fn all_finite(values: &[Complex]) -> bool {
    values.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Dense column vector of complex amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexVector {
    data: Vec<Complex>,
}

impl ComplexVector {
    pub fn new(entries: Vec<Complex>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Dimension(
                "vector must have positive dimension".into(),
            ));
        }
        if !all_finite(&entries) {
            return Err(Error::NonFinite("vector"));
        }
        Ok(Self { data: entries })
    }

    pub fn from_real(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    /// Canonical basis vector `|k⟩` of dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::Dimension(format!(
                "basis index {k} out of range for dimension {dim}"
            )));
        }
        let mut data = vec![ZERO; dim];
        data[k] = ONE;
        Ok(Self { data })
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn entries(&self) -> &[Complex] {
        &self.data
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &ComplexVector) -> Result<Complex> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension(format!(
                "inner product of dimensions {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn scale(&self, factor: Complex) -> ComplexVector {
        ComplexVector {
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn kron(&self, other: &ComplexVector) -> ComplexVector {
        let mut data = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.data {
            for b in &other.data {
                data.push(a * b);
            }
        }
        ComplexVector { data }
    }

    /// `|self⟩⟨other|`.
    pub fn outer(&self, other: &ComplexVector) -> ComplexMatrix {
        let mut data = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.data {
            for b in &other.data {
                data.push(a * b.conj());
            }
        }
        ComplexMatrix {
            rows: self.dim(),
            cols: other.dim(),
            data,
        }
    }
}

impl Index<usize> for ComplexVector {
    type Output = Complex;

    fn index(&self, i: usize) -> &Complex {
        &self.data[i]
    }
}

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!(
                "matrix shape {rows}x{cols} must be positive"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if !all_finite(&entries) {
            return Err(Error::NonFinite("matrix"));
        }
        Ok(Self {
            rows,
            cols,
            data: entries,
        })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            entries.iter().map(|&x| Complex::new(x, 0.0)).collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix shape must be positive");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn diagonal(entries: &[Complex]) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::Dimension("empty diagonal".into()));
        }
        let mut m = Self::zeros(n, n);
        for (i, z) in entries.iter().enumerate() {
            m.data[i * n + i] = *z;
        }
        if !all_finite(&m.data) {
            return Err(Error::NonFinite("matrix"));
        }
        Ok(m)
    }

    pub fn from_columns(columns: &[ComplexVector]) -> Result<Self> {
        let Some(first) = columns.first() else {
            return Err(Error::Dimension("no columns".into()));
        };
        let rows = first.dim();
        if columns.iter().any(|c| c.dim() != rows) {
            return Err(Error::Dimension("columns of unequal length".into()));
        }
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            for i in 0..rows {
                m.data[i * cols + j] = c.data[i];
            }
        }
        Ok(m)
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

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> Option<Complex> {
        (row < self.rows && col < self.cols).then(|| self.data[row * self.cols + col])
    }

    pub fn column(&self, j: usize) -> ComplexVector {
        assert!(j < self.cols, "column {j} out of range");
        ComplexVector {
            data: (0..self.rows)
                .map(|i| self.data[i * self.cols + j])
                .collect(),
        }
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &ComplexVector) -> Result<ComplexVector> {
        if self.cols != v.dim() {
            return Err(Error::Dimension(format!(
                "cannot apply {}x{} matrix to vector of dimension {}",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        let data = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|k| self.data[i * self.cols + k] * v.data[k])
                    .sum()
            })
            .collect();
        Ok(ComplexVector { data })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out
    }

    /// Kronecker product with `self` as the more significant factor.
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = ComplexMatrix::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.data[i * self.cols + j];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.data[(i * other.rows + k) * cols + j * other.cols + l] =
                            a * other.data[k * other.cols + l];
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &ComplexMatrix,
        f: impl Fn(Complex, Complex) -> Complex,
    ) -> Result<ComplexMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "shapes {}x{} and {}x{} differ",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn trace(&self) -> Result<Complex> {
        self.require_square("trace")?;
        Ok((0..self.rows).map(|i| self.data[i * self.cols + i]).sum())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> Result<f64> {
        Ok(self
            .sub(other)?
            .data
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max))
    }

    /// `(m + m†) / 2`.
    pub fn hermitian_part(&self) -> Result<ComplexMatrix> {
        self.require_square("hermitian part")?;
        Ok(self.add(&self.adjoint())?.scale(Complex::new(0.5, 0.0)))
    }

    /// `m · ρ · m†`.
    pub fn conjugate(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.matmul(rho)?.matmul(&self.adjoint())
    }

    fn require_square(&self, what: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "{what} requires a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex;

    fn index(&self, (row, col): (usize, usize)) -> &Complex {
        assert!(row < self.rows && col < self.cols, "index out of range");
        &self.data[row * self.cols + col]
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                let z = self.data[i * self.cols + j];
                if j > 0 {
                    write!(f, ", ")?;
                }
                let sign = if z.im.is_sign_negative() { '-' } else { '+' };
                write!(f, "{:.6}{sign}{:.6}i", z.re, z.im.abs())?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.matmul(b)
}

pub fn adjoint(a: &ComplexMatrix) -> ComplexMatrix {
    a.adjoint()
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

/// Splits a flat index into per-subsystem digits (most significant first).
pub(crate) fn split_index(mut index: usize, dims: &[usize], digits: &mut [usize]) {
    for (slot, &d) in digits.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
}

/// Traces out every subsystem not listed in `keep`.
///
/// `dims` lists the subsystem dimensions, most significant first. The kept
/// subsystems appear in the result in ascending index order.
pub fn partial_trace(m: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    m.require_square("partial trace")?;
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::Dimension(
            "subsystem dimensions must be positive".into(),
        ));
    }
    let total: usize = dims.iter().product();
    if total != m.rows {
        return Err(Error::Dimension(format!(
            "subsystem dimensions {dims:?} multiply to {total}, matrix is {}x{}",
            m.rows, m.cols
        )));
    }
    if keep.is_empty() {
        return Err(Error::Dimension("keep set must be nonempty".into()));
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if let Some(&bad) = kept.iter().find(|&&k| k >= dims.len()) {
        return Err(Error::Dimension(format!(
            "subsystem {bad} out of range for {} subsystems",
            dims.len()
        )));
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !kept.contains(i)).collect();
    let out_dim: usize = kept.iter().map(|&k| dims[k]).product();

    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    let mut row_digits = vec![0; dims.len()];
    let mut col_digits = vec![0; dims.len()];
    let flatten = |digits: &[usize]| kept.iter().fold(0, |acc, &k| acc * dims[k] + digits[k]);
    for i in 0..total {
        split_index(i, dims, &mut row_digits);
        for j in 0..total {
            split_index(j, dims, &mut col_digits);
            if traced.iter().all(|&t| row_digits[t] == col_digits[t]) {
                let (r, c) = (flatten(&row_digits), flatten(&col_digits));
                out.data[r * out_dim + c] += m.data[i * total + j];
            }
        }
    }
    Ok(out)
}

/// Extends a matrix with orthonormal columns to a square unitary.
///
/// The input columns are kept as the leading columns. The remaining columns
/// come from modified Gram-Schmidt over the canonical basis vectors taken in
/// index order, so the completion is deterministic.
pub fn complete_isometry_to_unitary(v: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = v.rows;
    if v.cols > n {
        return Err(Error::Dimension(format!(
            "{} columns cannot be orthonormal in dimension {n}",
            v.cols
        )));
    }
    let gram = v.adjoint().matmul(v)?;
    let residual = gram.max_abs_diff(&ComplexMatrix::identity(v.cols))?;
    if residual > UNITARY_TOL {
        return Err(Error::InvalidParameter(format!(
            "columns are not orthonormal (residual {residual:e})"
        )));
    }

    let mut basis: Vec<ComplexVector> = (0..v.cols).map(|j| v.column(j)).collect();
    for k in 0..n {
        if basis.len() == n {
            break;
        }
        let mut candidate = ComplexVector::basis(n, k)?;
        // Two passes keep the new column orthogonal to working precision.
        for _ in 0..2 {
            for u in &basis {
                let overlap = u.inner(&candidate)?;
                for (c, b) in candidate.data.iter_mut().zip(&u.data) {
                    *c -= overlap * b;
                }
            }
        }
        let norm = candidate.norm();
        if norm < COMPLETION_RESIDUAL_FLOOR {
            continue;
        }
        basis.push(candidate.scale(Complex::new(1.0 / norm, 0.0)));
    }
    ComplexMatrix::from_columns(&basis)
}

pub fn is_unitary(m: &ComplexMatrix, tol: f64) -> Result<bool> {
    m.require_square("unitarity check")?;
    let residual = m
        .adjoint()
        .matmul(m)?
        .max_abs_diff(&ComplexMatrix::identity(m.rows))?;
    Ok(residual <= tol)
}

pub fn is_hermitian(m: &ComplexMatrix, tol: f64) -> Result<bool> {
    m.require_square("hermiticity check")?;
    Ok(m.max_abs_diff(&m.adjoint())? <= tol)
}

/// True when every eigenvalue of the Hermitian part of `m` is at least `-tol`.
pub fn is_psd(m: &ComplexMatrix, tol: f64) -> Result<bool> {
    let min = hermitian_eigenvalues(&m.hermitian_part()?)?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    Ok(min >= -tol)
}

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// Only the Hermitian part of `m` is used. The eigenproblem is solved on the
/// real symmetric embedding `[[Re, -Im], [Im, Re]]`, whose spectrum is the
/// Hermitian spectrum with every eigenvalue doubled.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let h = m.hermitian_part()?;
    let n = h.rows;
    let embedded = DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let z = h.data[(i % n) * n + (j % n)];
        match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let mut values: Vec<f64> = SymmetricEigen::new(embedded)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    values.sort_by(f64::total_cmp);
    Ok(values.into_iter().step_by(2).collect())
}
