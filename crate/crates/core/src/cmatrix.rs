//! Small dense complex matrices.
//!
//! Everything in this crate lives on spaces of dimension at most 8, so the
//! representation is a plain row-major `Vec` with no blocking or sparsity.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type Complex = Complex64;

/// Default tolerance for the structural predicates.
pub const DEFAULT_TOL: f64 = 1e-12;

pub(crate) const ZERO: Complex = Complex::new(0.0, 0.0);
pub(crate) const ONE: Complex = Complex::new(1.0, 0.0);
pub(crate) const I: Complex = Complex::new(0.0, 1.0);

/// Dense complex matrix in row-major order.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting empty shapes,
    /// length mismatches and non-finite entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "construct",
                lhs: (rows, cols),
                rhs: (data.len(), 1),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::new(rows, cols, data.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
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

    /// Column vector from its entries.
    pub fn column(entries: &[Complex]) -> Result<Self> {
        Self::new(entries.len(), 1, entries.to_vec())
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
    pub fn as_slice(&self) -> &[Complex] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> Complex {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        self.data[row * self.cols + col]
    }

    fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = vec![ZERO; rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.data[i * self.cols + j];
                if a == ZERO {
                    continue;
                }
                for k in 0..other.rows {
                    let row = i * other.rows + k;
                    for l in 0..other.cols {
                        let col = j * other.cols + l;
                        data[row * cols + col] = a * other.data[k * other.cols + l];
                    }
                }
            }
        }
        Self { rows, cols, data }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        let mut data = vec![ZERO; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let out = &mut data[i * other.cols..(i + 1) * other.cols];
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, b) in out.iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.data[i * self.cols + j].conj());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn trace(&self) -> Result<Complex> {
        let n = self.require_square()?;
        Ok((0..n).map(|i| self.data[i * n + i]).sum())
    }

    /// `Tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Result<Complex> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(Error::DimensionMismatch {
                op: "trace_product",
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        let mut acc = ZERO;
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc += self.data[i * self.cols + k] * other.data[k * other.cols + i];
            }
        }
        Ok(acc)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, op: &'static str, f: impl Fn(Complex, Complex) -> Complex) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: Complex) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| c * z).collect(),
        }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(Complex::new(c, 0.0))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        let d = self.sub(other)?;
        Ok(d.data.iter().map(|z| z.norm()).fold(0.0, f64::max))
    }

    pub fn is_hermitian(&self, tol: f64) -> Result<bool> {
        self.require_square()?;
        Ok(self.max_abs_diff(&self.adjoint())? <= tol)
    }

    pub fn is_idempotent(&self, tol: f64) -> Result<bool> {
        self.require_square()?;
        Ok(self.matmul(self)?.max_abs_diff(self)? <= tol)
    }

    /// Positive semidefiniteness of a Hermitian matrix: every eigenvalue is
    /// at least `-tol`. Non-Hermitian input is reported as not PSD.
    pub fn is_psd(&self, tol: f64) -> Result<bool> {
        if !self.is_hermitian(tol.max(DEFAULT_TOL))? {
            return Ok(false);
        }
        Ok(self.min_eigenvalue()? >= -tol)
    }

    /// Smallest eigenvalue of the Hermitian part of a square matrix.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        let n = self.require_square()?;
        let m = DMatrix::from_fn(n, n, |i, j| (self.data[i * n + j] + self.data[j * n + i].conj()) * 0.5);
        let eig = m.symmetric_eigenvalues();
        Ok(eig.iter().copied().fold(f64::INFINITY, f64::min))
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, "{:>9.5}{:+.5}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sx() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    fn sy() -> ComplexMatrix {
        ComplexMatrix::new(2, 2, vec![ZERO, -I, I, ZERO]).unwrap()
    }

    fn sz() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap()
    }

    #[test]
    fn rejects_bad_construction() {
        assert!(ComplexMatrix::new(2, 2, vec![ONE; 3]).is_err());
        assert!(ComplexMatrix::new(0, 2, vec![]).is_err());
        assert_eq!(
            ComplexMatrix::new(1, 1, vec![Complex::new(f64::NAN, 0.0)]),
            Err(Error::NonFinite)
        );
        assert_eq!(
            ComplexMatrix::new(1, 1, vec![Complex::new(0.0, f64::INFINITY)]),
            Err(Error::NonFinite)
        );
    }

    #[test]
    fn kron_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.kron(&i2), ComplexMatrix::identity(4));
        assert_eq!(sx().kron(&sx()).get(0, 3), ONE);

        let xxx = sx().kron(&sx()).kron(&sx());
        let mut e000 = vec![ZERO; 8];
        e000[0] = ONE;
        let out = xxx.matmul(&ComplexMatrix::column(&e000).unwrap()).unwrap();
        let mut e111 = vec![ZERO; 8];
        e111[7] = ONE;
        assert_eq!(out, ComplexMatrix::column(&e111).unwrap());
    }

    #[test]
    fn kron_shape_and_entries() {
        let a = ComplexMatrix::from_real(2, 3, &[1., 2., 3., 4., 5., 6.]).unwrap();
        let b = ComplexMatrix::from_real(3, 1, &[7., 8., 9.]).unwrap();
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (6, 3));
        for i in 0..2 {
            for j in 0..3 {
                for r in 0..3 {
                    assert_eq!(k.get(i * 3 + r, j), a.get(i, j) * b.get(r, 0));
                }
            }
        }
    }

    #[test]
    fn matmul_examples() {
        assert_eq!(sx().matmul(&sx()).unwrap(), ComplexMatrix::identity(2));
        assert_eq!(sx().matmul(&sy()).unwrap(), sz().scale(I));
        let p = ComplexMatrix::identity(2).add(&sx()).unwrap().scale_real(0.5);
        assert_eq!(p.matmul(&p).unwrap(), p);
        let err = sx().matmul(&ComplexMatrix::identity(3)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { op: "matmul", .. }));
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(sy().adjoint(), sy());
        let ii = ComplexMatrix::identity(2).scale(I);
        assert_eq!(ii.adjoint(), ComplexMatrix::identity(2).scale(-I));
        let r = ComplexMatrix::from_real(2, 3, &[1., 2., 3., 4., 5., 6.]).unwrap();
        assert_eq!((r.adjoint().rows(), r.adjoint().cols()), (3, 2));
    }

    #[test]
    fn trace_examples() {
        assert_eq!(ComplexMatrix::identity(8).trace().unwrap(), Complex::new(8.0, 0.0));
        assert_eq!(sz().trace().unwrap(), ZERO);
        assert_eq!(
            ComplexMatrix::zeros(2, 3).trace(),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn add_and_scale_examples() {
        let z = sz().add(&sz().scale_real(-1.0)).unwrap();
        assert_eq!(z, ComplexMatrix::zeros(2, 2));
        let plus = ComplexMatrix::identity(2).add(&sx()).unwrap().scale_real(0.5);
        assert_eq!(plus, ComplexMatrix::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5]).unwrap());
        let py = ComplexMatrix::identity(2).add(&sy()).unwrap().scale_real(0.5);
        let my = ComplexMatrix::identity(2).sub(&sy()).unwrap().scale_real(0.5);
        assert_eq!(py.add(&my).unwrap(), ComplexMatrix::identity(2));
        assert!(sx().add(&ComplexMatrix::identity(4)).is_err());
    }

    #[test]
    fn predicates() {
        let p = ComplexMatrix::identity(2).add(&sx()).unwrap().scale_real(0.5);
        assert!(p.is_idempotent(1e-12).unwrap());
        assert!(p.is_hermitian(1e-12).unwrap());
        assert!(p.is_psd(1e-12).unwrap());
        assert!(!sx().is_idempotent(1e-12).unwrap());
        assert!(!sx().is_psd(1e-12).unwrap());
        assert!(!sx().scale(I).is_hermitian(1e-12).unwrap());
        assert!(ComplexMatrix::zeros(2, 3).is_hermitian(1e-12).is_err());
        assert!((sz().min_eigenvalue().unwrap() + 1.0).abs() < 1e-14);
    }

    fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), rows * cols).prop_map(move |v| {
            ComplexMatrix::new(rows, cols, v.into_iter().map(|(r, i)| Complex::new(r, i)).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn kron_is_associative(a in arb_matrix(2, 2), b in arb_matrix(2, 1), c in arb_matrix(1, 2)) {
            // Associativity holds up to rounding of the re-associated products.
            let lhs = a.kron(&b).kron(&c);
            let rhs = a.kron(&b.kron(&c));
            prop_assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-15);
        }

        #[test]
        fn trace_is_cyclic(a in arb_matrix(4, 4), b in arb_matrix(4, 4)) {
            let ab = a.matmul(&b).unwrap().trace().unwrap();
            let ba = b.matmul(&a).unwrap().trace().unwrap();
            prop_assert!((ab - ba).norm() <= 1e-12);
            prop_assert!((a.trace_product(&b).unwrap() - ab).norm() <= 1e-12);
        }

        #[test]
        fn adjoint_distributes_over_kron(a in arb_matrix(2, 2), b in arb_matrix(2, 2)) {
            prop_assert_eq!(a.kron(&b).adjoint(), a.adjoint().kron(&b.adjoint()));
            prop_assert_eq!(a.adjoint().adjoint(), a);
        }
    }
}
