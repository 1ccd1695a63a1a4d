use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{
    Error, Result, DENSITY_EIGENVALUE_TOLERANCE, DENSITY_TRACE_TOLERANCE, HERMITICITY_TOLERANCE,
};

/// A square complex matrix with exact conjugate symmetry.
///
/// Construction symmetrizes the input, so `entries[i][j] == conj(entries[j][i])`
/// holds bit-exactly afterwards. Addition and real scaling preserve that
/// property exactly (complex arithmetic is componentwise), so compositions of
/// Hermitian values never drift off the invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    data: DMatrix<Complex64>,
}

impl HermitianMatrix {
    /// Validate and symmetrize a raw complex matrix.
    ///
    /// Rejects non-square input and symmetry violations larger than
    /// [`HERMITICITY_TOLERANCE`].
    pub fn new(data: DMatrix<Complex64>) -> Result<Self> {
        let n = data.nrows();
        if n == 0 {
            return Err(Error::Empty);
        }
        if data.ncols() != n {
            return Err(Error::NotSquare {
                rows: n,
                cols: data.ncols(),
            });
        }
        let mut violation = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let diff = data[(i, j)] - data[(j, i)].conj();
                violation = violation.max(diff.norm());
            }
        }
        if violation > HERMITICITY_TOLERANCE {
            return Err(Error::NotHermitian(violation));
        }
        Ok(Self::symmetrized(data))
    }

    /// Force exact conjugate symmetry: `(A + A†)/2` entrywise, with real
    /// diagonal. Used both by `new` and by internal paths where Hermiticity
    /// holds mathematically but floating-point products left ~1-ulp noise.
    pub fn symmetrized(mut data: DMatrix<Complex64>) -> Self {
        let n = data.nrows();
        assert_eq!(n, data.ncols(), "symmetrized requires a square matrix");
        for i in 0..n {
            data[(i, i)] = Complex64::new(data[(i, i)].re, 0.0);
            for j in (i + 1)..n {
                let avg = (data[(i, j)] + data[(j, i)].conj()) * 0.5;
                data[(i, j)] = avg;
                data[(j, i)] = avg.conj();
            }
        }
        Self { data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            data: DMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            data: DMatrix::identity(dim, dim),
        }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut data = DMatrix::zeros(n, n);
        for (i, &v) in diag.iter().enumerate() {
            data[(i, i)] = Complex64::new(v, 0.0);
        }
        Self { data }
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn data(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    pub fn into_data(self) -> DMatrix<Complex64> {
        self.data
    }

    /// Trace; real by the symmetry invariant.
    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.data[(i, i)].re).sum()
    }

    /// Squared Frobenius norm, `Σ |a_ij|²`.
    pub fn frobenius_norm_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `tr(AB)` for Hermitian `A`, `B`; always real. Equals the Frobenius
    /// inner product `Σ a_ij conj(b_ij)`.
    pub fn trace_product(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "trace_product dimension mismatch");
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a.re * b.re + a.im * b.im)
            .sum()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            data: &self.data * Complex64::new(c, 0.0),
        }
    }

    /// In-place `self += c * other` with real `c`; preserves exact symmetry.
    pub fn add_scaled_assign(&mut self, c: f64, other: &Self) {
        assert_eq!(self.dim(), other.dim(), "add_scaled dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(other.data.iter()) {
            a.re += c * b.re;
            a.im += c * b.im;
        }
    }

    /// Largest entrywise absolute difference; handy for residual checks.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "max_abs_diff dimension mismatch");
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Add for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn add(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        assert_eq!(self.dim(), rhs.dim(), "add dimension mismatch");
        HermitianMatrix {
            data: &self.data + &rhs.data,
        }
    }
}

impl std::ops::Sub for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn sub(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        assert_eq!(self.dim(), rhs.dim(), "sub dimension mismatch");
        HermitianMatrix {
            data: &self.data - &rhs.data,
        }
    }
}

/// A Hermitian, positive-semidefinite, unit-trace matrix: a quantum state.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    inner: HermitianMatrix,
}

impl DensityMatrix {
    /// Validate eigenvalue positivity (≥ −1e-10) and unit trace (±1e-10).
    pub fn new(inner: HermitianMatrix) -> Result<Self> {
        let trace = inner.trace();
        if (trace - 1.0).abs() > DENSITY_TRACE_TOLERANCE {
            return Err(Error::InvalidTrace(trace));
        }
        let eig = inner.eigendecompose();
        let min = eig.eigenvalues[0];
        if min < -DENSITY_EIGENVALUE_TOLERANCE {
            return Err(Error::NotPositive(min));
        }
        Ok(Self { inner })
    }

    /// Wrap a matrix that is PSD and unit-trace by construction
    /// (e.g. the output of a normalized exponential or a projection).
    /// Skips the O(d³) eigenvalue validation.
    pub fn from_hermitian_unchecked(inner: HermitianMatrix) -> Self {
        Self { inner }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            inner: HermitianMatrix::identity(dim).scale(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn as_hermitian(&self) -> &HermitianMatrix {
        &self.inner
    }

    pub fn into_hermitian(self) -> HermitianMatrix {
        self.inner
    }

    /// `tr(ρ²) = ‖ρ‖²_F`, the purity; 1 for pure states, 1/d for the
    /// maximally mixed state.
    pub fn purity(&self) -> f64 {
        self.inner.frobenius_norm_sq()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_non_square() {
        let m = DMatrix::<Complex64>::zeros(2, 3);
        assert!(matches!(
            HermitianMatrix::new(m),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn rejects_asymmetric() {
        let m = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(HermitianMatrix::new(m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn symmetrization_is_exact() {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, 1e-9), c(0.3, 0.4), c(0.3, -0.4 + 1e-9), c(2.0, 0.0)],
        );
        let h = HermitianMatrix::new(m).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(h.data()[(i, j)], h.data()[(j, i)].conj());
            }
        }
    }

    #[test]
    fn trace_product_matches_dense() {
        let a = HermitianMatrix::new(DMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, 0.0), c(0.5, 0.25), c(0.5, -0.25), c(-2.0, 0.0)],
        ))
        .unwrap();
        let b = HermitianMatrix::new(DMatrix::from_row_slice(
            2,
            2,
            &[c(0.25, 0.0), c(-0.5, 1.0), c(-0.5, -1.0), c(3.0, 0.0)],
        ))
        .unwrap();
        let dense = (a.data() * b.data()).trace();
        assert!((a.trace_product(&b) - dense.re).abs() < 1e-14);
        assert!(dense.im.abs() < 1e-14);
    }

    #[test]
    fn density_validation() {
        let ok = HermitianMatrix::from_real_diagonal(&[0.75, 0.25]);
        assert!(DensityMatrix::new(ok).is_ok());

        let bad_trace = HermitianMatrix::from_real_diagonal(&[0.75, 0.75]);
        assert!(matches!(
            DensityMatrix::new(bad_trace),
            Err(Error::InvalidTrace(_))
        ));

        let negative = HermitianMatrix::from_real_diagonal(&[1.2, -0.2]);
        assert!(matches!(
            DensityMatrix::new(negative),
            Err(Error::NotPositive(_))
        ));
    }

    #[test]
    fn maximally_mixed_purity() {
        let rho = DensityMatrix::maximally_mixed(4);
        assert!((rho.purity() - 0.25).abs() < 1e-15);
        assert!((rho.as_hermitian().trace() - 1.0).abs() < 1e-15);
    }
}
