//! Dense complex-matrix helpers shared by every module.
//!
//! Conventions: matrices are `nalgebra::DMatrix<Complex<f64>>`, tensor-product
//! indices are row-major with the first factor most significant, and the
//! Hilbert-Schmidt inner product is `tr(X† Y)`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex;

use crate::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;
pub type RMat = DMatrix<f64>;

pub const ZERO: C64 = Complex::new(0.0, 0.0);
pub const ONE: C64 = Complex::new(1.0, 0.0);
pub const I: C64 = Complex::new(0.0, 1.0);

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn zeros(n: usize) -> CMat {
    CMat::zeros(n, n)
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn dagger(m: &CMat) -> CMat {
    m.adjoint()
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

pub fn anticommutator(a: &CMat, b: &CMat) -> CMat {
    a * b + b * a
}

/// tr(a · b) in O(n²) without forming the product.
pub fn trace_product(a: &CMat, b: &CMat) -> C64 {
    debug_assert_eq!(a.ncols(), b.nrows());
    let mut acc = ZERO;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// Hilbert-Schmidt inner product tr(a† b).
pub fn hs_inner(a: &CMat, b: &CMat) -> C64 {
    let mut acc = ZERO;
    for (x, y) in a.iter().zip(b.iter()) {
        acc += x.conj() * y;
    }
    acc
}

/// Largest entry magnitude (max-entry norm).
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    debug_assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn is_hermitian(m: &CMat, tol: f64) -> bool {
    if m.nrows() != m.ncols() {
        return false;
    }
    max_abs_diff(m, &m.adjoint()) <= tol
}

/// Eigenvalues of a Hermitian matrix, ascending. Non-convergence is an error,
/// never a silent fallback.
pub fn hermitian_eigenvalues(m: &CMat) -> Result<Vec<f64>> {
    let eig = SymmetricEigen::try_new(m.clone(), f64::EPSILON, 10_000)
        .ok_or(Error::EigenConvergence)?;
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
    Ok(vals)
}

/// Full eigendecomposition of a Hermitian matrix: (eigenvalues, eigenvectors
/// as columns), ascending by eigenvalue.
pub fn hermitian_eigen(m: &CMat) -> Result<(Vec<f64>, CMat)> {
    let eig = SymmetricEigen::try_new(m.clone(), f64::EPSILON, 10_000)
        .ok_or(Error::EigenConvergence)?;
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[i]
            .partial_cmp(&eig.eigenvalues[j])
            .expect("eigenvalues are finite")
    });
    let vals: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let n = m.nrows();
    let mut vecs = zeros(n);
    for (col, &src) in order.iter().enumerate() {
        vecs.set_column(col, &eig.eigenvectors.column(src));
    }
    Ok((vals, vecs))
}

/// Spectral (operator) 2-norm via the eigenvalues of m†m.
pub fn operator_norm(m: &CMat) -> Result<f64> {
    let gram = m.adjoint() * m;
    let vals = hermitian_eigenvalues(&gram)?;
    Ok(vals.last().copied().unwrap_or(0.0).max(0.0).sqrt())
}

/// Reshape a length-D² column vector into a D×D matrix, first tensor factor
/// as the row index: M[a, b] = v[a·D + b].
pub fn unvec(v: &nalgebra::DVector<C64>, d: usize) -> CMat {
    debug_assert_eq!(v.len(), d * d);
    CMat::from_fn(d, d, |a, b| v[a * d + b])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn pauli_y() -> CMat {
        CMat::from_row_slice(2, 2, &[ZERO, -I, I, ZERO])
    }

    #[test]
    fn hermitian_eigen_solves_pauli_y() {
        let vals = hermitian_eigenvalues(&pauli_y()).unwrap();
        assert_relative_eq!(vals[0], -1.0, epsilon = 1e-12);
        assert_relative_eq!(vals[1], 1.0, epsilon = 1e-12);

        let (vals, vecs) = hermitian_eigen(&pauli_y()).unwrap();
        let y = pauli_y();
        for k in 0..2 {
            let v = vecs.column(k).clone_owned();
            let resid = &y * &v - v.map(|c| c * C64::from(vals[k]));
            assert!(resid.iter().all(|c| c.norm() < 1e-12));
        }
    }

    #[test]
    fn kron_matches_hand_computation() {
        let x = CMat::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]);
        let z = CMat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]);
        let xz = kron(&x, &z);
        assert_eq!(xz[(0, 2)], ONE);
        assert_eq!(xz[(1, 3)], -ONE);
        assert_eq!(xz[(2, 0)], ONE);
        assert_eq!(xz[(3, 1)], -ONE);
        assert_relative_eq!(trace_product(&xz, &xz).re, 4.0, epsilon = 1e-14);
    }

    #[test]
    fn operator_norm_of_scaled_unitary() {
        let y = pauli_y().map(|c| c * C64::from(3.0));
        assert_relative_eq!(operator_norm(&y).unwrap(), 3.0, epsilon = 1e-12);
    }
}
