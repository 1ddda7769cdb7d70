//! Dense complex matrix helpers shared by the subspace and relation layers.

use faer::{Mat, Side};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::tolerance::Tolerance;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Builds a complex matrix from real entries given in row-major order.
pub fn real_matrix(rows: usize, cols: usize, entries: &[f64]) -> CMatrix {
    assert_eq!(entries.len(), rows * cols, "entry count must match shape");
    CMatrix::from_fn(rows, cols, |i, j| {
        Complex64::new(entries[i * cols + j], 0.0)
    })
}

pub fn real_vector(entries: &[f64]) -> CVector {
    CVector::from_iterator(
        entries.len(),
        entries.iter().map(|&x| Complex64::new(x, 0.0)),
    )
}

pub fn real_diagonal(entries: &[f64]) -> CMatrix {
    CMatrix::from_diagonal(&real_vector(entries))
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Largest entry modulus, zero for empty matrices.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn vector_max_abs(v: &CVector) -> f64 {
    v.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

fn to_faer(m: &CMatrix) -> Mat<Complex64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Thin SVD `(U, sigma, V)` with singular values in nonincreasing order.
pub(crate) fn thin_svd(m: &CMatrix) -> (CMatrix, Vec<f64>, CMatrix) {
    let svd = to_faer(m)
        .thin_svd()
        .expect("SVD of a finite matrix converges");
    let (u, v) = (svd.U(), svd.V());
    let sigma = svd.S().column_vector().iter().map(|z| z.re).collect();
    (
        CMatrix::from_fn(u.nrows(), u.ncols(), |i, j| u[(i, j)]),
        sigma,
        CMatrix::from_fn(v.nrows(), v.ncols(), |i, j| v[(i, j)]),
    )
}

/// Orthonormal basis of the column space of `m`, with each column's first
/// significant entry rotated onto the positive real axis.
pub(crate) fn orthonormal_range(m: &CMatrix, tol: &Tolerance) -> CMatrix {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return CMatrix::zeros(rows, 0);
    }
    let (u, sigma, _) = thin_svd(m);
    let cutoff = tol.rank_cutoff(rows, cols, sigma[0]);
    let k = sigma.iter().take_while(|&&s| s >= cutoff).count();
    let mut basis = u.columns(0, k).into_owned();
    for mut col in basis.column_iter_mut() {
        let mut owned = col.clone_owned();
        normalize_phase(&mut owned);
        col.copy_from(&owned);
    }
    basis
}

pub(crate) fn normalize_phase(col: &mut CVector) {
    let scale = col.iter().fold(0.0, |acc: f64, z| acc.max(z.norm()));
    if scale == 0.0 {
        return;
    }
    if let Some(first) = col.iter().find(|z| z.norm() > 1e-8 * scale) {
        let phase = first.conj() / first.norm();
        col.iter_mut().for_each(|z| *z *= phase);
    }
}

/// Numerical rank under the mixed absolute/relative cutoff.
pub fn rank(m: &CMatrix, tol: &Tolerance) -> usize {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return 0;
    }
    let sigma = to_faer(m)
        .singular_values()
        .expect("SVD of a finite matrix converges");
    let cutoff = tol.rank_cutoff(rows, cols, sigma[0]);
    sigma.iter().filter(|&&s| s >= cutoff).count()
}

/// Moore-Penrose inverse with singular values below the rank cutoff discarded.
pub fn pseudo_inverse(m: &CMatrix, tol: &Tolerance) -> CMatrix {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return CMatrix::zeros(cols, rows);
    }
    let (u, sigma, v) = thin_svd(m);
    let cutoff = tol.rank_cutoff(rows, cols, sigma[0]);
    let k = sigma.iter().take_while(|&&s| s >= cutoff).count();
    let inv = DVector::from_iterator(k, sigma[..k].iter().map(|&s| Complex64::new(1.0 / s, 0.0)));
    v.columns(0, k) * CMatrix::from_diagonal(&inv) * u.columns(0, k).adjoint()
}

/// Eigenvalues (nondecreasing) and eigenvectors of the Hermitian part of `m`.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), CMatrix::zeros(0, 0));
    }
    let evd = to_faer(&hermitian_part(m))
        .self_adjoint_eigen(Side::Lower)
        .expect("Hermitian eigendecomposition converges");
    let values = evd.S().column_vector().iter().map(|z| z.re).collect();
    let u = evd.U();
    (values, CMatrix::from_fn(n, n, |i, j| u[(i, j)]))
}

pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

pub fn min_eigenvalue(m: &CMatrix) -> f64 {
    hermitian_eigen(m)
        .0
        .into_iter()
        .fold(f64::INFINITY, f64::min)
}

/// Principal square root of a positive semidefinite matrix; slightly negative
/// eigenvalues are clamped to zero.
pub fn psd_sqrt(m: &CMatrix) -> CMatrix {
    let (values, vectors) = hermitian_eigen(m);
    // Eigenvalues at rounding level would otherwise turn into square-root
    // sized noise.
    let top = values.iter().fold(0.0f64, |acc, l| acc.max(l.abs()));
    let floor = 1e-12 * values.len() as f64 * top;
    let roots = DVector::from_iterator(
        values.len(),
        values
            .iter()
            .map(|&l| Complex64::new(if l > floor { l.sqrt() } else { 0.0 }, 0.0)),
    );
    &vectors * CMatrix::from_diagonal(&roots) * vectors.adjoint()
}

pub fn hstack(blocks: &[&CMatrix]) -> CMatrix {
    let rows = blocks.first().map_or(0, |b| b.nrows());
    let cols = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = CMatrix::zeros(rows, cols);
    let mut at = 0;
    for b in blocks {
        assert_eq!(b.nrows(), rows, "hstack row mismatch");
        out.view_mut((0, at), (rows, b.ncols())).copy_from(*b);
        at += b.ncols();
    }
    out
}

pub fn vstack(blocks: &[&CMatrix]) -> CMatrix {
    let cols = blocks.first().map_or(0, |b| b.ncols());
    let rows = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMatrix::zeros(rows, cols);
    let mut at = 0;
    for b in blocks {
        assert_eq!(b.ncols(), cols, "vstack column mismatch");
        out.view_mut((at, 0), (b.nrows(), cols)).copy_from(*b);
        at += b.nrows();
    }
    out
}

pub fn scale(m: &CMatrix, factor: f64) -> CMatrix {
    m * Complex64::new(factor, 0.0)
}
