//! Thin helpers over nalgebra for complex dense matrices.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `exp(2 pi i * num / den)`.
pub fn root_of_unity(num: i64, den: i64) -> Complex64 {
    let theta = 2.0 * core::f64::consts::PI * (num.rem_euclid(den) as f64) / den as f64;
    Complex64::new(libm::cos(theta), libm::sin(theta))
}

/// Eigen-decomposition of a Hermitian matrix; eigenvalues ascending.
pub fn hermitian_eigen(h: CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(eig.eigenvectors.nrows(), order.len(), |r, c| {
        eig.eigenvectors[(r, order[c])]
    });
    (values, vectors)
}

/// Orthonormal basis of the kernel of `m`, using singular values below
/// `tol * max(1, largest singular value)`.
pub fn nullspace(m: &CMatrix, tol: f64) -> Vec<CVector> {
    let cols = m.ncols();
    if cols == 0 {
        return Vec::new();
    }
    // thin SVD needs at least as many rows as columns to expose the full kernel
    let padded;
    let m = if m.nrows() < cols {
        padded = m.clone().resize_vertically(cols, ZERO);
        &padded
    } else {
        m
    };
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let scale = svd.singular_values.iter().copied().fold(1.0_f64, f64::max);
    (0..cols)
        .filter(|&i| svd.singular_values[i] <= tol * scale)
        .map(|i| v_t.row(i).adjoint())
        .collect()
}

/// Orthonormal basis of the span of `vectors`.
pub fn orthonormal_span(vectors: &[CVector], tol: f64) -> Vec<CVector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let svd = CMatrix::from_columns(vectors).svd(true, false);
    let u = svd.u.expect("requested U");
    let scale = svd.singular_values.iter().copied().fold(1.0_f64, f64::max);
    (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] > tol * scale)
        .map(|i| u.column(i).into_owned())
        .collect()
}

/// Largest singular value.
pub fn operator_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().iter().copied().fold(0.0, f64::max)
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Column-major flattening of a square matrix.
pub fn vectorize(m: &CMatrix) -> CVector {
    CVector::from_column_slice(m.as_slice())
}

pub fn unvectorize(v: &CVector, n: usize) -> CMatrix {
    CMatrix::from_column_slice(n, n, v.as_slice())
}

/// Hilbert-Schmidt inner product `tr(a^* b)`.
pub fn hs_inner(a: &CMatrix, b: &CMatrix) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_rank_one() {
        let m = CMatrix::from_fn(1, 3, |_, c| Complex64::new(c as f64 + 1.0, 0.0));
        let k = nullspace(&m, 1e-10);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!((&m * v).norm() < 1e-12);
        }
    }

    #[test]
    fn span_drops_dependent_vectors() {
        let a = CVector::from_vec(alloc::vec![ONE, ZERO, ZERO]);
        let b = CVector::from_vec(alloc::vec![ONE, ONE, ZERO]);
        let c = &a + &b;
        assert_eq!(orthonormal_span(&[a, b, c], 1e-10).len(), 2);
    }

    #[test]
    fn hermitian_eigen_sorted() {
        let i = Complex64::new(0.0, 1.0);
        let h = CMatrix::from_row_slice(2, 2, &[ZERO, -i, i, ZERO]);
        let (vals, vecs) = hermitian_eigen(h.clone());
        assert!((vals[0] + 1.0).abs() < 1e-12 && (vals[1] - 1.0).abs() < 1e-12);
        let v = vecs.column(1).into_owned();
        assert!((&h * &v - &v).norm() < 1e-12);
    }
}
