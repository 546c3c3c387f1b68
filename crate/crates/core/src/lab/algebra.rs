//! Finite-dimensional *-subalgebras of `M_n`, stored as orthonormal
//! Hilbert-Schmidt bases.

use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, ONE, ZERO};

/// Singular values below this (relative) count as kernel when solving the
/// linear constraints that define commutants, centers and intertwiners.
pub const RANK_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct Subalgebra {
    n: usize,
    basis: Vec<CMatrix>,
    /// Columns are `vec(basis[i])`.
    frame: CMatrix,
}

impl Subalgebra {
    /// `M_n` with the matrix-unit basis.
    pub fn full(n: usize) -> Self {
        Self::block_diagonal(&[n]).expect("single block")
    }

    /// `M_{k1} + M_{k2} + ...` embedded block-diagonally.
    pub fn block_diagonal(sizes: &[usize]) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::InvalidArgument(
                "block sizes must be positive".into(),
            ));
        }
        let n: usize = sizes.iter().sum();
        let mut basis = Vec::new();
        let mut offset = 0;
        for &k in sizes {
            for c in 0..k {
                for r in 0..k {
                    let mut m = CMatrix::zeros(n, n);
                    m[(offset + r, offset + c)] = ONE;
                    basis.push(m);
                }
            }
            offset += k;
        }
        Ok(Self::from_orthonormal(n, basis))
    }

    /// Orthonormalizes a spanning set. Closure is not checked here; see
    /// [`Subalgebra::closure_residual`].
    pub fn from_span(n: usize, matrices: &[CMatrix], tol: f64) -> Result<Self> {
        if matrices.iter().any(|m| m.nrows() != n || m.ncols() != n) {
            return Err(Error::InvalidArgument("matrix size mismatch".into()));
        }
        let vectors: Vec<CVector> = matrices.iter().map(linalg::vectorize).collect();
        let basis = linalg::orthonormal_span(&vectors, tol)
            .iter()
            .map(|v| linalg::unvectorize(v, n))
            .collect();
        Ok(Self::from_orthonormal(n, basis))
    }

    pub(crate) fn from_orthonormal(n: usize, basis: Vec<CMatrix>) -> Self {
        let frame = if basis.is_empty() {
            CMatrix::zeros(n * n, 0)
        } else {
            let cols: Vec<CVector> = basis.iter().map(linalg::vectorize).collect();
            CMatrix::from_columns(&cols)
        };
        Self { n, basis, frame }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CMatrix] {
        &self.basis
    }

    pub fn coordinates(&self, m: &CMatrix) -> CVector {
        self.frame.adjoint() * linalg::vectorize(m)
    }

    pub fn from_coordinates(&self, x: &CVector) -> CMatrix {
        linalg::unvectorize(&(&self.frame * x), self.n)
    }

    /// Orthogonal (Hilbert-Schmidt) projection onto the subspace.
    pub fn project(&self, m: &CMatrix) -> CMatrix {
        self.from_coordinates(&self.coordinates(m))
    }

    /// Largest entry of `m - project(m)`.
    pub fn distance(&self, m: &CMatrix) -> f64 {
        linalg::max_abs(&(m - self.project(m)))
    }

    pub fn contains(&self, m: &CMatrix, tol: f64) -> bool {
        self.distance(m) <= tol
    }

    /// Worst failure of unit, adjoint and product closure on basis pairs.
    pub fn closure_residual(&self) -> f64 {
        let mut worst = self.distance(&CMatrix::identity(self.n, self.n));
        for a in &self.basis {
            worst = worst.max(self.distance(&a.adjoint()));
            for b in &self.basis {
                worst = worst.max(self.distance(&(a * b)));
            }
        }
        worst
    }

    /// Random element with coefficients uniform in the unit square.
    pub fn random_element(&self, rng: &mut ChaCha8Rng) -> CMatrix {
        let mut m = CMatrix::zeros(self.n, self.n);
        for b in &self.basis {
            let c = num_complex::Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            m += b * c;
        }
        m
    }

    /// Elements `X` of this subspace with `f(X) = 0` for a linear `f` that
    /// returns a list of matrices.
    pub fn solve<F>(&self, f: F) -> Self
    where
        F: Fn(&CMatrix) -> Vec<CMatrix>,
    {
        if self.basis.is_empty() {
            return self.clone();
        }
        let columns: Vec<CVector> = self
            .basis
            .iter()
            .map(|b| {
                let parts = f(b);
                let len: usize = parts.iter().map(|p| p.len()).sum();
                let mut v = CVector::from_element(len.max(1), ZERO);
                let mut at = 0;
                for p in &parts {
                    v.rows_mut(at, p.len()).copy_from(&linalg::vectorize(p));
                    at += p.len();
                }
                v
            })
            .collect();
        let system = CMatrix::from_columns(&columns);
        let kernel = linalg::nullspace(&system, RANK_TOLERANCE);
        let basis = kernel.iter().map(|x| self.from_coordinates(x)).collect();
        Self::from_orthonormal(self.n, basis)
    }

    /// `{X in self : XB = BX for all B in other}`.
    pub fn commutant_within(&self, other: &Subalgebra) -> Self {
        self.solve(|x| other.basis.iter().map(|b| x * b - b * x).collect())
    }

    /// `Z(self)`.
    pub fn center(&self) -> Self {
        self.commutant_within(self)
    }

    pub fn is_commutative(&self, tol: f64) -> bool {
        self.basis.iter().all(|a| {
            self.basis
                .iter()
                .all(|b| linalg::max_abs(&(a * b - b * a)) <= tol)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn full_algebra_center_is_scalars() {
        let f = Subalgebra::full(3);
        assert_eq!(f.dim(), 9);
        assert!(f.closure_residual() < 1e-12);
        let z = f.center();
        assert_eq!(z.dim(), 1);
        assert!(z.contains(&CMatrix::identity(3, 3), 1e-12));
    }

    #[test]
    fn block_algebra() {
        let f = Subalgebra::block_diagonal(&[2, 1]).unwrap();
        assert_eq!(f.dim(), 5);
        assert_eq!(f.center().dim(), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = f.random_element(&mut rng);
        assert!(f.contains(&x, 1e-12));
        assert!(!f.contains(&CMatrix::from_element(3, 3, ONE), 1e-3));
        assert!(Subalgebra::block_diagonal(&[2, 0]).is_err());
    }

    #[test]
    fn span_of_diagonals() {
        let d1 = CMatrix::from_diagonal(&CVector::from_vec(alloc::vec![ONE, ZERO]));
        let d2 = CMatrix::from_diagonal(&CVector::from_vec(alloc::vec![ONE, ONE]));
        let a = Subalgebra::from_span(2, &[d1.clone(), d2, d1 * num_complex::Complex64::new(0.0, 2.0)], 1e-10).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(a.is_commutative(1e-12));
        assert!(a.closure_residual() < 1e-12);
    }
}
