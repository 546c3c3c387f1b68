//! Algebraic Hilbert spaces for abelian actions, their canonical
//! endomorphisms of `A`, and intertwiner spaces.

use alloc::string::ToString;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lab::algebra::Subalgebra;
use crate::lab::system::{MatrixDynamicalSystem, SYSTEM_TOLERANCE};
use crate::lab::{check_irrep, fixed_point_algebra, minimality, spectral_projection, spectral_subspace, LabOptions, MinimalityReport};
use crate::linalg::{self, CMatrix, CVector, ONE};

const RANDOM_ATTEMPTS: usize = 8;

/// A unitary `Phi` in `Pi_D F`, so `alpha_g(Phi) = chi_D(g) Phi`, or `None`
/// when the spectral subspace contains no unitary.
///
/// Nonabelian groups are refused: an `H_D` of dimension `d > 1` with
/// support 1 needs isometries with orthogonal ranges summing to 1, which
/// are unitaries in finite dimension.
pub fn algebraic_hilbert_space(
    sys: &MatrixDynamicalSystem,
    d: usize,
    options: &LabOptions,
) -> Result<Option<CMatrix>> {
    if !sys.group().is_abelian() {
        return Err(Error::NonAbelianGroup);
    }
    check_irrep(sys, d)?;
    let n = sys.n();
    if d == 0 {
        return Ok(Some(CMatrix::identity(n, n)));
    }
    let space = spectral_subspace(sys, d)?;
    if space.dim() == 0 {
        return Ok(None);
    }
    // If Pi_D F = A U for a unitary U, the polar part of any invertible
    // element is a unitary of the same form.
    let seed_candidate = {
        let mut m = CMatrix::from_element(n, n, ONE);
        for i in 0..n {
            m[(i, i)] += ONE * (i as f64);
        }
        spectral_projection(sys, d, &m)?
    };
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let candidates = core::iter::once(seed_candidate)
        .chain((0..RANDOM_ATTEMPTS).map(|_| space.random_element(&mut rng)));
    for y in candidates {
        let svd = y.svd(true, true);
        let sv = &svd.singular_values;
        let largest = sv.iter().copied().fold(0.0, f64::max);
        let smallest = sv.iter().copied().fold(f64::INFINITY, f64::min);
        if largest == 0.0 || smallest < 1e-6 * largest {
            continue;
        }
        let w = svd.u.expect("requested U") * svd.v_t.expect("requested V^T");
        return Ok(space.contains(&w, options.tolerance).then_some(w));
    }
    Ok(None)
}

/// `rho(A) = sum_j Phi_j A Phi_j^*`.
#[derive(Debug, Clone)]
pub struct CanonicalEndomorphism {
    isometries: Vec<CMatrix>,
}

impl CanonicalEndomorphism {
    pub fn identity(n: usize) -> Self {
        Self {
            isometries: alloc::vec![CMatrix::identity(n, n)],
        }
    }

    pub fn isometries(&self) -> &[CMatrix] {
        &self.isometries
    }

    pub fn apply(&self, x: &CMatrix) -> CMatrix {
        let n = x.nrows();
        let mut out = CMatrix::zeros(n, n);
        for phi in &self.isometries {
            out += phi * x * phi.adjoint();
        }
        out
    }
}

/// `rho_H = Ad Phi` restricted to `a`, checked to map `a` into itself.
pub fn canonical_endomorphism(a: &Subalgebra, phi: CMatrix) -> Result<CanonicalEndomorphism> {
    let n = a.n();
    if phi.nrows() != n || phi.ncols() != n {
        return Err(Error::InvalidArgument(alloc::format!("Phi must be {n}x{n}")));
    }
    if linalg::max_abs(&(&phi * phi.adjoint() - CMatrix::identity(n, n))) > SYSTEM_TOLERANCE {
        return Err(Error::NotUnitary("Phi".to_string()));
    }
    let rho = CanonicalEndomorphism {
        isometries: alloc::vec![phi],
    };
    for b in a.basis() {
        let residual = a.distance(&rho.apply(b));
        if residual > SYSTEM_TOLERANCE {
            return Err(Error::NotInvariant(alloc::format!(
                "rho(A) leaves A by {residual:e}"
            )));
        }
    }
    Ok(rho)
}

/// Orthonormal basis of `(rho, sigma) = {X in A : X rho(B) = sigma(B) X}`.
pub fn intertwiner_space(
    a: &Subalgebra,
    rho: &CanonicalEndomorphism,
    sigma: &CanonicalEndomorphism,
) -> Vec<CMatrix> {
    let images: Vec<(CMatrix, CMatrix)> = a
        .basis()
        .iter()
        .map(|b| (rho.apply(b), sigma.apply(b)))
        .collect();
    a.solve(|x| images.iter().map(|(r, s)| x * r - s * x).collect())
        .basis()
        .to_vec()
}

#[derive(Debug, Clone)]
pub struct DisjointnessReport {
    /// `Phi_D` per character, `None` where `Pi_D F` holds no unitary.
    pub hilbert_spaces: Vec<Option<CMatrix>>,
    /// `(D, D', dim (rho_D, rho_D'))` for `D != D'` with both spaces present.
    pub pairs: Vec<(usize, usize, usize)>,
    pub minimality: MinimalityReport,
}

impl DisjointnessReport {
    /// Every `H_D` exists, so the system is a Hilbert system for `A`.
    pub fn applicable(&self) -> bool {
        self.hilbert_spaces.iter().all(Option::is_some)
    }

    pub fn disjoint(&self) -> bool {
        self.pairs.iter().all(|&(_, _, dim)| dim == 0)
    }

    pub fn minimal(&self) -> bool {
        self.minimality.minimal()
    }

    /// Minimality agrees with pairwise disjointness whenever applicable.
    pub fn biconditional_holds(&self) -> bool {
        !self.applicable() || self.minimal() == self.disjoint()
    }

    /// A non-disjoint pair, if any.
    pub fn witness(&self) -> Option<(usize, usize)> {
        self.pairs
            .iter()
            .find(|&&(_, _, dim)| dim > 0)
            .map(|&(d, e, _)| (d, e))
    }
}

pub fn disjointness_report(sys: &MatrixDynamicalSystem, options: &LabOptions) -> Result<DisjointnessReport> {
    let a = fixed_point_algebra(sys);
    let hilbert_spaces = (0..sys.irrep_count())
        .map(|d| algebraic_hilbert_space(sys, d, options))
        .collect::<Result<Vec<_>>>()?;
    let endos: Vec<Option<CanonicalEndomorphism>> = hilbert_spaces
        .iter()
        .map(|phi| {
            phi.as_ref()
                .map(|p| canonical_endomorphism(&a, p.clone()))
                .transpose()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut pairs = Vec::new();
    for (d, rho) in endos.iter().enumerate() {
        for (e, sigma) in endos.iter().enumerate() {
            if let (true, Some(rho), Some(sigma)) = (d != e, rho, sigma) {
                pairs.push((d, e, intertwiner_space(&a, rho, sigma).len()));
            }
        }
    }
    Ok(DisjointnessReport {
        hilbert_spaces,
        pairs,
        minimality: minimality(sys),
    })
}

/// `diag(v)`.
pub fn diagonal(values: &[num_complex::Complex64]) -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_column_slice(values))
}
