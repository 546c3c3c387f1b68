//! Spectral analysis of a finite group acting on a matrix algebra:
//! projections `Pi_D`, the `A`-valued scalar product, fixed points,
//! relative commutants, algebraic Hilbert spaces and intertwiners.

pub mod algebra;
pub mod hilbert;
pub mod system;

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

pub use algebra::{Subalgebra, RANK_TOLERANCE};
pub use hilbert::{
    algebraic_hilbert_space, canonical_endomorphism, disjointness_report, intertwiner_space,
    CanonicalEndomorphism, DisjointnessReport,
};
pub use system::{MatrixDynamicalSystem, SYSTEM_TOLERANCE};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_SAMPLES: usize = 100;
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabOptions {
    pub tolerance: f64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for LabOptions {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_TOLERANCE,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
        }
    }
}

pub(crate) fn check_irrep(sys: &MatrixDynamicalSystem, d: usize) -> Result<()> {
    if d >= sys.irrep_count() {
        return Err(Error::UnknownIrrep(d));
    }
    Ok(())
}

fn combine(sys: &MatrixDynamicalSystem, d: usize, orbit: &[CMatrix]) -> CMatrix {
    let table = sys.table();
    let weight = sys.irrep_dim(d) as f64 / orbit.len() as f64;
    let mut out = CMatrix::zeros(sys.n(), sys.n());
    for (g, image) in orbit.iter().enumerate() {
        out += image * (table.character(d, g).conj() * weight);
    }
    out
}

/// `Pi_D(F) = |G|^{-1} sum_g conj(chi_D(g)) alpha_g(F)` with
/// `chi_D = dim(D) tr D`.
pub fn spectral_projection(sys: &MatrixDynamicalSystem, d: usize, f: &CMatrix) -> Result<CMatrix> {
    check_irrep(sys, d)?;
    Ok(combine(sys, d, &sys.orbit(f)))
}

/// `Pi_D(F)` for every irrep, sharing one orbit computation.
pub fn spectral_components(sys: &MatrixDynamicalSystem, f: &CMatrix) -> Vec<CMatrix> {
    let orbit = sys.orbit(f);
    (0..sys.irrep_count()).map(|d| combine(sys, d, &orbit)).collect()
}

/// `<F, G>_A = Pi_iota(F G^*)`.
pub fn a_inner(sys: &MatrixDynamicalSystem, f: &CMatrix, g: &CMatrix) -> CMatrix {
    combine(sys, 0, &sys.orbit(&(f * g.adjoint())))
}

/// `|F|_A = ||<F, F>_A||^{1/2}`.
pub fn a_norm(sys: &MatrixDynamicalSystem, f: &CMatrix) -> f64 {
    libm::sqrt(linalg::operator_norm(&a_inner(sys, f, f)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParsevalResidual {
    /// `||<F,F>_A - sum_D <Pi_D F, Pi_D F>_A||`.
    pub parseval: f64,
    /// `||F - sum_D Pi_D F||`.
    pub reconstruction: f64,
    /// Irreps with `Pi_D F != 0` (entries above `1e-12`).
    pub nonzero_terms: usize,
}

pub fn parseval_check(sys: &MatrixDynamicalSystem, f: &CMatrix) -> ParsevalResidual {
    let parts = spectral_components(sys, f);
    let mut sum = CMatrix::zeros(sys.n(), sys.n());
    let mut total = CMatrix::zeros(sys.n(), sys.n());
    let mut nonzero_terms = 0;
    for p in &parts {
        if linalg::max_abs(p) > 1e-12 {
            nonzero_terms += 1;
        }
        sum += a_inner(sys, p, p);
        total += p;
    }
    ParsevalResidual {
        parseval: linalg::operator_norm(&(a_inner(sys, f, f) - sum)),
        reconstruction: linalg::operator_norm(&(f - total)),
        nonzero_terms,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParsevalReport {
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub max_parseval: f64,
    pub max_reconstruction: f64,
}

impl ParsevalReport {
    pub fn passed(&self) -> bool {
        self.max_parseval < self.tolerance && self.max_reconstruction < self.tolerance
    }
}

/// Parseval and reconstruction over `samples` random elements of `F`.
pub fn parseval_sweep(sys: &MatrixDynamicalSystem, options: &LabOptions) -> ParsevalReport {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut report = ParsevalReport {
        samples: options.samples,
        seed: options.seed,
        tolerance: options.tolerance,
        max_parseval: 0.0,
        max_reconstruction: 0.0,
    };
    for _ in 0..options.samples {
        let f = sys.algebra().random_element(&mut rng);
        let r = parseval_check(sys, &f);
        report.max_parseval = report.max_parseval.max(r.parseval);
        report.max_reconstruction = report.max_reconstruction.max(r.reconstruction);
    }
    report
}

/// Matrix of `Pi_D` in the orthonormal basis of `F`.
pub fn projection_matrix(sys: &MatrixDynamicalSystem, d: usize) -> Result<CMatrix> {
    check_irrep(sys, d)?;
    let f = sys.algebra();
    let columns: Vec<linalg::CVector> = f
        .basis()
        .iter()
        .map(|b| f.coordinates(&combine(sys, d, &sys.orbit(b))))
        .collect();
    Ok(CMatrix::from_columns(&columns))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionReport {
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    /// `max ||Pi_D Pi_D' - delta Pi_D||` over all pairs, as maps on `F`.
    pub orthogonality: f64,
    /// `||sum_D Pi_D - id||` as maps on `F`.
    pub completeness: f64,
    /// `max ||Pi_D(a F b) - a Pi_D(F) b||` for random `a, b` in `A`.
    pub module: f64,
    /// `max ||<Pi_D F, G>_A - <F, Pi_D G>_A||`.
    pub symmetry: f64,
}

impl ProjectionReport {
    pub fn passed(&self) -> bool {
        [self.orthogonality, self.completeness, self.module, self.symmetry]
            .iter()
            .all(|&r| r < self.tolerance)
    }
}

pub fn projection_report(sys: &MatrixDynamicalSystem, options: &LabOptions) -> ProjectionReport {
    let r = sys.irrep_count();
    let dim = sys.algebra().dim();
    let maps: Vec<CMatrix> = (0..r)
        .map(|d| projection_matrix(sys, d).expect("irrep in range"))
        .collect();
    let mut orthogonality = 0.0_f64;
    let mut sum = CMatrix::zeros(dim, dim);
    for (d, p) in maps.iter().enumerate() {
        sum += p;
        for (e, q) in maps.iter().enumerate() {
            let target = if d == e { p.clone() } else { CMatrix::zeros(dim, dim) };
            orthogonality = orthogonality.max(linalg::operator_norm(&(p * q - target)));
        }
    }
    let completeness = linalg::operator_norm(&(sum - CMatrix::identity(dim, dim)));
    let fixed = fixed_point_algebra(sys);
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let (mut module, mut symmetry) = (0.0_f64, 0.0_f64);
    for _ in 0..options.samples {
        let f = sys.algebra().random_element(&mut rng);
        let g = sys.algebra().random_element(&mut rng);
        let a = fixed.random_element(&mut rng);
        let b = fixed.random_element(&mut rng);
        let fp = spectral_components(sys, &f);
        let gp = spectral_components(sys, &g);
        let afb = spectral_components(sys, &(&a * &f * &b));
        for d in 0..r {
            module = module.max(linalg::operator_norm(&(&afb[d] - &a * &fp[d] * &b)));
            let lhs = a_inner(sys, &fp[d], &g);
            let rhs = a_inner(sys, &f, &gp[d]);
            symmetry = symmetry.max(linalg::operator_norm(&(lhs - rhs)));
        }
    }
    ProjectionReport {
        samples: options.samples,
        seed: options.seed,
        tolerance: options.tolerance,
        orthogonality,
        completeness,
        module,
        symmetry,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormBoundReport {
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    /// Per irrep, `max ||Pi_D F|| / ||F||` and the bound `d^{3/2}`.
    pub operator_ratios: Vec<(f64, f64)>,
    /// Per irrep, `max |Pi_D F|_A / |F|_A`.
    pub a_ratios: Vec<f64>,
    pub violations: usize,
}

impl NormBoundReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Samples `||Pi_D F|| <= d^{3/2} ||F||` and `|Pi_D F|_A <= |F|_A`.
pub fn norm_bound_check(sys: &MatrixDynamicalSystem, options: &LabOptions) -> NormBoundReport {
    let r = sys.irrep_count();
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut report = NormBoundReport {
        samples: options.samples,
        seed: options.seed,
        tolerance: options.tolerance,
        operator_ratios: (0..r)
            .map(|d| (0.0, libm::pow(sys.irrep_dim(d) as f64, 1.5)))
            .collect(),
        a_ratios: alloc::vec![0.0; r],
        violations: 0,
    };
    for _ in 0..options.samples {
        let f = sys.algebra().random_element(&mut rng);
        let norm = linalg::operator_norm(&f);
        let a_norm_f = a_norm(sys, &f);
        for (d, p) in spectral_components(sys, &f).iter().enumerate() {
            let pn = linalg::operator_norm(p);
            let pa = a_norm(sys, p);
            let bound = report.operator_ratios[d].1;
            if pn > bound * norm + options.tolerance {
                report.violations += 1;
            }
            if pa > a_norm_f + options.tolerance {
                report.violations += 1;
            }
            if norm > 0.0 {
                report.operator_ratios[d].0 = report.operator_ratios[d].0.max(pn / norm);
            }
            if a_norm_f > 0.0 {
                report.a_ratios[d] = report.a_ratios[d].max(pa / a_norm_f);
            }
        }
    }
    report
}

/// `A = F^alpha`, solved as `{X in F : alpha_g(X) = X for all g}`.
pub fn fixed_point_algebra(sys: &MatrixDynamicalSystem) -> Subalgebra {
    sys.algebra().solve(|x| {
        (0..sys.group().order())
            .map(|g| sys.act(g, x) - x)
            .collect()
    })
}

/// `A' n F`.
pub fn relative_commutant(sys: &MatrixDynamicalSystem) -> Subalgebra {
    sys.algebra().commutant_within(&fixed_point_algebra(sys))
}

/// `Z(A)`.
pub fn algebra_center(a: &Subalgebra) -> Subalgebra {
    a.center()
}

/// Spectral subspace `Pi_D F`.
pub fn spectral_subspace(sys: &MatrixDynamicalSystem, d: usize) -> Result<Subalgebra> {
    check_irrep(sys, d)?;
    let images: Vec<CMatrix> = sys
        .algebra()
        .basis()
        .iter()
        .map(|b| combine(sys, d, &sys.orbit(b)))
        .collect();
    Subalgebra::from_span(sys.n(), &images, RANK_TOLERANCE)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinimalityReport {
    pub dim_f: usize,
    pub dim_a: usize,
    pub dim_relative_commutant: usize,
    pub dim_center: usize,
}

impl MinimalityReport {
    /// `A' n F = Z(A)`; the center is always contained in the commutant.
    pub fn minimal(&self) -> bool {
        self.dim_relative_commutant == self.dim_center
    }
}

pub fn minimality(sys: &MatrixDynamicalSystem) -> MinimalityReport {
    let a = fixed_point_algebra(sys);
    MinimalityReport {
        dim_f: sys.algebra().dim(),
        dim_a: a.dim(),
        dim_relative_commutant: sys.algebra().commutant_within(&a).dim(),
        dim_center: a.center().dim(),
    }
}

/// Largest deviation of `Pi_D F` from `alpha_g`-covariance, for tests.
pub fn covariance_residual(sys: &MatrixDynamicalSystem, d: usize, phi: &CMatrix) -> f64 {
    (0..sys.group().order())
        .map(|g| {
            let chi: Complex64 = sys.table().character(d, g);
            linalg::max_abs(&(sys.act(g, phi) - phi * chi))
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric};
    use crate::linalg::ONE;

    fn unit(n: usize, r: usize, c: usize) -> CMatrix {
        let mut m = CMatrix::zeros(n, n);
        m[(r, c)] = ONE;
        m
    }

    #[test]
    fn sign_projection_of_off_diagonal() {
        let sys = MatrixDynamicalSystem::sign_diagonal().unwrap();
        let e12 = unit(2, 0, 1);
        assert!(linalg::max_abs(&(spectral_projection(&sys, 1, &e12).unwrap() - &e12)) < 1e-15);
        assert!(linalg::max_abs(&spectral_projection(&sys, 0, &e12).unwrap()) < 1e-15);
        assert_eq!(spectral_projection(&sys, 2, &e12), Err(Error::UnknownIrrep(2)));
    }

    #[test]
    fn identity_has_one_term() {
        let sys = MatrixDynamicalSystem::regular(symmetric(3).unwrap()).unwrap();
        let r = parseval_check(&sys, &CMatrix::identity(6, 6));
        assert_eq!(r.nonzero_terms, 1);
        assert!(r.parseval < 1e-12 && r.reconstruction < 1e-12);
    }

    #[test]
    fn invariant_elements_project_to_zero_elsewhere() {
        let sys = MatrixDynamicalSystem::regular(cyclic(4)).unwrap();
        let a = fixed_point_algebra(&sys);
        assert_eq!(a.dim(), 4);
        let x = a.basis()[1].clone();
        for d in 1..4 {
            assert!(linalg::max_abs(&spectral_projection(&sys, d, &x).unwrap()) < 1e-12);
        }
    }

    #[test]
    fn s3_regular_reports() {
        let sys = MatrixDynamicalSystem::regular(symmetric(3).unwrap()).unwrap();
        let opts = LabOptions { samples: 10, ..LabOptions::default() };
        assert!(parseval_sweep(&sys, &opts).passed());
        assert!(projection_report(&sys, &opts).passed());
        let bounds = norm_bound_check(&sys, &opts);
        assert!(bounds.passed());
        assert!((bounds.operator_ratios[2].1 - libm::pow(2.0, 1.5)).abs() < 1e-12);
    }

    #[test]
    fn minimality_examples() {
        let swap = minimality(&MatrixDynamicalSystem::swap_blocks(2).unwrap());
        assert_eq!((swap.dim_a, swap.dim_relative_commutant, swap.dim_center), (4, 2, 1));
        assert!(!swap.minimal());
        let sign = minimality(&MatrixDynamicalSystem::sign_diagonal().unwrap());
        assert_eq!((sign.dim_a, sign.dim_relative_commutant, sign.dim_center), (2, 2, 2));
        assert!(sign.minimal());
        let trivial = minimality(&MatrixDynamicalSystem::trivial_action(cyclic(2), 3).unwrap());
        assert_eq!((trivial.dim_a, trivial.dim_relative_commutant, trivial.dim_center), (9, 1, 1));
        // the swap system's diagonal algebra contains I + (-I) in Pi_sign F
        let sys = MatrixDynamicalSystem::swap_blocks(2).unwrap();
        let mut u = CMatrix::identity(4, 4);
        u[(2, 2)] = -ONE;
        u[(3, 3)] = -ONE;
        assert!(spectral_subspace(&sys, 1).unwrap().contains(&u, 1e-12));
    }
}
