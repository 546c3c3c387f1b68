//! Fusion rings of finite groups: tensor-product multiplicities computed
//! from characters, set-level products on the dual, and dimension checks.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chartable::CharacterTable;
use crate::error::{Error, Result};

/// Fusion coefficients farther than this from an integer are rejected.
pub const FUSION_TOLERANCE: f64 = 1e-6;

/// Rank up to which ring associativity is checked on every quadruple.
pub const EXHAUSTIVE_ASSOCIATIVITY_RANK: usize = 12;

pub type IrrepSet = BTreeSet<usize>;

/// Structure constants `N[i][j][k]` (multiplicity of `k` in `i x j`) with
/// the conjugation involution and dimensions. Irrep 0 is the unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionRing {
    rank: usize,
    coeffs: Vec<u32>,
    conj: Vec<usize>,
    dims: Vec<u64>,
    supports: Vec<Vec<usize>>,
}

impl FusionRing {
    /// Assembles a ring from explicit data. `coeffs` is indexed
    /// `(i * rank + j) * rank + k`.
    pub fn from_parts(coeffs: Vec<u32>, conj: Vec<usize>, dims: Vec<u64>) -> Result<Self> {
        let rank = dims.len();
        if coeffs.len() != rank * rank * rank || conj.len() != rank || rank == 0 {
            return Err(Error::InvalidArgument(
                "fusion data has inconsistent sizes".to_string(),
            ));
        }
        if conj.iter().any(|&c| c >= rank) {
            return Err(Error::InvalidArgument("conjugation out of range".to_string()));
        }
        let supports = (0..rank * rank)
            .map(|ij| (0..rank).filter(|&k| coeffs[ij * rank + k] > 0).collect())
            .collect();
        Ok(Self {
            rank,
            coeffs,
            conj,
            dims,
            supports,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn n(&self, i: usize, j: usize, k: usize) -> u32 {
        self.coeffs[(i * self.rank + j) * self.rank + k]
    }

    pub fn conj(&self, i: usize) -> usize {
        self.conj[i]
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn dim(&self, i: usize) -> u64 {
        self.dims[i]
    }

    /// `{k : N[i][j][k] > 0}`, ascending.
    pub fn support(&self, i: usize, j: usize) -> &[usize] {
        &self.supports[i * self.rank + j]
    }

    /// Multiplicity vector of `i x j`.
    pub fn product(&self, i: usize, j: usize) -> &[u32] {
        let start = (i * self.rank + j) * self.rank;
        &self.coeffs[start..start + self.rank]
    }

    /// Checks every ring axiom; returns a list of violations (empty when all hold).
    pub fn axiom_violations(&self, seed: u64) -> Vec<String> {
        let r = self.rank;
        let mut out = Vec::new();
        for i in 0..r {
            if self.conj(self.conj(i)) != i {
                out.push(alloc::format!("conjugation is not an involution at {i}"));
            }
            if self.n(0, i, i) != 1 || (0..r).any(|k| k != i && self.n(0, i, k) != 0) {
                out.push(alloc::format!("unit fails on {i}"));
            }
            for j in 0..r {
                let unit = self.n(i, j, 0);
                let expected = u32::from(j == self.conj(i));
                if unit != expected {
                    out.push(alloc::format!("N[{i}][{j}][1] = {unit}, expected {expected}"));
                }
                let dim: u64 = (0..r).map(|k| u64::from(self.n(i, j, k)) * self.dims[k]).sum();
                if dim != self.dims[i] * self.dims[j] {
                    out.push(alloc::format!("dimension rule fails on ({i}, {j})"));
                }
                for k in 0..r {
                    if self.n(i, j, k) != self.n(j, i, k) {
                        out.push(alloc::format!("commutativity fails on ({i}, {j}, {k})"));
                    }
                    if self.n(i, j, k) != self.n(self.conj(i), k, j) {
                        out.push(alloc::format!("Frobenius reciprocity fails on ({i}, {j}, {k})"));
                    }
                }
            }
        }
        let assoc = |i: usize, j: usize, k: usize, l: usize| {
            let lhs: u64 = (0..r)
                .map(|m| u64::from(self.n(i, j, m)) * u64::from(self.n(m, k, l)))
                .sum();
            let rhs: u64 = (0..r)
                .map(|m| u64::from(self.n(j, k, m)) * u64::from(self.n(i, m, l)))
                .sum();
            lhs == rhs
        };
        if r <= EXHAUSTIVE_ASSOCIATIVITY_RANK {
            for i in 0..r {
                for j in 0..r {
                    for k in 0..r {
                        for l in 0..r {
                            if !assoc(i, j, k, l) {
                                out.push(alloc::format!("associativity fails on ({i},{j},{k},{l})"));
                            }
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..20_000 {
                let q = [0; 4].map(|_| rng.random_range(0..r));
                if !assoc(q[0], q[1], q[2], q[3]) {
                    out.push(alloc::format!("associativity fails on {q:?}"));
                }
            }
        }
        out
    }
}

/// Fusion ring with the largest rounding residual encountered.
#[derive(Debug, Clone)]
pub struct ComputedFusion {
    pub ring: FusionRing,
    pub max_residual: f64,
}

/// `N_ij^k = |G|^{-1} sum_classes |C| chi_i chi_j conj(chi_k)`, rounded.
pub fn fusion_coefficients(table: &CharacterTable) -> Result<FusionRing> {
    compute_fusion(table, FUSION_TOLERANCE).map(|c| c.ring)
}

pub fn compute_fusion(table: &CharacterTable, tol: f64) -> Result<ComputedFusion> {
    let r = table.rank();
    let group = table.group();
    let sizes = group.class_sizes();
    let order = group.order() as f64;
    let chi: Vec<&[Complex64]> = table.irreps().iter().map(|x| x.values.as_slice()).collect();
    let conj_chi: Vec<Vec<Complex64>> = chi
        .iter()
        .map(|v| v.iter().map(Complex64::conj).collect())
        .collect();
    let mut coeffs = alloc::vec![0u32; r * r * r];
    let mut worst = 0.0_f64;
    let mut weighted = alloc::vec![Complex64::new(0.0, 0.0); r];
    for i in 0..r {
        for j in i..r {
            for c in 0..r {
                weighted[c] = chi[i][c] * chi[j][c] * (sizes[c] as f64 / order);
            }
            for k in 0..r {
                let s: Complex64 = weighted.iter().zip(&conj_chi[k]).map(|(a, b)| a * b).sum();
                let rounded = libm::round(s.re);
                let residual = (s - Complex64::new(rounded, 0.0)).norm();
                worst = worst.max(residual);
                if residual > tol || rounded < 0.0 {
                    return Err(Error::NumericalResidual {
                        context: alloc::format!("fusion coefficient N[{i}][{j}][{k}]"),
                        residual,
                        tolerance: tol,
                    });
                }
                coeffs[(i * r + j) * r + k] = rounded as u32;
                coeffs[(j * r + i) * r + k] = rounded as u32;
            }
        }
    }
    let conj = (0..r).map(|i| table.conjugate(i)).collect();
    let dims = table.dims().into_iter().map(|d| d as u64).collect();
    Ok(ComputedFusion {
        ring: FusionRing::from_parts(coeffs, conj, dims)?,
        max_residual: worst,
    })
}

/// `S1 x S2`: union of the supports of all pairwise products.
pub fn product_support(s1: &IrrepSet, s2: &IrrepSet, ring: &FusionRing) -> IrrepSet {
    let mut out = IrrepSet::new();
    for &i in s1 {
        for &j in s2 {
            out.extend(ring.support(i, j).iter().copied());
        }
    }
    out
}

/// Dimension of a composite given by multiplicities `m(rho_j, lambda)`.
pub fn composite_dimension(ring: &FusionRing, multiplicities: &[u64]) -> u64 {
    multiplicities
        .iter()
        .zip(ring.dims())
        .map(|(m, d)| m * d)
        .sum()
}

/// Multiplicities of the tensor product of two composites.
pub fn compose_multiplicities(ring: &FusionRing, a: &[u64], b: &[u64]) -> Vec<u64> {
    let r = ring.rank();
    let mut out = alloc::vec![0u64; r];
    for (i, &ma) in a.iter().enumerate().filter(|(_, m)| **m > 0) {
        for (j, &mb) in b.iter().enumerate().filter(|(_, m)| **m > 0) {
            for (k, &n) in ring.product(i, j).iter().enumerate() {
                out[k] += ma * mb * u64::from(n);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DimensionReport {
    pub checks: usize,
    pub violations: Vec<String>,
}

impl DimensionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `d(1) = 1`, `d(conj D) = d(D)`, `sum_k N_ij^k d_k = d_i d_j`, and
/// additivity plus multiplicativity of `d` on `samples` random composites.
pub fn dimension_checks(ring: &FusionRing, samples: usize, seed: u64) -> DimensionReport {
    let r = ring.rank();
    let mut report = DimensionReport::default();
    report.checks += 1;
    if ring.dim(0) != 1 {
        report.violations.push(alloc::format!("d(1) = {}", ring.dim(0)));
    }
    for i in 0..r {
        report.checks += 1;
        if ring.dim(ring.conj(i)) != ring.dim(i) {
            report.violations.push(alloc::format!("d(conj {i}) != d({i})"));
        }
        for j in 0..r {
            report.checks += 1;
            let lhs = composite_dimension(ring, &ring.product(i, j).iter().map(|&n| u64::from(n)).collect::<Vec<_>>());
            if lhs != ring.dim(i) * ring.dim(j) {
                report
                    .violations
                    .push(alloc::format!("d({i} x {j}) = {lhs} != {}", ring.dim(i) * ring.dim(j)));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_composite = |rng: &mut ChaCha8Rng| -> Vec<u64> {
        let mut m: Vec<u64> = (0..r)
            .map(|_| if rng.random_bool(0.4) { rng.random_range(0..4) } else { 0 })
            .collect();
        if m.iter().all(|&x| x == 0) {
            m[rng.random_range(0..r)] = 1;
        }
        m
    };
    for _ in 0..samples {
        let a = random_composite(&mut rng);
        let b = random_composite(&mut rng);
        let (da, db) = (composite_dimension(ring, &a), composite_dimension(ring, &b));
        let sum: Vec<u64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        report.checks += 2;
        if composite_dimension(ring, &sum) != da + db {
            report.violations.push("additivity fails".to_string());
        }
        let prod = compose_multiplicities(ring, &a, &b);
        if composite_dimension(ring, &prod) != da * db {
            report
                .violations
                .push(alloc::format!("multiplicativity fails: {a:?} x {b:?}"));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::character_table;
    use crate::group::{dihedral, symmetric};

    fn set(items: &[usize]) -> IrrepSet {
        items.iter().copied().collect()
    }

    #[test]
    fn s3_sigma_squared() {
        let ring = fusion_coefficients(&character_table(&symmetric(3).unwrap()).unwrap()).unwrap();
        // irreps: 0 trivial, 1 sign, 2 sigma
        assert_eq!(ring.product(2, 2), &[1, 1, 1]);
        assert_eq!(product_support(&set(&[2]), &set(&[2]), &ring), set(&[0, 1, 2]));
        assert_eq!(product_support(&set(&[0]), &set(&[1, 2]), &ring), set(&[1, 2]));
        let sigma_sq: Vec<u64> = ring.product(2, 2).iter().map(|&n| u64::from(n)).collect();
        assert_eq!(composite_dimension(&ring, &sigma_sq), 4);
    }

    #[test]
    fn d8_two_dim_square_is_four_linear_characters() {
        let ring = fusion_coefficients(&character_table(&dihedral(4)).unwrap()).unwrap();
        assert_eq!(ring.product(4, 4), &[1, 1, 1, 1, 0]);
        assert!(ring.axiom_violations(0).is_empty());
        assert!(dimension_checks(&ring, 50, 1).passed());
    }

    #[test]
    fn unit_and_conjugate_pairs() {
        let ring = fusion_coefficients(&character_table(&crate::group::cyclic(5)).unwrap()).unwrap();
        for d in 0..ring.rank() {
            assert_eq!(ring.support(0, d), &[d]);
            assert!(ring.support(d, ring.conj(d)).contains(&0));
        }
    }

    #[test]
    fn broken_ring_reports_violations() {
        // Z2 data with a wrong dimension rule
        let coeffs = alloc::vec![1, 0, 0, 1, 0, 1, 1, 1];
        let ring = FusionRing::from_parts(coeffs, alloc::vec![0, 1], alloc::vec![1, 1]).unwrap();
        assert!(!ring.axiom_violations(0).is_empty());
        assert!(FusionRing::from_parts(alloc::vec![1], alloc::vec![0, 1], alloc::vec![1, 1]).is_err());
    }
}
