//! Complex character tables by the Burnside-Dixon class-matrix method,
//! central characters, and the character group of the center.
//!
//! The class sums `C_j` of the group algebra multiply as
//! `C_j C_k = sum_l a_{jkl} C_l`. Every irreducible character `chi` gives an
//! algebra homomorphism `omega(C_l) = |C_l| chi(g_l) / chi(1)` on the class
//! algebra, and the vectors `(omega(C_l))_l` are the common right
//! eigenvectors of the matrices `(M_j)_{kl} = a_{jkl}`.
//!
//! Conjugating by `diag(|C_l|^{-1/2})` turns each `M_j` into a normal matrix,
//! so a random combination `sum a_j (N_j + N_j^T) + i b_j (N_j - N_j^T)` is
//! Hermitian with the same eigenvectors. One Hermitian eigensolve then
//! recovers every character; the combination is redrawn when two
//! eigenvalues come too close to separate.

pub mod analytic;

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{hermitian_eigen, CMatrix};

/// Tolerance for modulus-one and equality tests on exact character values.
pub const UNIT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DixonOptions {
    pub seed: u64,
    /// Number of random combinations tried before giving up.
    pub max_draws: usize,
    /// Bound on orthogonality residuals and on the distance of dimensions
    /// from integers.
    pub tolerance: f64,
}

impl Default for DixonOptions {
    fn default() -> Self {
        Self {
            seed: 0xD1C0_5EED,
            max_draws: 32,
            tolerance: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Irrep {
    pub dim: usize,
    /// Character value on each conjugacy class, in the group's class order.
    pub values: Vec<Complex64>,
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: FiniteGroup,
    irreps: Vec<Irrep>,
    conj: Vec<usize>,
    residual: f64,
}

/// Character table with default options.
pub fn character_table(group: &FiniteGroup) -> Result<CharacterTable> {
    CharacterTable::compute(group.clone(), &DixonOptions::default())
}

impl CharacterTable {
    /// Irreps come out in canonical order: ascending dimension, then
    /// descending lexicographic order of the class values rounded to six
    /// decimals (real part before imaginary part). The trivial character is
    /// therefore irrep 0.
    pub fn compute(group: FiniteGroup, options: &DixonOptions) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        let mut last_residual = None;
        for _ in 0..options.max_draws {
            match dixon_attempt(&group, &mut rng, options.tolerance) {
                Attempt::Degenerate => {}
                Attempt::Residual(r) => last_residual = Some(r),
                Attempt::Done(mut irreps, residual) => {
                    irreps.sort_by(canonical_order);
                    let conj = conjugation(&irreps)?;
                    return Ok(Self {
                        group,
                        irreps,
                        conj,
                        residual,
                    });
                }
            }
        }
        match last_residual {
            Some(residual) => Err(Error::NumericalResidual {
                context: "character orthogonality".to_string(),
                residual,
                tolerance: options.tolerance,
            }),
            None => Err(Error::DegenerateSpectrum {
                attempts: options.max_draws,
            }),
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn rank(&self) -> usize {
        self.irreps.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.irreps.iter().map(|r| r.dim).collect()
    }

    pub fn value(&self, irrep: usize, class: usize) -> Complex64 {
        self.irreps[irrep].values[class]
    }

    /// `chi_irrep(element)`.
    pub fn character(&self, irrep: usize, element: usize) -> Complex64 {
        self.irreps[irrep].values[self.group.class_of(element)]
    }

    /// Index of the complex-conjugate irrep.
    pub fn conjugate(&self, irrep: usize) -> usize {
        self.conj[irrep]
    }

    /// Worst row or column orthogonality residual seen when the table was accepted.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// `max |sum_k |C_k| chi_i(k) conj(chi_j(k)) / |G| - delta_ij|`.
    pub fn row_orthogonality_residual(&self) -> f64 {
        row_residual(&self.group, &self.irreps)
    }

    /// `max |sum_i chi_i(k) conj(chi_i(l)) - delta_kl |G| / |C_k||` scaled by `1/|G|`.
    pub fn column_orthogonality_residual(&self) -> f64 {
        column_residual(&self.group, &self.irreps)
    }

    /// The scalar by which the central element `c` acts in irrep `d`:
    /// `chi_d(c) / chi_d(e)`.
    pub fn central_character(&self, irrep: usize, c: usize) -> Result<Complex64> {
        if irrep >= self.rank() {
            return Err(Error::UnknownIrrep(irrep));
        }
        if c >= self.group.order() || !self.group.is_central(c) {
            return Err(Error::NotCentral(c));
        }
        let r = &self.irreps[irrep];
        Ok(self.character(irrep, c) / r.dim as f64)
    }

    /// `(Upsilon_d(c))_c` over the sorted center.
    pub fn central_character_vector(&self, irrep: usize) -> Result<Vec<Complex64>> {
        self.group
            .center()
            .into_iter()
            .map(|c| self.central_character(irrep, c))
            .collect()
    }

    /// Irrep whose class values match `values` within `tol`.
    pub fn find(&self, values: &[Complex64], tol: f64) -> Option<usize> {
        self.irreps.iter().position(|r| {
            r.values.len() == values.len()
                && r.values.iter().zip(values).all(|(a, b)| (a - b).norm() <= tol)
        })
    }
}

enum Attempt {
    Degenerate,
    Residual(f64),
    Done(Vec<Irrep>, f64),
}

fn dixon_attempt(group: &FiniteGroup, rng: &mut ChaCha8Rng, tol: f64) -> Attempt {
    let r = group.class_count();
    let sizes = group.class_sizes();
    let real: Vec<f64> = (0..r).map(|_| rng.random_range(-1.0..1.0)).collect();
    let imag: Vec<f64> = (0..r).map(|_| rng.random_range(-1.0..1.0)).collect();
    let na = normalized_class_combination(group, &real);
    let nb = normalized_class_combination(group, &imag);
    let h = CMatrix::from_fn(r, r, |k, l| {
        Complex64::new(na[(k, l)] + na[(l, k)], nb[(k, l)] - nb[(l, k)])
    });
    let (values, vectors) = hermitian_eigen(h);
    let spread = values
        .iter()
        .fold(1.0_f64, |acc, v| acc.max(v.abs()));
    if values.windows(2).any(|w| w[1] - w[0] < 1e-7 * spread) {
        return Attempt::Degenerate;
    }
    let id_class = group.class_of(group.identity());
    let order = group.order() as f64;
    let mut irreps = Vec::with_capacity(r);
    for col in 0..r {
        let omega: Vec<Complex64> = (0..r)
            .map(|l| vectors[(l, col)] * libm::sqrt(sizes[l] as f64))
            .collect();
        let pivot = omega[id_class];
        if pivot.norm() < 1e-12 {
            return Attempt::Degenerate;
        }
        let omega: Vec<Complex64> = omega.iter().map(|w| w / pivot).collect();
        let weight: f64 = omega
            .iter()
            .zip(&sizes)
            .map(|(w, &s)| w.norm_sqr() / s as f64)
            .sum();
        let dim = libm::sqrt(order / weight);
        let rounded = libm::round(dim);
        if (dim - rounded).abs() > tol || rounded < 1.0 {
            return Attempt::Residual((dim - rounded).abs());
        }
        let values = omega
            .iter()
            .zip(&sizes)
            .map(|(w, &s)| w * (rounded / s as f64))
            .collect();
        irreps.push(Irrep {
            dim: rounded as usize,
            values,
        });
    }
    let dim_sum: usize = irreps.iter().map(|i| i.dim * i.dim).sum();
    if dim_sum != group.order() {
        return Attempt::Residual((dim_sum as f64 - order).abs());
    }
    let residual = row_residual(group, &irreps).max(column_residual(group, &irreps));
    if residual > tol {
        return Attempt::Residual(residual);
    }
    Attempt::Done(irreps, residual)
}

/// `D M D^{-1}` with `M = sum_j c_j M_j` and `D = diag(|C_l|^{-1/2})`.
fn normalized_class_combination(group: &FiniteGroup, coeffs: &[f64]) -> DMatrix<f64> {
    let r = group.class_count();
    let sizes = group.class_sizes();
    let mut m = DMatrix::<f64>::zeros(r, r);
    for (l, class) in group.classes().iter().enumerate() {
        let rep = class[0];
        for x in 0..group.order() {
            let j = group.class_of(x);
            let k = group.class_of(group.mul(group.inverse(x), rep));
            m[(k, l)] += coeffs[j];
        }
    }
    for k in 0..r {
        for l in 0..r {
            m[(k, l)] *= libm::sqrt(sizes[l] as f64 / sizes[k] as f64);
        }
    }
    m
}

fn row_residual(group: &FiniteGroup, irreps: &[Irrep]) -> f64 {
    let sizes = group.class_sizes();
    let order = group.order() as f64;
    let mut worst = 0.0_f64;
    for (i, a) in irreps.iter().enumerate() {
        for (j, b) in irreps.iter().enumerate() {
            let s: Complex64 = (0..sizes.len())
                .map(|k| a.values[k] * b.values[k].conj() * sizes[k] as f64)
                .sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((s / order - target).norm());
        }
    }
    worst
}

fn column_residual(group: &FiniteGroup, irreps: &[Irrep]) -> f64 {
    let sizes = group.class_sizes();
    let order = group.order() as f64;
    let r = sizes.len();
    let mut worst = 0.0_f64;
    for k in 0..r {
        for l in 0..r {
            let s: Complex64 = irreps.iter().map(|x| x.values[k] * x.values[l].conj()).sum();
            let target = if k == l { order / sizes[k] as f64 } else { 0.0 };
            worst = worst.max((s - target).norm() / order);
        }
    }
    worst
}

fn rounded_key(z: Complex64) -> (i64, i64) {
    (
        libm::round(z.re * 1e6) as i64,
        libm::round(z.im * 1e6) as i64,
    )
}

fn canonical_order(a: &Irrep, b: &Irrep) -> Ordering {
    a.dim.cmp(&b.dim).then_with(|| {
        for (x, y) in a.values.iter().zip(&b.values) {
            let (kx, ky) = (rounded_key(*x), rounded_key(*y));
            match ky.cmp(&kx) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    })
}

fn conjugation(irreps: &[Irrep]) -> Result<Vec<usize>> {
    irreps
        .iter()
        .map(|r| {
            let target: Vec<Complex64> = r.values.iter().map(Complex64::conj).collect();
            let hits: Vec<usize> = irreps
                .iter()
                .enumerate()
                .filter(|(_, s)| {
                    s.values
                        .iter()
                        .zip(&target)
                        .all(|(a, b)| (a - b).norm() < 1e-6)
                })
                .map(|(j, _)| j)
                .collect();
            match hits.as_slice() {
                [j] => Ok(*j),
                _ => Err(Error::NumericalResidual {
                    context: alloc::format!("conjugate irrep lookup ({} matches)", hits.len()),
                    residual: 1.0,
                    tolerance: 1e-6,
                }),
            }
        })
        .collect()
}

/// The character group of the center, with its pairing against central
/// elements.
#[derive(Debug, Clone)]
pub struct CenterDual {
    /// Sorted central elements of the ambient group.
    center: Vec<usize>,
    /// The dual as an abelian group under pointwise multiplication.
    group: FiniteGroup,
    /// `values[psi][pos]` = `psi(center[pos])`.
    values: Vec<Vec<Complex64>>,
}

impl CenterDual {
    pub fn center(&self) -> &[usize] {
        &self.center
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self, psi: usize) -> &[Complex64] {
        &self.values[psi]
    }

    /// `psi(c)` for a central element `c` of the ambient group.
    pub fn pairing(&self, psi: usize, c: usize) -> Result<Complex64> {
        let pos = self.center.binary_search(&c).map_err(|_| Error::NotCentral(c))?;
        Ok(self.values[psi][pos])
    }

    /// The character of the center with the given values, if any.
    pub fn find(&self, values: &[Complex64], tol: f64) -> Option<usize> {
        self.values.iter().position(|v| {
            v.len() == values.len() && v.iter().zip(values).all(|(a, b)| (a - b).norm() <= tol)
        })
    }
}

/// Character group of `center(G)`. Character 0 is trivial.
pub fn dual_of_center(group: &FiniteGroup) -> Result<CenterDual> {
    let center = group.center();
    let z = group.subgroup(&center)?;
    let table = character_table(&z)?;
    let values: Vec<Vec<Complex64>> = (0..table.rank())
        .map(|psi| (0..z.order()).map(|x| table.character(psi, x)).collect())
        .collect();
    let n = values.len();
    let mut mul = alloc::vec![alloc::vec![0usize; n]; n];
    for a in 0..n {
        for b in 0..n {
            let prod: Vec<Complex64> = values[a]
                .iter()
                .zip(&values[b])
                .map(|(x, y)| x * y)
                .collect();
            mul[a][b] = values
                .iter()
                .position(|v| v.iter().zip(&prod).all(|(p, q)| (p - q).norm() < 1e-6))
                .ok_or_else(|| Error::NumericalResidual {
                    context: "product of central characters".to_string(),
                    residual: 1.0,
                    tolerance: 1e-6,
                })?;
        }
    }
    let names: Vec<String> = (0..n)
        .map(|i| if i == 0 { "1".to_string() } else { alloc::format!("psi{i}") })
        .collect();
    let dual = FiniteGroup::from_table(mul, Some(names))?;
    Ok(CenterDual {
        center,
        group: dual,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, quaternion, symmetric};

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-9
    }

    #[test]
    fn s3_dims() {
        let t = character_table(&symmetric(3).unwrap()).unwrap();
        assert_eq!(t.dims(), alloc::vec![1, 1, 2]);
        assert!(t.row_orthogonality_residual() < 1e-9);
        assert!(t.column_orthogonality_residual() < 1e-9);
        assert!(t.irreps()[0].values.iter().all(|v| close(*v, Complex64::new(1.0, 0.0))));
    }

    #[test]
    fn d8_dims_and_central_character() {
        let g = dihedral(4);
        let t = character_table(&g).unwrap();
        assert_eq!(t.dims(), alloc::vec![1, 1, 1, 1, 2]);
        // a^2 has index 2
        let ups = t.central_character(4, 2).unwrap();
        assert!(close(ups, Complex64::new(-1.0, 0.0)));
        assert!(close(t.central_character(0, 2).unwrap(), Complex64::new(1.0, 0.0)));
        assert_eq!(t.central_character(4, 1), Err(Error::NotCentral(1)));
        assert_eq!(t.central_character(9, 0), Err(Error::UnknownIrrep(9)));
    }

    #[test]
    fn central_character_of_conjugate_is_conjugate() {
        let g = quaternion(3);
        let t = character_table(&g).unwrap();
        for d in 0..t.rank() {
            for c in g.center() {
                let u = t.central_character(d, c).unwrap();
                let ubar = t.central_character(t.conjugate(d), c).unwrap();
                assert!((u.norm() - 1.0).abs() < UNIT_TOLERANCE);
                assert!(close(ubar, u.conj()));
            }
        }
    }

    #[test]
    fn degenerate_draw_budget_is_reported() {
        let opts = DixonOptions {
            max_draws: 0,
            ..DixonOptions::default()
        };
        let err = CharacterTable::compute(cyclic(3), &opts).unwrap_err();
        assert_eq!(err, Error::DegenerateSpectrum { attempts: 0 });
    }

    #[test]
    fn center_duals() {
        let d = dual_of_center(&dihedral(4)).unwrap();
        assert_eq!(d.order(), 2);
        assert_eq!(dual_of_center(&symmetric(3).unwrap()).unwrap().order(), 1);
        let c6 = dual_of_center(&cyclic(6)).unwrap();
        assert_eq!(c6.order(), 6);
        assert!(c6.group().is_abelian());
        assert!((0..6).any(|x| c6.group().element_order(x) == 6));
        assert!(close(d.pairing(1, 2).unwrap(), Complex64::new(-1.0, 0.0)));
        assert_eq!(d.pairing(1, 1), Err(Error::NotCentral(1)));
    }
}
