//! The chain group acting on a commutative algebra `Z = C(Gamma)` for a
//! finite set `Gamma`.
//!
//! Automorphisms of `C(Gamma)` are point permutations, so a chain
//! homomorphism is a map from chain classes to permutations of `Gamma`.
//! An endomorphism `lambda` with multiplicities `m(D)` acts on `Z` as
//! `sum_[D] alpha_[D](Z) * (sum_{D' in [D]} E_{D'})`; the isotypical
//! projections are tracked only through their class weights
//! `sum m(D') d(D')`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::chain::ChainGroup;
use crate::error::{Error, Result};
use crate::fusion::FusionRing;
use crate::group::Permutation;

/// Pointwise tolerance for unitarity and equality of functions on `Gamma`.
pub const FUNCTION_TOLERANCE: f64 = 1e-9;

/// Functions on a finite `Gamma`, stored as complex vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CenterModel {
    gamma_size: usize,
}

impl CenterModel {
    pub fn new(gamma_size: usize) -> Result<Self> {
        if gamma_size == 0 {
            return Err(Error::InvalidArgument("Gamma must be nonempty".to_string()));
        }
        Ok(Self { gamma_size })
    }

    pub fn gamma_size(&self) -> usize {
        self.gamma_size
    }

    pub fn indicator(&self, point: usize) -> Vec<Complex64> {
        (0..self.gamma_size)
            .map(|x| Complex64::new(if x == point { 1.0 } else { 0.0 }, 0.0))
            .collect()
    }

    pub fn constant(&self, value: Complex64) -> Vec<Complex64> {
        alloc::vec![value; self.gamma_size]
    }
}

/// `alpha_p(Z) = Z o p^{-1}`, so that `alpha_p o alpha_q = alpha_{pq}` with
/// `pq` meaning "apply `q`, then `p`".
pub fn permute_function(p: &Permutation, z: &[Complex64]) -> Vec<Complex64> {
    let inv = p.inverse();
    (0..z.len()).map(|x| z[inv.apply(x)]).collect()
}

/// `[D] -> alpha_[D]` as permutations of `Gamma`, checked to be a homomorphism.
#[derive(Debug, Clone)]
pub struct ChainHomomorphism {
    chain: ChainGroup,
    model: CenterModel,
    images: Vec<Permutation>,
}

impl ChainHomomorphism {
    /// `images[c]` is the permutation assigned to class `c`.
    pub fn new(chain: ChainGroup, model: CenterModel, images: Vec<Permutation>) -> Result<Self> {
        if images.len() != chain.order() {
            return Err(Error::NotAHomomorphism(alloc::format!(
                "{} images for {} classes",
                images.len(),
                chain.order()
            )));
        }
        let n = model.gamma_size();
        if images.iter().any(|p| p.degree() > n) {
            return Err(Error::NotAHomomorphism(alloc::format!(
                "permutation moves points outside Gamma of size {n}"
            )));
        }
        let images: Vec<Permutation> = images.iter().map(|p| p.padded(n)).collect();
        if !images[chain.identity_class()].is_identity() {
            return Err(Error::NotAHomomorphism(
                "identity class must act trivially".to_string(),
            ));
        }
        for a in 0..chain.order() {
            for b in 0..chain.order() {
                // h(a) o h(b): apply h(b) first
                let composed = images[b].then(&images[a]);
                if composed != images[chain.product(a, b)] {
                    return Err(Error::NotAHomomorphism(alloc::format!(
                        "h({a}) h({b}) != h({a} * {b})"
                    )));
                }
            }
        }
        Ok(Self {
            chain,
            model,
            images,
        })
    }

    /// Classes not listed act as the identity.
    pub fn from_assignments(
        chain: ChainGroup,
        model: CenterModel,
        assignments: &[(usize, Permutation)],
    ) -> Result<Self> {
        let mut images = alloc::vec![Permutation::identity(model.gamma_size()); chain.order()];
        for (class, p) in assignments {
            let slot = images.get_mut(*class).ok_or_else(|| {
                Error::NotAHomomorphism(alloc::format!("no chain class {class}"))
            })?;
            *slot = p.clone();
        }
        Self::new(chain, model, images)
    }

    pub fn trivial(chain: ChainGroup, model: CenterModel) -> Self {
        let images = alloc::vec![Permutation::identity(model.gamma_size()); chain.order()];
        Self {
            chain,
            model,
            images,
        }
    }

    /// `Gamma` = the chain classes, each class acting by left multiplication.
    pub fn regular(chain: ChainGroup) -> Self {
        let n = chain.order();
        let images = (0..n)
            .map(|a| {
                Permutation::from_images((0..n).map(|x| chain.product(a, x)).collect())
                    .expect("rows of a group table are permutations")
            })
            .collect();
        Self {
            chain,
            model: CenterModel { gamma_size: n },
            images,
        }
    }

    pub fn chain(&self) -> &ChainGroup {
        &self.chain
    }

    pub fn model(&self) -> CenterModel {
        self.model
    }

    pub fn image(&self, class: usize) -> &Permutation {
        &self.images[class]
    }

    pub fn is_trivial_on(&self, class: usize) -> bool {
        self.images[class].is_identity()
    }

    /// `alpha_[class](z)`.
    pub fn apply(&self, class: usize, z: &[Complex64]) -> Vec<Complex64> {
        permute_function(&self.images[class], z)
    }
}

/// Finitely supported multiplicities `m(rho_j, lambda)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MultiplicityVector(BTreeMap<usize, u64>);

impl MultiplicityVector {
    pub fn new(entries: impl IntoIterator<Item = (usize, u64)>) -> Self {
        let mut map = BTreeMap::new();
        for (k, m) in entries {
            if m > 0 {
                *map.entry(k).or_insert(0) += m;
            }
        }
        Self(map)
    }

    pub fn irreducible(irrep: usize) -> Self {
        Self::new([(irrep, 1)])
    }

    pub fn get(&self, irrep: usize) -> u64 {
        self.0.get(&irrep).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.0.iter().map(|(&k, &m)| (k, m))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn validate(&self, ring: &FusionRing) -> Result<()> {
        match self.support().find(|&k| k >= ring.rank()) {
            Some(k) => Err(Error::UnknownIrrep(k)),
            None => Ok(()),
        }
    }

    /// `d(lambda) = sum m(D) d(D)`.
    pub fn dimension(&self, ring: &FusionRing) -> Result<u64> {
        self.validate(ring)?;
        Ok(self.entries().map(|(k, m)| m * ring.dim(k)).sum())
    }

    /// Multiplicities of `self o other` via the fusion coefficients.
    pub fn compose(&self, other: &Self, ring: &FusionRing) -> Result<Self> {
        self.validate(ring)?;
        other.validate(ring)?;
        let mut out: BTreeMap<usize, u64> = BTreeMap::new();
        for (i, mi) in self.entries() {
            for (j, mj) in other.entries() {
                for &k in ring.support(i, j) {
                    *out.entry(k).or_insert(0) += mi * mj * u64::from(ring.n(i, j, k));
                }
            }
        }
        Ok(Self(out))
    }

    /// Chain classes meeting the support, ascending.
    pub fn classes(&self, chain: &ChainGroup) -> Vec<usize> {
        let mut out: Vec<usize> = self.support().map(|k| chain.class_of(k)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassAction {
    pub class: usize,
    /// `alpha_[class](Z)`.
    pub function: Vec<Complex64>,
    /// `sum_{D' in class} m(D') d(D')`.
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CentralActionResult {
    pub entries: Vec<ClassAction>,
    /// Only one chain class meets the support.
    pub central: bool,
}

impl CentralActionResult {
    pub fn total_weight(&self) -> u64 {
        self.entries.iter().map(|e| e.weight).sum()
    }

    /// Number of pointwise-distinct transformed functions.
    pub fn distinct_images(&self) -> usize {
        let mut reps: Vec<&[Complex64]> = Vec::new();
        for e in &self.entries {
            if !reps.iter().any(|r| functions_close(r, &e.function)) {
                reps.push(&e.function);
            }
        }
        reps.len()
    }
}

fn functions_close(a: &[Complex64], b: &[Complex64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= FUNCTION_TOLERANCE)
}

fn check_function(h: &ChainHomomorphism, z: &[Complex64]) -> Result<()> {
    if z.len() != h.model().gamma_size() {
        return Err(Error::InvalidArgument(alloc::format!(
            "function has {} values, Gamma has {} points",
            z.len(),
            h.model().gamma_size()
        )));
    }
    Ok(())
}

/// One entry per chain class meeting `supp(lambda)`.
pub fn action_on_center(
    lambda: &MultiplicityVector,
    h: &ChainHomomorphism,
    ring: &FusionRing,
    z: &[Complex64],
) -> Result<CentralActionResult> {
    lambda.validate(ring)?;
    check_function(h, z)?;
    let mut weights: BTreeMap<usize, u64> = BTreeMap::new();
    for (k, m) in lambda.entries() {
        *weights.entry(h.chain().class_of(k)).or_insert(0) += m * ring.dim(k);
    }
    let entries: Vec<ClassAction> = weights
        .into_iter()
        .map(|(class, weight)| ClassAction {
            class,
            function: h.apply(class, z),
            weight,
        })
        .collect();
    Ok(CentralActionResult {
        central: entries.len() == 1,
        entries,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum CompositionCheck {
    Consistent,
    Inconsistent(Counterexample),
}

impl CompositionCheck {
    pub fn is_consistent(&self) -> bool {
        matches!(self, CompositionCheck::Consistent)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub description: String,
}

/// Checks that the classes of `lambda o mu` are exactly the products of
/// classes of `lambda` and `mu`, that dimensions multiply, and that
/// `alpha_{[a] * [b]}(Z) = alpha_[a](alpha_[b](Z))` on `z`.
pub fn composition_consistency(
    lambda: &MultiplicityVector,
    mu: &MultiplicityVector,
    h: &ChainHomomorphism,
    ring: &FusionRing,
    z: &[Complex64],
) -> Result<CompositionCheck> {
    check_function(h, z)?;
    let chain = h.chain();
    let composite = lambda.compose(mu, ring)?;
    let fail = |description: String| Ok(CompositionCheck::Inconsistent(Counterexample { description }));
    if composite.dimension(ring)? != lambda.dimension(ring)? * mu.dimension(ring)? {
        return fail("d(lambda o mu) != d(lambda) d(mu)".to_string());
    }
    let lhs = composite.classes(chain);
    let mut rhs: Vec<usize> = Vec::new();
    for a in lambda.classes(chain) {
        for b in mu.classes(chain) {
            rhs.push(chain.product(a, b));
        }
    }
    rhs.sort_unstable();
    rhs.dedup();
    if lhs != rhs {
        return fail(alloc::format!("classes of lambda o mu {lhs:?} != class products {rhs:?}"));
    }
    for a in lambda.classes(chain) {
        for b in mu.classes(chain) {
            let direct = h.apply(chain.product(a, b), z);
            let stepwise = h.apply(a, &h.apply(b, z));
            if !functions_close(&direct, &stepwise) {
                return fail(alloc::format!("alpha_[{a}*{b}] != alpha_[{a}] o alpha_[{b}]"));
            }
        }
    }
    Ok(CompositionCheck::Consistent)
}

/// A square matrix with entries in `C(Gamma)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionMatrix {
    size: usize,
    gamma: usize,
    /// `entries[(i * size + j) * gamma + x]`
    entries: Vec<Complex64>,
}

impl FunctionMatrix {
    pub fn from_fn(size: usize, gamma: usize, mut f: impl FnMut(usize, usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(size * size * gamma);
        for i in 0..size {
            for j in 0..size {
                for x in 0..gamma {
                    entries.push(f(i, j, x));
                }
            }
        }
        Self { size, gamma, entries }
    }

    pub fn identity(size: usize, gamma: usize) -> Self {
        Self::from_fn(size, gamma, |i, j, _| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
    }

    /// Diagonal matrix with the given functions on the diagonal.
    pub fn diagonal(functions: &[Vec<Complex64>]) -> Result<Self> {
        let gamma = functions.first().map_or(0, Vec::len);
        if functions.iter().any(|f| f.len() != gamma) {
            return Err(Error::InvalidArgument("ragged diagonal".to_string()));
        }
        Ok(Self::from_fn(functions.len(), gamma, |i, j, x| {
            if i == j {
                functions[i][x]
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn get(&self, i: usize, j: usize, x: usize) -> Complex64 {
        self.entries[(i * self.size + j) * self.gamma + x]
    }

    /// Applies a point permutation to every entry.
    pub fn permuted(&self, p: &Permutation) -> Self {
        let inv = p.inverse();
        Self::from_fn(self.size, self.gamma, |i, j, x| self.get(i, j, inv.apply(x)))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.size, self.gamma, |i, j, x| self.get(j, i, x).conj())
    }

    /// Pointwise matrix product.
    pub fn mul(&self, other: &Self) -> Self {
        Self::from_fn(self.size, self.gamma, |i, j, x| {
            (0..self.size).map(|k| self.get(i, k, x) * other.get(k, j, x)).sum()
        })
    }

    /// Largest pointwise deviation from the identity matrix.
    pub fn identity_deviation(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.size {
            for j in 0..self.size {
                let target = if i == j { 1.0 } else { 0.0 };
                for x in 0..self.gamma {
                    worst = worst.max((self.get(i, j, x) - target).norm());
                }
            }
        }
        worst
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let adj = self.adjoint();
        self.mul(&adj).identity_deviation() <= tol && adj.mul(self).identity_deviation() <= tol
    }
}

/// True iff `alpha_B(Z_A) Z_A^* = 1` and `Z_B alpha_A(Z_B^*) = 1`, i.e. the
/// permutation symmetry is unchanged by the module-basis changes `Z_A`, `Z_B`.
pub fn symmetry_obstruction(
    h: &ChainHomomorphism,
    class_a: usize,
    class_b: usize,
    z_a: &FunctionMatrix,
    z_b: &FunctionMatrix,
) -> Result<bool> {
    let gamma = h.model().gamma_size();
    for c in [class_a, class_b] {
        if c >= h.chain().order() {
            return Err(Error::InvalidArgument(alloc::format!("no chain class {c}")));
        }
    }
    for (name, z) in [("Z_A", z_a), ("Z_B", z_b)] {
        if z.gamma() != gamma {
            return Err(Error::InvalidArgument(alloc::format!(
                "{name} lives on {} points, Gamma has {gamma}",
                z.gamma()
            )));
        }
        if !z.is_unitary(FUNCTION_TOLERANCE) {
            return Err(Error::NotUnitary(name.to_string()));
        }
    }
    let alpha_a = h.image(class_a);
    let alpha_b = h.image(class_b);
    let first = z_a.permuted(alpha_b).mul(&z_a.adjoint());
    let second = z_b.mul(&z_b.adjoint().permuted(alpha_a));
    Ok(first.identity_deviation() <= FUNCTION_TOLERANCE
        && second.identity_deviation() <= FUNCTION_TOLERANCE)
}

/// `sum_rho m(rho, sigma) m(rho, tau)`: the dimension of `(sigma, tau)_C`
/// and the rank of `(sigma, tau)` as a free module over `sigma(Z)`.
pub fn admissible_arrow_rank(sigma: &MultiplicityVector, tau: &MultiplicityVector) -> u64 {
    sigma.entries().map(|(k, m)| m * tau.get(k)).sum()
}
