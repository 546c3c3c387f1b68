//! Chain equivalence on the dual, the chain group, abelian classification,
//! and the isomorphism with the character group of the center.
//!
//! Two irreps are chain equivalent when both occur in one iterated product
//! `D_1 x ... x D_n`. That relation is not directly enumerable, so it is
//! computed as a fixpoint: for every pair of current classes `(P, Q)`, all
//! irreps in `P x Q` are merged, until nothing changes. Each merge is
//! witnessed by a chain, and by induction on chain length every chain lies
//! in one fixpoint class, so the two relations coincide.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::chartable::{dual_of_center, CharacterTable, CenterDual, UNIT_TOLERANCE};
use crate::error::{Error, Result};
use crate::fusion::{fusion_coefficients, FusionRing};
use crate::group::FiniteGroup;
use crate::unionfind::UnionFind;

/// A partition of `0..n` with classes numbered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl Partition {
    pub fn from_classes(mut classes: Vec<Vec<usize>>) -> Result<Self> {
        for c in &mut classes {
            c.sort_unstable();
        }
        classes.retain(|c| !c.is_empty());
        classes.sort_by_key(|c| c[0]);
        let n: usize = classes.iter().map(Vec::len).sum();
        let mut class_of = alloc::vec![usize::MAX; n];
        for (id, c) in classes.iter().enumerate() {
            for &x in c {
                if x >= n || class_of[x] != usize::MAX {
                    return Err(Error::InvalidArgument(
                        "classes do not partition 0..n".to_string(),
                    ));
                }
                class_of[x] = id;
            }
        }
        Ok(Self { class_of, classes })
    }

    fn from_union_find(uf: &mut UnionFind) -> Self {
        Self::from_classes(uf.groups()).expect("union-find groups partition their domain")
    }

    /// Partition into the fibers of `key`.
    pub fn from_key<K: Ord>(n: usize, mut key: impl FnMut(usize) -> K) -> Self {
        let mut groups: BTreeMap<K, Vec<usize>> = BTreeMap::new();
        for x in 0..n {
            groups.entry(key(x)).or_default().push(x);
        }
        Self::from_classes(groups.into_values().collect()).expect("fibers partition 0..n")
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

/// Fixpoint closure starting from `initial`. `support(a, b, out)` writes
/// the constituents of `a x b` into `out` (cleared by the caller).
pub fn fixpoint_partition<F>(initial: &Partition, mut support: F) -> Partition
where
    F: FnMut(usize, usize, &mut Vec<usize>),
{
    let n = initial.len();
    let mut uf = UnionFind::new(n);
    for class in initial.classes() {
        for w in class.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    let mut buf = Vec::new();
    loop {
        let roots: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
        let mut anchors: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut merged = false;
        for a in 0..n {
            for b in 0..n {
                buf.clear();
                support(a, b, &mut buf);
                let Some(&first) = buf.first() else { continue };
                let anchor = *anchors.entry((roots[a], roots[b])).or_insert(first);
                for &k in &buf {
                    merged |= uf.union(anchor, k);
                }
            }
        }
        if !merged {
            return Partition::from_union_find(&mut uf);
        }
    }
}

/// Chain classes of a fusion ring.
pub fn chain_partition(ring: &FusionRing) -> Partition {
    refine_partition(ring, &Partition::from_key(ring.rank(), |x| x))
}

/// Fixpoint closure of `ring` starting from an arbitrary partition.
pub fn refine_partition(ring: &FusionRing, initial: &Partition) -> Partition {
    fixpoint_partition(initial, |a, b, out| out.extend_from_slice(ring.support(a, b)))
}

/// The chain group: classes with the induced product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainGroup {
    partition: Partition,
    product: Vec<Vec<usize>>,
    identity_class: usize,
    inverse: Vec<usize>,
    invariant_factors: Vec<u64>,
}

impl ChainGroup {
    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        self.partition.classes()
    }

    pub fn order(&self) -> usize {
        self.partition.class_count()
    }

    pub fn class_of(&self, irrep: usize) -> usize {
        self.partition.class_of(irrep)
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.product[a][b]
    }

    pub fn product_table(&self) -> &[Vec<usize>] {
        &self.product
    }

    pub fn identity_class(&self) -> usize {
        self.identity_class
    }

    pub fn inverse(&self, c: usize) -> usize {
        self.inverse[c]
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    /// `"trivial"`, `"Z2"`, `"Z2 x Z4"`, ...
    pub fn structure(&self) -> String {
        structure_name(&self.invariant_factors)
    }
}

/// Builds the chain group, checking well-definedness of the class product
/// on every member pair rather than assuming it.
pub fn chain_group(ring: &FusionRing) -> Result<ChainGroup> {
    let partition = chain_partition(ring);
    let c = partition.class_count();
    let mut product = alloc::vec![alloc::vec![usize::MAX; c]; c];
    for (p, pc) in partition.classes().iter().enumerate() {
        for (q, qc) in partition.classes().iter().enumerate() {
            for &a in pc {
                for &b in qc {
                    for &k in ring.support(a, b) {
                        let target = partition.class_of(k);
                        let slot = &mut product[p][q];
                        if *slot == usize::MAX {
                            *slot = target;
                        } else if *slot != target {
                            return Err(Error::WellDefinednessViolation(alloc::format!(
                                "{a} x {b} meets classes {} and {target}",
                                *slot
                            )));
                        }
                    }
                }
            }
        }
    }
    let identity_class = partition.class_of(0);
    let mut inverse = alloc::vec![usize::MAX; c];
    for (p, pc) in partition.classes().iter().enumerate() {
        let target = partition.class_of(ring.conj(pc[0]));
        if pc.iter().any(|&a| partition.class_of(ring.conj(a)) != target) {
            return Err(Error::WellDefinednessViolation(alloc::format!(
                "conjugates of class {p} straddle classes"
            )));
        }
        if product[p][target] != identity_class {
            return Err(Error::WellDefinednessViolation(alloc::format!(
                "class {p} times its conjugate class is not the unit"
            )));
        }
        inverse[p] = target;
    }
    let invariant_factors = classify_abelian(&product)?;
    Ok(ChainGroup {
        partition,
        product,
        identity_class,
        inverse,
        invariant_factors,
    })
}

/// Invariant factors `d_1 | d_2 | ... ` of a finite abelian group given by
/// its multiplication table. A cyclic subgroup of maximal order is a direct
/// summand, so the largest factor is split off and the quotient classified
/// recursively.
pub fn classify_abelian(table: &[Vec<usize>]) -> Result<Vec<u64>> {
    let g = FiniteGroup::from_table(table.to_vec(), None)?;
    if !g.is_abelian() {
        return Err(Error::NotAGroup("table is not commutative".to_string()));
    }
    let mut factors = abelian_factors(&g)?;
    factors.sort_unstable();
    debug_assert!(factors.windows(2).all(|w| w[1] % w[0] == 0));
    Ok(factors)
}

fn abelian_factors(g: &FiniteGroup) -> Result<Vec<u64>> {
    if g.order() == 1 {
        return Ok(Vec::new());
    }
    let (gen, exponent) = (0..g.order())
        .map(|x| (x, g.element_order(x)))
        .max_by_key(|&(x, ord)| (ord, core::cmp::Reverse(x)))
        .expect("nonempty group");
    let cyclic: Vec<usize> = (0..exponent).map(|k| g.power(gen, k)).collect();
    let mut coset_of = alloc::vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for y in 0..g.order() {
        if coset_of[y] != usize::MAX {
            continue;
        }
        for &h in &cyclic {
            coset_of[g.mul(y, h)] = reps.len();
        }
        reps.push(y);
    }
    let quotient: Vec<Vec<usize>> = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| coset_of[g.mul(a, b)]).collect())
        .collect();
    let q = FiniteGroup::from_table(quotient, None)?;
    let mut factors = abelian_factors(&q)?;
    factors.push(exponent as u64);
    Ok(factors)
}

pub fn structure_name(factors: &[u64]) -> String {
    if factors.is_empty() {
        return "trivial".to_string();
    }
    let parts: Vec<String> = factors.iter().map(|d| alloc::format!("Z{d}")).collect();
    parts.join(" x ")
}

/// Machine-checkable evidence that `[D] -> Upsilon_[D]` is an isomorphism
/// from the chain group onto the character group of the center.
#[derive(Debug, Clone)]
pub struct EtaCertificate {
    /// Sorted central elements.
    pub center: Vec<usize>,
    /// `pairing[class][pos]` = `Upsilon_[class](center[pos])`.
    pub pairing: Vec<Vec<Complex64>>,
    /// Image of each chain class in the dual of the center.
    pub class_to_dual: Vec<usize>,
    pub dual: CenterDual,
}

/// Computes the character table, fusion ring and chain group of `group`
/// and certifies the isomorphism.
pub fn eta_check(group: &FiniteGroup) -> Result<EtaCertificate> {
    let table = crate::chartable::character_table(group)?;
    let ring = fusion_coefficients(&table)?;
    let chain = chain_group(&ring)?;
    eta_check_with(&table, &chain)
}

pub fn eta_check_with(table: &CharacterTable, chain: &ChainGroup) -> Result<EtaCertificate> {
    let dual = dual_of_center(table.group())?;
    let center = dual.center().to_vec();
    let vectors: Vec<Vec<Complex64>> = (0..table.rank())
        .map(|d| table.central_character_vector(d))
        .collect::<Result<_>>()?;
    let mut pairing = Vec::with_capacity(chain.order());
    for (c, members) in chain.classes().iter().enumerate() {
        let first = &vectors[members[0]];
        for &d in members {
            let dev = vectors[d]
                .iter()
                .zip(first)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            if dev > UNIT_TOLERANCE {
                return Err(Error::TheoremViolation(alloc::format!(
                    "central character varies inside chain class {c} (irreps {} and {d})",
                    members[0]
                )));
            }
        }
        pairing.push(first.clone());
    }
    let class_to_dual: Vec<usize> = pairing
        .iter()
        .enumerate()
        .map(|(c, v)| {
            dual.find(v, UNIT_TOLERANCE).ok_or_else(|| {
                Error::TheoremViolation(alloc::format!(
                    "central character of class {c} is not a character of the center"
                ))
            })
        })
        .collect::<Result<_>>()?;
    for p in 0..chain.order() {
        for q in 0..chain.order() {
            let lhs = class_to_dual[chain.product(p, q)];
            let rhs = dual.group().mul(class_to_dual[p], class_to_dual[q]);
            if lhs != rhs {
                return Err(Error::TheoremViolation(alloc::format!(
                    "eta is not multiplicative on classes ({p}, {q})"
                )));
            }
        }
    }
    let mut seen = alloc::vec![false; dual.order()];
    for &x in &class_to_dual {
        if core::mem::replace(&mut seen[x], true) {
            return Err(Error::TheoremViolation("eta is not injective".to_string()));
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::TheoremViolation(alloc::format!(
            "eta is not onto: {} classes, {} central characters",
            chain.order(),
            dual.order()
        )));
    }
    Ok(EtaCertificate {
        center,
        pairing,
        class_to_dual,
        dual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::character_table;
    use crate::group::{cyclic, dihedral, direct_product, quaternion, symmetric};

    fn ring_of(g: &FiniteGroup) -> FusionRing {
        fusion_coefficients(&character_table(g).unwrap()).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_abelian(&cyclic(2).table()).unwrap(), alloc::vec![2]);
        assert_eq!(classify_abelian(&dihedral(2).table()).unwrap(), alloc::vec![2, 2]);
        assert_eq!(classify_abelian(&cyclic(6).table()).unwrap(), alloc::vec![6]);
        let z2z4 = direct_product(&cyclic(2), &cyclic(4));
        assert_eq!(classify_abelian(&z2z4.table()).unwrap(), alloc::vec![2, 4]);
        assert_eq!(classify_abelian(&cyclic(1).table()).unwrap(), Vec::<u64>::new());
        let err = classify_abelian(&symmetric(3).unwrap().table()).unwrap_err();
        assert!(matches!(err, Error::NotAGroup(_)));
        assert_eq!(structure_name(&[2, 4]), "Z2 x Z4");
    }

    #[test]
    fn quaternion_chain_group_is_z2() {
        for m in 2..=6 {
            let chain = chain_group(&ring_of(&quaternion(m))).unwrap();
            assert_eq!(chain.invariant_factors(), &[2]);
        }
    }

    #[test]
    fn trivial_chain_groups() {
        for g in [symmetric(3).unwrap(), symmetric(4).unwrap(), dihedral(5)] {
            let chain = chain_group(&ring_of(&g)).unwrap();
            assert_eq!(chain.order(), 1);
            assert_eq!(chain.structure(), "trivial");
        }
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let ring = ring_of(&cyclic(7));
        let p = chain_partition(&ring);
        assert_eq!(p.class_count(), 7);
        assert_eq!(refine_partition(&ring, &p), p);
    }

    #[test]
    fn eta_on_d8() {
        let cert = eta_check(&dihedral(4)).unwrap();
        assert_eq!(cert.center, alloc::vec![0, 2]);
        assert_eq!(cert.pairing.len(), 2);
        assert!((cert.pairing[1][1] + Complex64::new(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::from_classes(alloc::vec![alloc::vec![0, 1], alloc::vec![1]]).is_err());
        let p = Partition::from_key(6, |x| x % 3);
        assert_eq!(p.classes(), &[alloc::vec![0, 3], alloc::vec![1, 4], alloc::vec![2, 5]]);
    }
}
