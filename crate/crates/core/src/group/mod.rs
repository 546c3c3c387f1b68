//! Finite groups stored as explicit multiplication tables.

mod families;
pub mod perm;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub use families::{
    alternating, cyclic, dihedral, direct_product, from_permutations, quaternion, symmetric,
    DEFAULT_CLOSURE_CAP,
};
pub use perm::{parse_generator_list, Permutation};

/// Tables up to this order are checked for associativity exhaustively.
pub const EXHAUSTIVE_ASSOCIATIVITY_ORDER: usize = 64;
const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 10_000;

/// A finite group with its multiplication table, inverses and conjugacy
/// classes. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
    names: Vec<String>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Validates a user-supplied table and derives inverses and classes.
    ///
    /// Associativity is checked on every triple up to order
    /// [`EXHAUSTIVE_ASSOCIATIVITY_ORDER`] and on 10⁴ seeded random triples
    /// beyond that.
    pub fn from_table(mul: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self> {
        let order = mul.len();
        if order == 0 {
            return Err(Error::NotAGroup("empty table".to_string()));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (row_idx, row) in mul.iter().enumerate() {
            if row.len() != order {
                return Err(Error::NotAGroup(alloc::format!(
                    "row {row_idx} has length {} instead of {order}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= order) {
                return Err(Error::NotAGroup(alloc::format!(
                    "entry {bad} in row {row_idx} is out of range"
                )));
            }
            flat.extend_from_slice(row);
        }
        if let Some(names) = &names {
            if names.len() != order {
                return Err(Error::NotAGroup(alloc::format!(
                    "{} names supplied for {order} elements",
                    names.len()
                )));
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| flat[e * order + x] == x && flat[x * order + e] == x))
            .ok_or_else(|| Error::NotAGroup("no two-sided identity".to_string()))?;
        let names = names.unwrap_or_else(|| default_names(order, identity));
        let group = Self::assemble(order, flat, identity, names)?;
        group.check_associativity(0x5eed)?;
        Ok(group)
    }

    /// Builds the group from a table known to be a group (family constructors).
    pub(crate) fn from_trusted_table(
        order: usize,
        mul: Vec<usize>,
        identity: usize,
        names: Vec<String>,
    ) -> Self {
        Self::assemble(order, mul, identity, names).expect("trusted table is a group")
    }

    fn assemble(order: usize, mul: Vec<usize>, identity: usize, names: Vec<String>) -> Result<Self> {
        let mut inv = alloc::vec![usize::MAX; order];
        for x in 0..order {
            let y = (0..order)
                .find(|&y| mul[x * order + y] == identity)
                .ok_or_else(|| Error::NotAGroup(alloc::format!("element {x} has no inverse")))?;
            if mul[y * order + x] != identity {
                return Err(Error::NotAGroup(alloc::format!(
                    "element {x} has no two-sided inverse"
                )));
            }
            inv[x] = y;
        }
        let mut class_of = alloc::vec![usize::MAX; order];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = Vec::new();
            for g in 0..order {
                let conj = mul[mul[g * order + x] * order + inv[g]];
                if class_of[conj] == usize::MAX {
                    class_of[conj] = id;
                    members.push(conj);
                } else if class_of[conj] != id {
                    return Err(Error::NotAGroup(
                        "conjugation does not partition the elements".to_string(),
                    ));
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        Ok(Self {
            order,
            mul,
            identity,
            inv,
            names,
            class_of,
            classes,
        })
    }

    /// Checks the group axioms on the stored table.
    pub fn check_axioms(&self, seed: u64) -> Result<()> {
        for x in 0..self.order {
            if self.mul(self.identity, x) != x || self.mul(x, self.identity) != x {
                return Err(Error::NotAGroup(alloc::format!("identity fails on {x}")));
            }
            if self.mul(x, self.inv[x]) != self.identity {
                return Err(Error::NotAGroup(alloc::format!("inverse fails on {x}")));
            }
        }
        self.check_associativity(seed)
    }

    fn check_associativity(&self, seed: u64) -> Result<()> {
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                Err(Error::NotAGroup(alloc::format!(
                    "associativity fails on ({a}, {b}, {c})"
                )))
            } else {
                Ok(())
            }
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY_ORDER {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
                check(
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                )?;
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    /// Conjugacy classes, ordered by smallest member.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// The multiplication table as rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_central(&self, a: usize) -> bool {
        (0..self.order).all(|g| self.mul(a, g) == self.mul(g, a))
    }

    /// Sorted list of central elements; always contains the identity.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order).filter(|&a| self.is_central(a)).collect()
    }

    /// The subgroup on `elements` (which must be closed under the product),
    /// renumbered in the given order.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Self> {
        let index: BTreeMap<usize, usize> =
            elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let k = elements.len();
        let mut mul = Vec::with_capacity(k * k);
        for &a in elements {
            for &b in elements {
                let p = self.mul(a, b);
                mul.push(*index.get(&p).ok_or_else(|| {
                    Error::NotAGroup(alloc::format!("subset is not closed: {a}*{b}={p}"))
                })?);
            }
        }
        let identity = *index
            .get(&self.identity)
            .ok_or_else(|| Error::NotAGroup("subset lacks the identity".to_string()))?;
        let names = elements.iter().map(|&e| self.names[e].clone()).collect();
        Self::assemble(k, mul, identity, names)
    }
}

fn default_names(order: usize, identity: usize) -> Vec<String> {
    (0..order)
        .map(|i| {
            if i == identity {
                "e".to_string()
            } else {
                alloc::format!("g{i}")
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn table_validation_catches_non_groups() {
        assert!(FiniteGroup::from_table(vec![], None).is_err());
        // no identity
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 0]], None).is_err());
        // ragged
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1]], None).is_err());
        // x*x = e is fine; this is Z2
        let z2 = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]], None).unwrap();
        assert_eq!(z2.center(), vec![0, 1]);
    }

    #[test]
    fn non_associative_loop_is_rejected() {
        // A Latin square with identity 0 that is not associative (order 5 loop).
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table(t, None).unwrap_err();
        assert!(matches!(err, Error::NotAGroup(_)));
    }

    #[test]
    fn non_zero_identity_is_supported() {
        let t = vec![vec![1, 0], vec![0, 1]];
        let g = FiniteGroup::from_table(t, None).unwrap();
        assert_eq!(g.identity(), 1);
        assert_eq!(g.name(1), "e");
    }

    #[test]
    fn subgroup_of_center() {
        let d8 = dihedral(4);
        let z = d8.subgroup(&d8.center()).unwrap();
        assert_eq!(z.order(), 2);
        assert!(z.is_abelian());
    }
}
