//! Clebsch-Gordan fusion for SU(2), SO(3), O(3) and U(2), and their chain
//! classes on a finite window of labels.
//!
//! Spins are stored doubled (`twice_l = 2l`) so every computation is exact.
//! The infinite dual is replaced by the window `l <= L_max` (and
//! `|m| <= 2 L_max` for U(2)); the fixpoint closure runs on the window and
//! is compared with the closed-form class invariant of each family.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::chain::{fixpoint_partition, Partition};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LieFamily {
    SU2,
    SO3,
    O3,
    U2,
}

impl LieFamily {
    pub const ALL: [LieFamily; 4] = [LieFamily::SU2, LieFamily::SO3, LieFamily::O3, LieFamily::U2];

    pub fn name(self) -> &'static str {
        match self {
            LieFamily::SU2 => "SU2",
            LieFamily::SO3 => "SO3",
            LieFamily::O3 => "O3",
            LieFamily::U2 => "U2",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let norm: String = text
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .map(|c| c.to_ascii_uppercase())
            .collect();
        match norm.as_str() {
            "SU2" => Ok(LieFamily::SU2),
            "SO3" => Ok(LieFamily::SO3),
            "O3" => Ok(LieFamily::O3),
            "U2" => Ok(LieFamily::U2),
            _ => Err(Error::InvalidArgument(alloc::format!("unknown Lie family {text:?}"))),
        }
    }

    /// Description of the closed-form class invariant.
    pub fn invariant_description(self) -> &'static str {
        match self {
            LieFamily::SU2 => "integer / half-integer",
            LieFamily::SO3 => "single class",
            LieFamily::O3 => "keyed by epsilon",
            LieFamily::U2 => "keyed by m",
        }
    }

    /// Group the class invariant takes values in.
    pub fn class_group(self) -> ClassGroup {
        match self {
            LieFamily::SU2 | LieFamily::O3 => ClassGroup::Cyclic(2),
            LieFamily::SO3 => ClassGroup::Trivial,
            LieFamily::U2 => ClassGroup::Integers,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassGroup {
    Trivial,
    Cyclic(u32),
    Integers,
}

impl ClassGroup {
    pub fn combine(self, a: i64, b: i64) -> i64 {
        match self {
            ClassGroup::Trivial => 0,
            ClassGroup::Cyclic(n) => (a + b).rem_euclid(i64::from(n)),
            ClassGroup::Integers => a + b,
        }
    }
}

impl fmt::Display for ClassGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassGroup::Trivial => f.write_str("trivial"),
            ClassGroup::Cyclic(n) => write!(f, "Z{n}"),
            ClassGroup::Integers => f.write_str("Z"),
        }
    }
}

/// An irreducible label. `parity` is only meaningful for O(3) and `charge`
/// only for U(2); both are zero otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LieLabel {
    family: LieFamily,
    twice_l: u32,
    parity: u8,
    charge: i64,
}

impl LieLabel {
    pub fn su2(twice_l: u32) -> Self {
        Self {
            family: LieFamily::SU2,
            twice_l,
            parity: 0,
            charge: 0,
        }
    }

    pub fn so3(l: u32) -> Self {
        Self {
            family: LieFamily::SO3,
            twice_l: 2 * l,
            parity: 0,
            charge: 0,
        }
    }

    /// O(3) label `(epsilon, l)` with integer `l`.
    pub fn o3(parity: u8, l: u32) -> Result<Self> {
        if parity > 1 {
            return Err(Error::InvalidLabel(alloc::format!("epsilon must be 0 or 1, got {parity}")));
        }
        Ok(Self {
            family: LieFamily::O3,
            twice_l: 2 * l,
            parity,
            charge: 0,
        })
    }

    /// U(2) label `(m, l)`; requires `m + 2l` even.
    pub fn u2(charge: i64, twice_l: u32) -> Result<Self> {
        if (charge + i64::from(twice_l)).rem_euclid(2) != 0 {
            return Err(Error::InvalidLabel(alloc::format!(
                "U2 label (m={charge}, 2l={twice_l}) needs m + 2l even"
            )));
        }
        Ok(Self {
            family: LieFamily::U2,
            twice_l,
            parity: 0,
            charge,
        })
    }

    pub fn family(&self) -> LieFamily {
        self.family
    }

    pub fn twice_l(&self) -> u32 {
        self.twice_l
    }

    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn charge(&self) -> i64 {
        self.charge
    }

    /// Dimension `2l + 1`.
    pub fn dim(&self) -> u64 {
        u64::from(self.twice_l) + 1
    }

    /// Closed-form chain-class invariant.
    pub fn class_invariant(&self) -> i64 {
        match self.family {
            LieFamily::SU2 => i64::from(self.twice_l % 2),
            LieFamily::SO3 => 0,
            LieFamily::O3 => i64::from(self.parity),
            LieFamily::U2 => self.charge,
        }
    }
}

fn spin(twice_l: u32) -> String {
    if twice_l % 2 == 0 {
        (twice_l / 2).to_string()
    } else {
        alloc::format!("{twice_l}/2")
    }
}

impl fmt::Display for LieLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            LieFamily::SU2 | LieFamily::SO3 => f.write_str(&spin(self.twice_l)),
            LieFamily::O3 => write!(f, "({},{})", self.parity, spin(self.twice_l)),
            LieFamily::U2 => write!(f, "({},{})", self.charge, spin(self.twice_l)),
        }
    }
}

/// `a x b`: spins `|l - l'|, .., l + l'`, with parities added mod 2 (O(3))
/// and charges added (U(2)).
pub fn lie_fusion(a: &LieLabel, b: &LieLabel) -> Result<Vec<LieLabel>> {
    if a.family != b.family {
        return Err(Error::FamilyMismatch);
    }
    let lo = a.twice_l.abs_diff(b.twice_l);
    let hi = a.twice_l + b.twice_l;
    Ok((lo..=hi)
        .step_by(2)
        .map(|twice_l| LieLabel {
            family: a.family,
            twice_l,
            parity: (a.parity + b.parity) % 2,
            charge: a.charge + b.charge,
        })
        .collect())
}

/// All labels of `family` with `l <= lmax` (and `|m| <= 2 lmax` for U(2)).
pub fn window(family: LieFamily, lmax: u32) -> Vec<LieLabel> {
    let top = 2 * lmax;
    match family {
        LieFamily::SU2 => (0..=top).map(LieLabel::su2).collect(),
        LieFamily::SO3 => (0..=lmax).map(LieLabel::so3).collect(),
        LieFamily::O3 => (0..2u8)
            .flat_map(|e| (0..=lmax).map(move |l| (e, l)))
            .map(|(e, l)| LieLabel::o3(e, l).expect("valid parity"))
            .collect(),
        LieFamily::U2 => {
            let bound = i64::from(top);
            (-bound..=bound)
                .flat_map(|m| (0..=top).map(move |t| (m, t)))
                .filter_map(|(m, t)| LieLabel::u2(m, t).ok())
                .collect()
        }
    }
}

#[derive(Debug, Clone)]
pub struct TruncatedChainReport {
    pub family: LieFamily,
    pub lmax: u32,
    pub labels: Vec<LieLabel>,
    /// Fixpoint classes as indices into `labels`.
    pub partition: Partition,
    /// Closed-form invariant value of each class.
    pub class_keys: Vec<i64>,
    pub invariant: &'static str,
    pub group: ClassGroup,
    /// Every in-window output of every in-window pair lies in the class
    /// predicted by the class product.
    pub stable: bool,
    /// The invariant is additive on every in-window fusion.
    pub invariant_is_homomorphism: bool,
}

impl TruncatedChainReport {
    pub fn class_of(&self, label: &LieLabel) -> Option<usize> {
        self.labels
            .binary_search(label)
            .ok()
            .map(|i| self.partition.class_of(i))
    }

    pub fn class_count(&self) -> usize {
        self.partition.class_count()
    }
}

/// Chain classes on the window `l <= lmax`, with the stability certificate.
pub fn lie_chain_classes(family: LieFamily, lmax: u32) -> Result<TruncatedChainReport> {
    if lmax < 2 {
        return Err(Error::InvalidArgument(alloc::format!("L_max must be at least 2, got {lmax}")));
    }
    let mut labels = window(family, lmax);
    labels.sort();
    let index: BTreeMap<LieLabel, usize> = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let in_window = |a: usize, b: usize, out: &mut Vec<usize>| {
        let products = lie_fusion(&labels[a], &labels[b]).expect("same family");
        out.extend(products.iter().filter_map(|p| index.get(p).copied()));
    };
    let singletons = Partition::from_key(labels.len(), |x| x);
    let partition = fixpoint_partition(&singletons, in_window);
    let expected = Partition::from_key(labels.len(), |x| labels[x].class_invariant());
    if partition != expected {
        return Err(Error::WindowTooSmall(alloc::format!(
            "{} window L_max={lmax}: fixpoint gives {} classes, invariant gives {}",
            family.name(),
            partition.class_count(),
            expected.class_count()
        )));
    }
    let class_keys: Vec<i64> = partition
        .classes()
        .iter()
        .map(|c| labels[c[0]].class_invariant())
        .collect();
    let key_to_class: BTreeMap<i64, usize> =
        class_keys.iter().enumerate().map(|(c, &k)| (k, c)).collect();
    let group = family.class_group();
    let mut stable = true;
    let mut homomorphism = true;
    let mut buf = Vec::new();
    for a in 0..labels.len() {
        for b in 0..labels.len() {
            let ka = class_keys[partition.class_of(a)];
            let kb = class_keys[partition.class_of(b)];
            let predicted_key = group.combine(ka, kb);
            let predicted = key_to_class.get(&predicted_key).copied();
            buf.clear();
            in_window(a, b, &mut buf);
            for &k in &buf {
                if Some(partition.class_of(k)) != predicted {
                    stable = false;
                }
                if group.combine(labels[a].class_invariant(), labels[b].class_invariant())
                    != labels[k].class_invariant()
                {
                    homomorphism = false;
                }
            }
        }
    }
    Ok(TruncatedChainReport {
        family,
        lmax,
        labels,
        partition,
        class_keys,
        invariant: family.invariant_description(),
        group,
        stable,
        invariant_is_homomorphism: homomorphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clebsch_gordan_examples() {
        let half = LieLabel::su2(1);
        assert_eq!(lie_fusion(&half, &half).unwrap(), alloc::vec![LieLabel::su2(0), LieLabel::su2(2)]);
        let l = LieLabel::su2(5);
        assert_eq!(lie_fusion(&LieLabel::su2(0), &l).unwrap(), alloc::vec![l]);
        let u = LieLabel::u2(1, 1).unwrap();
        assert_eq!(
            lie_fusion(&u, &u).unwrap(),
            alloc::vec![LieLabel::u2(2, 0).unwrap(), LieLabel::u2(2, 2).unwrap()]
        );
        assert_eq!(lie_fusion(&half, &LieLabel::so3(1)), Err(Error::FamilyMismatch));
        let o = LieLabel::o3(1, 1).unwrap();
        assert!(lie_fusion(&o, &o).unwrap().iter().all(|x| x.parity() == 0));
    }

    #[test]
    fn label_validation() {
        assert!(LieLabel::u2(1, 0).is_err());
        assert!(LieLabel::o3(2, 0).is_err());
        assert_eq!(LieLabel::u2(-1, 1).unwrap().to_string(), "(-1,1/2)");
    }

    #[test]
    fn window_sizes() {
        assert_eq!(window(LieFamily::SU2, 2).len(), 5);
        assert_eq!(window(LieFamily::SO3, 2).len(), 3);
        assert_eq!(window(LieFamily::O3, 2).len(), 6);
        // 2l in 0..=4, m in -4..=4 with matching parity
        assert_eq!(window(LieFamily::U2, 2).len(), 3 * 5 + 2 * 4);
    }

    #[test]
    fn class_counts() {
        let su2 = lie_chain_classes(LieFamily::SU2, 4).unwrap();
        assert_eq!(su2.class_count(), 2);
        assert!(su2.stable);
        assert_eq!(lie_chain_classes(LieFamily::SO3, 4).unwrap().class_count(), 1);
        assert_eq!(lie_chain_classes(LieFamily::O3, 4).unwrap().class_count(), 2);
        let u2 = lie_chain_classes(LieFamily::U2, 3).unwrap();
        assert_eq!(u2.class_count(), 13);
        assert!(lie_chain_classes(LieFamily::SU2, 1).is_err());
    }
}
