//! A finite group acting on a matrix algebra by `alpha_g = Ad U_g`.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::chartable::{character_table, CharacterTable};
use crate::error::{Error, Result};
use crate::group::{cyclic, FiniteGroup, DEFAULT_CLOSURE_CAP};
use crate::lab::algebra::Subalgebra;
use crate::linalg::{self, CMatrix, ONE};

/// Tolerance for unitarity, the homomorphism property and invariance of `F`.
pub const SYSTEM_TOLERANCE: f64 = 1e-9;

/// Grid used to recognize equal matrices during closure.
const CLOSURE_GRID: f64 = 1e6;

#[derive(Debug, Clone)]
pub struct MatrixDynamicalSystem {
    group: FiniteGroup,
    rep: Vec<CMatrix>,
    algebra: Subalgebra,
    table: CharacterTable,
}

impl MatrixDynamicalSystem {
    /// Validates unitarity, `U_e = 1`, `U_g U_h = U_gh`, and `alpha_g(F) = F`.
    pub fn new(group: FiniteGroup, rep: Vec<CMatrix>, algebra: Subalgebra) -> Result<Self> {
        let n = algebra.n();
        if rep.len() != group.order() {
            return Err(Error::InvalidArgument(alloc::format!(
                "{} matrices for a group of order {}",
                rep.len(),
                group.order()
            )));
        }
        if rep.iter().any(|u| u.nrows() != n || u.ncols() != n) {
            return Err(Error::InvalidArgument(alloc::format!("representation is not {n}x{n}")));
        }
        let id = CMatrix::identity(n, n);
        for (g, u) in rep.iter().enumerate() {
            if linalg::max_abs(&(u * u.adjoint() - &id)) > SYSTEM_TOLERANCE {
                return Err(Error::NotUnitary(alloc::format!("U({})", group.name(g))));
            }
        }
        if linalg::max_abs(&(&rep[group.identity()] - &id)) > SYSTEM_TOLERANCE {
            return Err(Error::NotAHomomorphism("U(e) is not the identity".to_string()));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let residual = linalg::max_abs(&(&rep[g] * &rep[h] - &rep[group.mul(g, h)]));
                if residual > SYSTEM_TOLERANCE {
                    return Err(Error::NotAHomomorphism(alloc::format!(
                        "U({}) U({}) != U({})",
                        group.name(g),
                        group.name(h),
                        group.name(group.mul(g, h))
                    )));
                }
            }
        }
        for (g, u) in rep.iter().enumerate() {
            for b in algebra.basis() {
                if !algebra.contains(&(u * b * u.adjoint()), SYSTEM_TOLERANCE) {
                    return Err(Error::NotInvariant(alloc::format!(
                        "alpha_{} does not preserve the algebra",
                        group.name(g)
                    )));
                }
            }
        }
        let table = character_table(&group)?;
        Ok(Self {
            group,
            rep,
            algebra,
            table,
        })
    }

    /// Left regular representation `U_g e_h = e_gh` acting on `M_|G|`.
    pub fn regular(group: FiniteGroup) -> Result<Self> {
        let n = group.order();
        let rep = (0..n)
            .map(|g| {
                let mut u = CMatrix::zeros(n, n);
                for h in 0..n {
                    u[(group.mul(g, h), h)] = ONE;
                }
                u
            })
            .collect();
        Self::new(group, rep, Subalgebra::full(n))
    }

    /// `Z2` acting on `M_k + M_k` by exchanging the blocks.
    pub fn swap_blocks(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("block size must be positive".to_string()));
        }
        let mut swap = CMatrix::zeros(2 * k, 2 * k);
        for i in 0..k {
            swap[(i, k + i)] = ONE;
            swap[(k + i, i)] = ONE;
        }
        let rep = alloc::vec![CMatrix::identity(2 * k, 2 * k), swap];
        Self::new(cyclic(2), rep, Subalgebra::block_diagonal(&[k, k])?)
    }

    /// `Z2` acting on `M_2` by `Ad diag(1, -1)`.
    pub fn sign_diagonal() -> Result<Self> {
        let rep = alloc::vec![
            CMatrix::identity(2, 2),
            CMatrix::from_diagonal(&linalg::CVector::from_vec(alloc::vec![ONE, -ONE])),
        ];
        Self::new(cyclic(2), rep, Subalgebra::full(2))
    }

    /// `group` acting trivially on `M_n`.
    pub fn trivial_action(group: FiniteGroup, n: usize) -> Result<Self> {
        let rep = alloc::vec![CMatrix::identity(n, n); group.order()];
        Self::new(group, rep, Subalgebra::full(n))
    }

    /// The group generated by unitary `generators` (closed numerically, up to
    /// `cap` elements) acting on `algebra`.
    pub fn from_generators(generators: &[CMatrix], algebra: Subalgebra, cap: usize) -> Result<Self> {
        let n = algebra.n();
        if generators.iter().any(|g| g.nrows() != n || g.ncols() != n) {
            return Err(Error::InvalidArgument(alloc::format!("generators must be {n}x{n}")));
        }
        let key = |m: &CMatrix| -> Vec<(i64, i64)> {
            m.iter()
                .map(|z| {
                    (
                        libm::round(z.re * CLOSURE_GRID) as i64,
                        libm::round(z.im * CLOSURE_GRID) as i64,
                    )
                })
                .collect()
        };
        let mut elements = alloc::vec![CMatrix::identity(n, n)];
        let mut index: BTreeMap<Vec<(i64, i64)>, usize> = BTreeMap::new();
        index.insert(key(&elements[0]), 0);
        let mut frontier = 0;
        while frontier < elements.len() {
            for gen in generators {
                let next = &elements[frontier] * gen;
                let k = key(&next);
                if let alloc::collections::btree_map::Entry::Vacant(slot) = index.entry(k) {
                    if elements.len() >= cap {
                        return Err(Error::ClosureCapExceeded { cap });
                    }
                    slot.insert(elements.len());
                    elements.push(next);
                }
            }
            frontier += 1;
        }
        let order = elements.len();
        let mut table = alloc::vec![alloc::vec![0; order]; order];
        for (a, row) in table.iter_mut().enumerate() {
            for (b, slot) in row.iter_mut().enumerate() {
                let product = &elements[a] * &elements[b];
                *slot = *index.get(&key(&product)).ok_or_else(|| {
                    Error::NotAGroup("matrix closure is numerically unstable".to_string())
                })?;
            }
        }
        let names = (0..order).map(|i| alloc::format!("g{i}")).collect();
        let group = FiniteGroup::from_table(table, Some(names))?;
        Self::new(group, elements, algebra)
    }

    pub fn from_generators_default(generators: &[CMatrix], algebra: Subalgebra) -> Result<Self> {
        Self::from_generators(generators, algebra, DEFAULT_CLOSURE_CAP)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn algebra(&self) -> &Subalgebra {
        &self.algebra
    }

    pub fn n(&self) -> usize {
        self.algebra.n()
    }

    pub fn unitary(&self, g: usize) -> &CMatrix {
        &self.rep[g]
    }

    /// `alpha_g(F) = U_g F U_g^*`.
    pub fn act(&self, g: usize, f: &CMatrix) -> CMatrix {
        &self.rep[g] * f * self.rep[g].adjoint()
    }

    /// `alpha_g(F)` for every `g`, in element order.
    pub fn orbit(&self, f: &CMatrix) -> Vec<CMatrix> {
        (0..self.group.order()).map(|g| self.act(g, f)).collect()
    }

    pub fn irrep_count(&self) -> usize {
        self.table.rank()
    }

    pub fn irrep_dim(&self, d: usize) -> usize {
        self.table.irreps()[d].dim
    }
}
