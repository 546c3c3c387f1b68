//! Closed-form characters of the dihedral, generalized quaternion and cyclic
//! families, with the conventional irrep names (`1`, `chi1..chi3`, `D1..`).
//!
//! These are independent of the class-matrix computation and serve as a
//! cross-check and as a naming source for reports.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_complex::Complex64;

use super::CharacterTable;
use crate::error::{Error, Result};
use crate::linalg::root_of_unity;

#[derive(Debug, Clone, PartialEq)]
pub struct NamedCharacter {
    pub name: String,
    pub dim: usize,
    /// Value on every element, by element index.
    pub values: Vec<Complex64>,
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn sign(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn two_dim(name: String, order: usize, rotations: usize, angle_den: i64, k: usize) -> NamedCharacter {
    let values = (0..order)
        .map(|x| {
            if x < rotations {
                real(2.0 * root_of_unity(k as i64 * x as i64, angle_den).re)
            } else {
                real(0.0)
            }
        })
        .collect();
    NamedCharacter {
        name,
        dim: 2,
        values,
    }
}

/// Characters of the dihedral group of order `2m` in the numbering of
/// [`crate::group::dihedral`]. For even `m`: `chi1(a)=1, chi1(b)=-1`,
/// `chi2(a)=-1, chi2(b)=1`, `chi3 = chi1 chi2`; `D_k(a^i)=2cos(2 pi k i/m)`
/// for `k = 1..m/2-1`. For odd `m` only `1`, `chi1` and `D_1..D_{(m-1)/2}`.
pub fn dihedral_characters(m: usize) -> Vec<NamedCharacter> {
    let order = 2 * m;
    let linear = |name: &str, sa: bool, sb: bool| NamedCharacter {
        name: name.to_string(),
        dim: 1,
        values: (0..order)
            .map(|x| {
                let (i, j) = (x % m, x / m);
                let mut v = 1.0;
                if sa {
                    v *= sign(i);
                }
                if sb {
                    v *= sign(j);
                }
                real(v)
            })
            .collect(),
    };
    let mut out = alloc::vec![linear("1", false, false), linear("chi1", false, true)];
    let top = if m % 2 == 0 {
        out.push(linear("chi2", true, false));
        out.push(linear("chi3", true, true));
        (m - 2) / 2
    } else {
        (m - 1) / 2
    };
    for k in 1..=top {
        out.push(two_dim(alloc::format!("D{k}"), order, m, m as i64, k));
    }
    out
}

/// Characters of the generalized quaternion group of order `4m` in the
/// numbering of [`crate::group::quaternion`]. Linear characters send `a` to
/// `s = +-1` and `b` to `beta` with `beta^2 = s^m`; `D_k(a^i) = 2cos(pi k i/m)`
/// for `k = 1..m-1`.
pub fn quaternion_characters(m: usize) -> Vec<NamedCharacter> {
    let n = 2 * m;
    let order = 4 * m;
    let i_unit = Complex64::new(0.0, 1.0);
    let beta_minus = if m % 2 == 0 { real(1.0) } else { i_unit };
    let linear = |name: &str, s: f64, beta: Complex64| NamedCharacter {
        name: name.to_string(),
        dim: 1,
        values: (0..order)
            .map(|x| {
                let (i, j) = (x % n, x / n);
                let a_part = if i % 2 == 0 { 1.0 } else { s };
                if j == 0 {
                    real(a_part)
                } else {
                    beta * a_part
                }
            })
            .collect(),
    };
    let mut out = alloc::vec![
        linear("1", 1.0, real(1.0)),
        linear("chi1", 1.0, real(-1.0)),
        linear("chi2", -1.0, beta_minus),
        linear("chi3", -1.0, -beta_minus),
    ];
    for k in 1..m {
        out.push(two_dim(alloc::format!("D{k}"), order, n, n as i64, k));
    }
    out
}

/// `chi_j(a^k) = exp(2 pi i jk/n)`; `chi_0` is named `1`.
pub fn cyclic_characters(n: usize) -> Vec<NamedCharacter> {
    (0..n)
        .map(|j| NamedCharacter {
            name: if j == 0 { "1".to_string() } else { alloc::format!("chi{j}") },
            dim: 1,
            values: (0..n)
                .map(|k| root_of_unity(j as i64 * k as i64, n as i64))
                .collect(),
        })
        .collect()
}

/// Names of the table's irreps, matched against `named` by class values.
///
/// Fails when the two tables disagree anywhere beyond `tol`, which makes
/// this the cross-check between the closed forms and the computed table.
pub fn label_irreps(
    table: &CharacterTable,
    named: &[NamedCharacter],
    tol: f64,
) -> Result<Vec<String>> {
    if named.len() != table.rank() {
        return Err(Error::NumericalResidual {
            context: alloc::format!(
                "closed-form table has {} characters, computed table has {}",
                named.len(),
                table.rank()
            ),
            residual: 1.0,
            tolerance: tol,
        });
    }
    let classes = table.group().classes();
    let mut used = alloc::vec![false; named.len()];
    let mut names = Vec::with_capacity(table.rank());
    for irrep in table.irreps() {
        let mut best = (f64::INFINITY, usize::MAX);
        for (idx, nc) in named.iter().enumerate() {
            let dev = classes
                .iter()
                .enumerate()
                .map(|(c, members)| {
                    // every member of the class must agree with the class value
                    members
                        .iter()
                        .map(|&x| (nc.values[x] - irrep.values[c]).norm())
                        .fold(0.0, f64::max)
                })
                .fold(0.0, f64::max);
            if dev < best.0 {
                best = (dev, idx);
            }
        }
        if best.0 > tol || used[best.1] || named[best.1].dim != irrep.dim {
            return Err(Error::NumericalResidual {
                context: "closed-form character comparison".to_string(),
                residual: best.0,
                tolerance: tol,
            });
        }
        used[best.1] = true;
        names.push(named[best.1].name.clone());
    }
    Ok(names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::character_table;
    use crate::group::{cyclic, dihedral, quaternion};

    #[test]
    fn closed_forms_match_computed_tables() {
        for m in 2..=12 {
            let t = character_table(&dihedral(m)).unwrap();
            let names = label_irreps(&t, &dihedral_characters(m), 1e-6).unwrap();
            assert_eq!(names[0], "1");
        }
        for m in 2..=8 {
            let t = character_table(&quaternion(m)).unwrap();
            label_irreps(&t, &quaternion_characters(m), 1e-6).unwrap();
        }
        for n in 1..=12 {
            let t = character_table(&cyclic(n)).unwrap();
            label_irreps(&t, &cyclic_characters(n), 1e-6).unwrap();
        }
    }

    #[test]
    fn mismatched_family_is_rejected() {
        // same order, different character values
        let t = character_table(&quaternion(3)).unwrap();
        assert!(label_irreps(&t, &dihedral_characters(6), 1e-6).is_err());
    }
}
