//! Built-in group families and permutation closure.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::perm::Permutation;
use super::FiniteGroup;
use crate::error::{Error, Result};

pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

/// Closure of `generators` under composition.
///
/// Element 0 is the identity; the rest are numbered breadth-first by
/// generator words (word `w` is extended by each generator in turn) and
/// named after their shortest word, e.g. `a^2b`.
pub fn from_permutations(generators: &[Permutation], cap: usize) -> Result<FiniteGroup> {
    let degree = generators.iter().map(Permutation::degree).max().unwrap_or(0);
    let gens: Vec<Permutation> = generators.iter().map(|g| g.padded(degree)).collect();
    let mut elements = alloc::vec![Permutation::identity(degree)];
    let mut words: Vec<Vec<usize>> = alloc::vec![Vec::new()];
    let mut index: BTreeMap<Permutation, usize> = BTreeMap::new();
    index.insert(elements[0].clone(), 0);
    let mut head = 0;
    while head < elements.len() {
        for (gi, g) in gens.iter().enumerate() {
            let next = elements[head].then(g);
            if index.contains_key(&next) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::ClosureCapExceeded { cap });
            }
            let mut word = words[head].clone();
            word.push(gi);
            index.insert(next.clone(), elements.len());
            elements.push(next);
            words.push(word);
        }
        head += 1;
    }
    let order = elements.len();
    let mut mul = Vec::with_capacity(order * order);
    for a in &elements {
        for b in &elements {
            mul.push(index[&a.then(b)]);
        }
    }
    let names = words.iter().map(|w| word_name(w)).collect();
    Ok(FiniteGroup::from_trusted_table(order, mul, 0, names))
}

fn generator_letter(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        alloc::format!("g{}", i + 1)
    }
}

fn word_name(word: &[usize]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    let mut out = String::new();
    let mut i = 0;
    while i < word.len() {
        let mut run = 1;
        while i + run < word.len() && word[i + run] == word[i] {
            run += 1;
        }
        out.push_str(&generator_letter(word[i]));
        if run > 1 {
            out.push_str(&alloc::format!("^{run}"));
        }
        i += run;
    }
    out
}

fn power_name(base: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => base.to_string(),
        _ => alloc::format!("{base}^{k}"),
    }
}

/// Names `a^i b^j` in normal form; `e` for the identity.
fn normal_form_name(i: usize, j: usize) -> String {
    let s = alloc::format!("{}{}", power_name("a", i), power_name("b", j));
    if s.is_empty() {
        "e".to_string()
    } else {
        s
    }
}

/// The dihedral group of order `2m`, `a^m = b^2 = e`, `bab = a^{-1}`.
///
/// Element `a^i b^j` has index `i + m*j`.
pub fn dihedral(m: usize) -> FiniteGroup {
    assert!(m >= 2, "dihedral group needs m >= 2");
    let order = 2 * m;
    let mut mul = Vec::with_capacity(order * order);
    for x in 0..order {
        let (i, j) = (x % m, x / m);
        for y in 0..order {
            let (k, l) = (y % m, y / m);
            // b^j a^k = a^{(-1)^j k} b^j
            let shifted = if j == 0 { k } else { (m - k) % m };
            mul.push((i + shifted) % m + m * ((j + l) % 2));
        }
    }
    let names = (0..order).map(|x| normal_form_name(x % m, x / m)).collect();
    FiniteGroup::from_trusted_table(order, mul, 0, names)
}

/// The generalized quaternion group of order `4m`:
/// `a^{2m} = b^4 = e`, `b^2 = a^m`, `bab^{-1} = a^{-1}`.
///
/// Element `a^i b^j` (`0 <= i < 2m`, `j` in {0,1}) has index `i + 2m*j`.
pub fn quaternion(m: usize) -> FiniteGroup {
    assert!(m >= 2, "quaternion group needs m >= 2");
    let n = 2 * m;
    let order = 4 * m;
    let mut mul = Vec::with_capacity(order * order);
    for x in 0..order {
        let (i, j) = (x % n, x / n);
        for y in 0..order {
            let (k, l) = (y % n, y / n);
            let shifted = if j == 0 { k } else { (n - k) % n };
            let carry = if j == 1 && l == 1 { m } else { 0 };
            mul.push((i + shifted + carry) % n + n * ((j + l) % 2));
        }
    }
    let names = (0..order).map(|x| normal_form_name(x % n, x / n)).collect();
    FiniteGroup::from_trusted_table(order, mul, 0, names)
}

/// The cyclic group of order `n`; element `k` is `a^k`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group needs n >= 1");
    let mul = (0..n * n).map(|x| (x / n + x % n) % n).collect();
    let names = (0..n)
        .map(|k| if k == 0 { "e".to_string() } else { power_name("a", k) })
        .collect();
    FiniteGroup::from_trusted_table(n, mul, 0, names)
}

fn check_degree(n: usize) -> Result<()> {
    if (1..=6).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(alloc::format!(
            "permutation group degree must be in 1..=6, got {n}"
        )))
    }
}

/// The symmetric group on `n <= 6` points, generated by `(1 2)` and `(1 2 .. n)`.
pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    check_degree(n)?;
    if n == 1 {
        return from_permutations(&[Permutation::identity(1)], DEFAULT_CLOSURE_CAP);
    }
    let swap = Permutation::from_images(
        (0..n).map(|x| match x { 0 => 1, 1 => 0, _ => x }).collect(),
    )?;
    let cycle = Permutation::from_images((0..n).map(|x| (x + 1) % n).collect())?;
    from_permutations(&[swap, cycle], DEFAULT_CLOSURE_CAP)
}

/// The alternating group on `n <= 6` points, generated by the 3-cycles `(1 2 k)`.
pub fn alternating(n: usize) -> Result<FiniteGroup> {
    check_degree(n)?;
    if n < 3 {
        return from_permutations(&[Permutation::identity(n)], DEFAULT_CLOSURE_CAP);
    }
    let gens: Vec<Permutation> = (2..n)
        .map(|k| {
            Permutation::from_images(
                (0..n)
                    .map(|x| match x {
                        0 => 1,
                        1 => k,
                        x if x == k => 0,
                        x => x,
                    })
                    .collect(),
            )
        })
        .collect::<Result<_>>()?;
    from_permutations(&gens, DEFAULT_CLOSURE_CAP)
}

/// `G x H` with `(g, h)` at index `g * |H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (ng, nh) = (g.order(), h.order());
    let order = ng * nh;
    let mut mul = Vec::with_capacity(order * order);
    for x in 0..order {
        for y in 0..order {
            mul.push(g.mul(x / nh, y / nh) * nh + h.mul(x % nh, y % nh));
        }
    }
    let identity = g.identity() * nh + h.identity();
    let names = (0..order)
        .map(|x| alloc::format!("({},{})", g.name(x / nh), h.name(x % nh)))
        .collect();
    FiniteGroup::from_trusted_table(order, mul, identity, names)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perms(text: &str) -> Vec<Permutation> {
        super::super::perm::parse_generator_list(text).unwrap()
    }

    #[test]
    fn closure_examples() {
        let s3 = from_permutations(&perms("(1 2),(1 2 3)"), DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.identity(), 0);
        let trivial = from_permutations(&perms("()"), DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(trivial.order(), 1);
        let d8 = from_permutations(&perms("(1 2 3 4),(2 4)"), DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(d8.order(), 8);
        assert_eq!(d8.center().len(), 2);
    }

    #[test]
    fn closure_cap_is_enforced() {
        let err = from_permutations(&perms("(1 2),(1 2 3 4 5)"), 100).unwrap_err();
        assert_eq!(err, Error::ClosureCapExceeded { cap: 100 });
    }

    #[test]
    fn word_names() {
        let s3 = from_permutations(&perms("(1 2),(1 2 3)"), DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(s3.name(0), "e");
        assert_eq!(s3.name(1), "a");
        assert_eq!(s3.name(2), "b");
        assert!(s3.names().iter().any(|n| n == "b^2"));
    }

    #[test]
    fn dihedral_relations_and_center() {
        for m in 2..10 {
            let g = dihedral(m);
            let (a, b) = (1, m);
            assert_eq!(g.order(), 2 * m);
            assert_eq!(g.element_order(a), m);
            assert_eq!(g.mul(b, b), 0);
            assert_eq!(g.mul(g.mul(b, a), b), g.power(a, m - 1));
            let expected = if m == 2 {
                (0..4).collect::<Vec<_>>()
            } else if m % 2 == 0 {
                alloc::vec![0, m / 2]
            } else {
                alloc::vec![0]
            };
            assert_eq!(g.center(), expected, "m = {m}");
        }
        assert!(dihedral(2).is_abelian());
    }

    #[test]
    fn quaternion_relations_and_center() {
        for m in 2..8 {
            let g = quaternion(m);
            let (a, b) = (1, 2 * m);
            assert_eq!(g.order(), 4 * m);
            assert_eq!(g.mul(b, b), g.power(a, m));
            assert_eq!(g.power(b, 4), 0);
            assert_eq!(g.mul(g.mul(b, a), g.inverse(b)), g.power(a, 2 * m - 1));
            assert_eq!(g.center(), alloc::vec![0, m]);
        }
        g_check(&quaternion(3));
    }

    fn g_check(g: &FiniteGroup) {
        g.check_axioms(1).unwrap();
    }

    #[test]
    fn small_families() {
        let s3 = symmetric(3).unwrap();
        assert_eq!((s3.order(), s3.class_count()), (6, 3));
        assert_eq!(s3.center(), alloc::vec![0]);
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(symmetric(6).unwrap().order(), 720);
        assert_eq!(alternating(4).unwrap().order(), 12);
        assert_eq!(alternating(5).unwrap().class_count(), 5);
        assert_eq!(alternating(2).unwrap().order(), 1);
        assert!(symmetric(7).is_err());
        let c5 = cyclic(5);
        assert_eq!(c5.class_count(), 5);
        assert_eq!(c5.center().len(), 5);
        for g in [dihedral(5), quaternion(2), cyclic(7), symmetric(4).unwrap()] {
            g_check(&g);
        }
    }

    #[test]
    fn direct_product_tables() {
        let p = direct_product(&cyclic(2), &cyclic(3));
        assert_eq!(p.order(), 6);
        assert!(p.is_abelian());
        assert_eq!(p.element_order(p.mul(1, 3)), 6);
        g_check(&p);
    }
}
