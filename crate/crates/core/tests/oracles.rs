//! Cross-checks against independent oracles and frozen reference values.

use chainlab_core::chain::{chain_group, chain_partition, classify_abelian, refine_partition, Partition};
use chainlab_core::chartable::analytic::{cyclic_characters, dihedral_characters, label_irreps, quaternion_characters};
use chainlab_core::chartable::character_table;
use chainlab_core::fusion::fusion_coefficients;
use chainlab_core::group::{
    alternating, cyclic, dihedral, direct_product, from_permutations, quaternion, symmetric, FiniteGroup,
    parse_generator_list, DEFAULT_CLOSURE_CAP,
};

fn builtins() -> Vec<(String, FiniteGroup)> {
    let mut out = Vec::new();
    for m in 2..=12 {
        out.push((format!("D{}", 2 * m), dihedral(m)));
    }
    for m in 2..=6 {
        out.push((format!("Q{}", 4 * m), quaternion(m)));
    }
    for n in 2..=12 {
        out.push((format!("Z{n}"), cyclic(n)));
    }
    out.push(("S3".into(), symmetric(3).unwrap()));
    out.push(("S4".into(), symmetric(4).unwrap()));
    out.push(("A4".into(), alternating(4).unwrap()));
    out
}

/// Partition of the dual by central characters, computed without fusion.
fn central_character_partition(g: &FiniteGroup) -> Partition {
    let table = character_table(g).unwrap();
    let keys: Vec<Vec<(i64, i64)>> = (0..table.rank())
        .map(|d| {
            table
                .central_character_vector(d)
                .unwrap()
                .iter()
                .map(|z| ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64))
                .collect()
        })
        .collect();
    Partition::from_key(table.rank(), |d| keys[d].clone())
}

#[test]
fn chain_partition_matches_central_characters() {
    for (name, g) in builtins() {
        let ring = fusion_coefficients(&character_table(&g).unwrap()).unwrap();
        let chain = chain_partition(&ring);
        assert_eq!(chain, central_character_partition(&g), "{name}");
        assert_eq!(chain.class_count(), g.center().len(), "{name}");
        assert_eq!(refine_partition(&ring, &chain), chain, "{name}");
    }
}

#[test]
fn closed_form_tables_agree() {
    for m in 2..=12 {
        let t = character_table(&dihedral(m)).unwrap();
        label_irreps(&t, &dihedral_characters(m), 1e-9).unwrap();
    }
    for m in 2..=6 {
        let t = character_table(&quaternion(m)).unwrap();
        label_irreps(&t, &quaternion_characters(m), 1e-9).unwrap();
    }
    for n in 2..=12 {
        let t = character_table(&cyclic(n)).unwrap();
        label_irreps(&t, &cyclic_characters(n), 1e-9).unwrap();
    }
}

/// Element-order histogram, the brute-force isomorphism invariant of a
/// finite abelian group.
fn order_histogram(table: &[Vec<usize>]) -> Vec<usize> {
    let n = table.len();
    let id = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x)).unwrap();
    let mut hist = vec![0; n + 1];
    for x in 0..n {
        let (mut y, mut k) = (x, 1);
        while y != id {
            y = table[y][x];
            k += 1;
        }
        hist[k] += 1;
    }
    hist
}

fn model_table(factors: &[u64]) -> Vec<Vec<usize>> {
    let mut g = cyclic(1);
    for &d in factors {
        g = direct_product(&g, &cyclic(d as usize));
    }
    g.table()
}

#[test]
fn invariant_factors_match_order_statistics() {
    let cases: Vec<FiniteGroup> = vec![
        direct_product(&cyclic(2), &cyclic(2)),
        direct_product(&cyclic(4), &cyclic(6)),
        direct_product(&direct_product(&cyclic(2), &cyclic(3)), &cyclic(4)),
        direct_product(&cyclic(9), &cyclic(3)),
        cyclic(12),
    ];
    for g in cases {
        let table = g.table();
        let factors = classify_abelian(&table).unwrap();
        assert_eq!(factors.iter().product::<u64>() as usize, g.order());
        assert!(factors.windows(2).all(|w| w[1] % w[0] == 0));
        assert_eq!(order_histogram(&table), order_histogram(&model_table(&factors)));
    }
}

#[test]
fn klein_four_from_two_presentations() {
    let v4 = dihedral(2);
    let prod = direct_product(&cyclic(2), &cyclic(2));
    let perms = from_permutations(
        &parse_generator_list("(1 2),(3 4)").unwrap(),
        DEFAULT_CLOSURE_CAP,
    )
    .unwrap();
    for g in [v4, prod, perms] {
        let chain = chain_group(&fusion_coefficients(&character_table(&g).unwrap()).unwrap()).unwrap();
        assert_eq!(chain.invariant_factors(), &[2, 2]);
    }
}

/// Decomposition of S4 products, with irreps identified by dimension and
/// the character value on a transposition.
#[test]
fn s4_products_frozen() {
    let g = symmetric(4).unwrap();
    let t = character_table(&g).unwrap();
    let ring = fusion_coefficients(&t).unwrap();
    // (1 2) is a transposition in every numbering that starts from the generators
    let transposition = (0..g.order())
        .find(|&x| g.element_order(x) == 2 && g.classes()[g.class_of(x)].len() == 6)
        .unwrap();
    let find = |dim: usize, sign: f64| {
        (0..t.rank())
            .find(|&d| t.irreps()[d].dim == dim && (t.character(d, transposition).re - sign).abs() < 1e-9)
            .unwrap()
    };
    let (one, sgn, two, std, std_sgn) = (find(1, 1.0), find(1, -1.0), find(2, 0.0), find(3, 1.0), find(3, -1.0));
    let decompose = |a: usize, b: usize| -> Vec<usize> {
        let mut v: Vec<usize> = ring
            .support(a, b)
            .iter()
            .flat_map(|&k| std::iter::repeat_n(k, ring.n(a, b, k) as usize))
            .collect();
        v.sort();
        v
    };
    let sorted = |mut v: Vec<usize>| {
        v.sort();
        v
    };
    assert_eq!(decompose(two, two), sorted(vec![one, sgn, two]));
    assert_eq!(decompose(two, std), sorted(vec![std, std_sgn]));
    assert_eq!(decompose(std, std), sorted(vec![one, two, std, std_sgn]));
    assert_eq!(decompose(std, std_sgn), sorted(vec![sgn, two, std, std_sgn]));
    assert_eq!(decompose(sgn, std), vec![std_sgn]);
}

#[test]
fn dihedral_eight_and_quaternion_eight_share_a_table() {
    // same character table, different groups: the chain group only sees the dual
    let d8 = character_table(&dihedral(4)).unwrap();
    let q8 = character_table(&quaternion(2)).unwrap();
    assert_eq!(d8.dims(), q8.dims());
    assert_eq!(fusion_coefficients(&d8).unwrap(), fusion_coefficients(&q8).unwrap());
    let elements_of_order_2 = |g: &FiniteGroup| (0..g.order()).filter(|&x| g.element_order(x) == 2).count();
    assert_eq!(elements_of_order_2(&dihedral(4)), 5);
    assert_eq!(elements_of_order_2(&quaternion(2)), 1);
}
