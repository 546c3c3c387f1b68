use chainlab_core::center_action::{
    action_on_center, composition_consistency, symmetry_obstruction, ChainHomomorphism, FunctionMatrix,
    MultiplicityVector,
};
use chainlab_core::chain::{chain_group, chain_partition, classify_abelian, refine_partition};
use chainlab_core::chartable::character_table;
use chainlab_core::fusion::{dimension_checks, fusion_coefficients, FusionRing};
use chainlab_core::group::{alternating, cyclic, dihedral, direct_product, quaternion, symmetric, FiniteGroup, Permutation};
use chainlab_core::lab::{self, LabOptions, MatrixDynamicalSystem};
use chainlab_core::lie::{lie_fusion, LieFamily, LieLabel};
use chainlab_core::linalg::CMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

fn small_group(kind: u8, k: usize) -> FiniteGroup {
    match kind % 5 {
        0 => cyclic(2 + k % 7),
        1 => dihedral(2 + k % 5),
        2 => quaternion(2 + k % 3),
        3 => symmetric(3 + k % 2).unwrap(),
        _ => alternating(4).unwrap(),
    }
}

fn group_strategy() -> impl Strategy<Value = FiniteGroup> {
    (any::<u8>(), 0usize..20, proptest::option::of((any::<u8>(), 0usize..20))).prop_filter_map(
        "order at most 64",
        |(a, i, second)| {
            let g = small_group(a, i);
            match second {
                None => Some(g),
                Some((b, j)) => {
                    let h = small_group(b, j);
                    (g.order() * h.order() <= 64).then(|| direct_product(&g, &h))
                }
            }
        },
    )
}

fn ring_of(g: &FiniteGroup) -> FusionRing {
    fusion_coefficients(&character_table(g).unwrap()).unwrap()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn permutation_laws(images in Just((0..7).collect::<Vec<usize>>()).prop_shuffle(),
                        other in Just((0..7).collect::<Vec<usize>>()).prop_shuffle()) {
        let p = Permutation::from_images(images).unwrap();
        let q = Permutation::from_images(other).unwrap();
        prop_assert!(p.then(&p.inverse()).is_identity());
        prop_assert_eq!(p.then(&q).sign(), p.sign() * q.sign());
        let reparsed = Permutation::parse_cycles(&p.to_cycle_string(), 7).unwrap();
        prop_assert_eq!(reparsed, p);
    }

    #[test]
    fn group_axioms_hold(g in group_strategy()) {
        prop_assert!(g.check_axioms(7).is_ok());
        let z = g.center();
        prop_assert!(z.iter().all(|&c| (0..g.order()).all(|x| g.mul(c, x) == g.mul(x, c))));
        prop_assert_eq!(g.order() % z.len(), 0);
    }

    #[test]
    fn fusion_axioms_and_chain_invariants(g in group_strategy()) {
        let ring = ring_of(&g);
        prop_assert!(ring.axiom_violations(3).is_empty());
        prop_assert!(dimension_checks(&ring, 20, 5).passed());
        let partition = chain_partition(&ring);
        prop_assert_eq!(refine_partition(&ring, &partition), partition.clone());
        prop_assert_eq!(partition.class_count(), g.center().len());
        let chain = chain_group(&ring).unwrap();
        let factors = chain.invariant_factors();
        prop_assert_eq!(factors.iter().product::<u64>() as usize, chain.order());
        for a in 0..chain.order() {
            prop_assert_eq!(chain.product(a, chain.inverse(a)), chain.identity_class());
            for b in 0..chain.order() {
                prop_assert_eq!(chain.product(a, b), chain.product(b, a));
            }
        }
        for d in 0..ring.rank() {
            prop_assert_eq!(chain.inverse(chain.class_of(d)), chain.class_of(ring.conj(d)));
        }
    }

    #[test]
    fn cyclic_products_classify_by_gcd_and_lcm(a in 1u64..16, b in 1u64..16) {
        let g = direct_product(&cyclic(a as usize), &cyclic(b as usize));
        let (d, l) = (gcd(a, b), a * b / gcd(a, b));
        let expected: Vec<u64> = [d, l].into_iter().filter(|&x| x > 1).collect();
        prop_assert_eq!(classify_abelian(&g.table()).unwrap(), expected);
    }

    #[test]
    fn lie_products_preserve_dimension(family in 0usize..4, a in 0u32..12, b in 0u32..12, m in -6i64..6, e in 0u8..2) {
        let fam = LieFamily::ALL[family];
        let label = |t: u32, charge: i64| match fam {
            LieFamily::SU2 => LieLabel::su2(t),
            LieFamily::SO3 => LieLabel::so3(t / 2),
            LieFamily::O3 => LieLabel::o3(e, t / 2).unwrap(),
            LieFamily::U2 => LieLabel::u2(charge + i64::from(t % 2), t).unwrap_or_else(|_| LieLabel::u2(charge, t).unwrap()),
        };
        let (x, y) = (label(a, 2 * m), label(b, 2 * m + 2));
        let products = lie_fusion(&x, &y).unwrap();
        prop_assert_eq!(products.iter().map(LieLabel::dim).sum::<u64>(), x.dim() * y.dim());
        let group = fam.class_group();
        for p in &products {
            prop_assert_eq!(p.class_invariant(), group.combine(x.class_invariant(), y.class_invariant()));
        }
    }

    #[test]
    fn central_action_weights(g in group_strategy(), mults in proptest::collection::vec(0u64..4, 1..12), z in proptest::collection::vec(-2.0f64..2.0, 1..2)) {
        let ring = ring_of(&g);
        let chain = chain_group(&ring).unwrap();
        let h = ChainHomomorphism::regular(chain);
        let lambda = MultiplicityVector::new(mults.iter().enumerate().map(|(i, &m)| (i % ring.rank(), m)));
        prop_assume!(!lambda.is_empty());
        let n = h.model().gamma_size();
        let f: Vec<Complex64> = (0..n).map(|x| Complex64::new(z[0] * x as f64, 1.0)).collect();
        let r = action_on_center(&lambda, &h, &ring, &f).unwrap();
        prop_assert_eq!(r.total_weight(), lambda.dimension(&ring).unwrap());
        prop_assert!(composition_consistency(&lambda, &lambda, &h, &ring, &f).unwrap().is_consistent());
    }

    #[test]
    fn trivial_homomorphism_has_no_obstruction(phases in proptest::collection::vec(0.0f64..6.3, 12)) {
        let ring = ring_of(&dihedral(4));
        let chain = chain_group(&ring).unwrap();
        let model = chainlab_core::center_action::CenterModel::new(3).unwrap();
        let h = ChainHomomorphism::trivial(chain, model);
        // a pointwise 2x2 rotation times phases is unitary at each point
        let z = FunctionMatrix::from_fn(2, 3, |i, j, x| {
            let t = phases[x];
            let c = Complex64::from_polar(1.0, phases[3 + 2 * x + i]);
            c * match (i, j) {
                (0, 0) | (1, 1) => Complex64::new(t.cos(), 0.0),
                (0, 1) => Complex64::new(-t.sin(), 0.0),
                _ => Complex64::new(t.sin(), 0.0),
            }
        });
        prop_assert!(symmetry_obstruction(&h, 1, 1, &z, &z).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn parseval_on_abelian_regular_systems(n in 2usize..7, seed in any::<u64>()) {
        let sys = MatrixDynamicalSystem::regular(cyclic(n)).unwrap();
        let options = LabOptions { samples: 5, seed, ..LabOptions::default() };
        prop_assert!(lab::parseval_sweep(&sys, &options).passed());
        prop_assert!(lab::norm_bound_check(&sys, &options).passed());
        let a = lab::fixed_point_algebra(&sys);
        prop_assert!(a.closure_residual() < 1e-9);
        prop_assert!(lab::minimality(&sys).minimal());
    }

    #[test]
    fn projections_split_random_matrices(seed in any::<u64>()) {
        let sys = MatrixDynamicalSystem::regular(symmetric(3).unwrap()).unwrap();
        let f = CMatrix::from_fn(6, 6, |r, c| {
            let x = seed.wrapping_mul(6364136223846793005).wrapping_add((r * 6 + c) as u64);
            Complex64::new(((x >> 11) % 1000) as f64 / 500.0 - 1.0, ((x >> 31) % 1000) as f64 / 500.0 - 1.0)
        });
        let parts = lab::spectral_components(&sys, &f);
        let total = parts.iter().fold(CMatrix::zeros(6, 6), |acc, p| acc + p);
        prop_assert!((total - &f).norm() < 1e-9);
        for (d, p) in parts.iter().enumerate() {
            let again = lab::spectral_projection(&sys, d, p).unwrap();
            prop_assert!((again - p).norm() < 1e-9);
        }
    }
}
