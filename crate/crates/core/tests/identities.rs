mod support;

use golodlab_core::koszul::QuotientRing;
use golodlab_core::poly::{rat, RingSpec};
use golodlab_core::resolution::minimal_free_resolution;
use proptest::prelude::*;
use support::*;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(256)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn euler_identity(
        weights in prop::collection::vec(1u32..=3, 1..=3),
        d in 1u32..=6,
        coeffs in prop::collection::vec(-4i64..=4, 12),
    ) {
        prop_assert_eq!(check_euler(&weights, d, &coeffs), Ok(()));
    }

    #[test]
    fn differential_squares_to_zero(idx in 0..IDEALS.len(), l in 2usize..=3, raw in raw_element()) {
        prop_assert_eq!(check_dd_zero(&quotient(idx), l, &raw), Ok(()));
    }

    #[test]
    fn leibniz_rule_with_bar(
        idx in 0..IDEALS.len(),
        la in 1usize..=3,
        lb in 1usize..=3,
        ra in raw_element(),
        rb in raw_element(),
    ) {
        prop_assert_eq!(check_leibniz(&quotient(idx), la, lb, &ra, &rb), Ok(()));
    }

    #[test]
    fn wedge_is_graded_commutative(
        idx in 0..IDEALS.len(),
        la in 0usize..=3,
        lb in 0usize..=3,
        ra in raw_element(),
        rb in raw_element(),
    ) {
        prop_assert_eq!(check_graded_commutative(&quotient(idx), la, lb, &ra, &rb), Ok(()));
    }

    #[test]
    fn jacobian_product_rule(
        l in 1usize..=3,
        k in 1usize..=3,
        seed in 0usize..8,
        leading in prop::collection::vec(raw_poly(), 2),
        factors in prop::collection::vec(raw_poly(), 3),
    ) {
        prop_assert_eq!(check_product_rule(l, k, seed, &leading, &factors), Ok(()));
    }

    #[test]
    fn wedge_is_associative(
        idx in 0..IDEALS.len(),
        ls in prop::array::uniform3(0usize..=2),
        raws in prop::array::uniform3(raw_element()),
    ) {
        let q = quotient(idx);
        let [a, b, c] = [0, 1, 2].map(|i| build_element(&q, ls[i].min(q.nvars()), &raws[i]));
        prop_assert_eq!(q.wedge(&q.wedge(&a, &b), &c), q.wedge(&a, &q.wedge(&b, &c)));
    }

    #[test]
    fn derivative_obeys_leibniz(ra in raw_poly(), rb in raw_poly(), i in 0usize..3) {
        let ring = RingSpec::standard(&["x", "y", "z"]);
        let f = build_poly(&ring, &ra);
        let g = build_poly(&ring, &rb);
        let lhs = ring.partial_derivative(&(&f * &g), i).unwrap();
        let rhs = &(&ring.partial_derivative(&f, i).unwrap() * &g) + &(&f * &ring.partial_derivative(&g, i).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn polynomial_ring_axioms(ra in raw_poly(), rb in raw_poly(), rc in raw_poly()) {
        let ring = RingSpec::standard(&["x", "y", "z"]);
        let [a, b, c] = [&ra, &rb, &rc].map(|r| build_poly(&ring, r));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&(&(&a + &b) - &b) - &a).is_zero());
        prop_assert_eq!(&a * &ring.constant(rat(1)), a.clone());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn betti_numbers_ignore_generator_order(idx in 1..IDEALS.len(), perm in any::<prop::sample::Index>()) {
        let q = quotient(idx);
        let gens = q.generators().to_vec();
        let mut shuffled = gens.clone();
        let r = perm.index(gens.len());
        shuffled.rotate_left(r);
        shuffled.reverse();
        let a = minimal_free_resolution(q.ring(), &gens).unwrap().betti_table();
        let b = minimal_free_resolution(q.ring(), &shuffled).unwrap().betti_table();
        prop_assert_eq!(a, b);
        let _ = QuotientRing::new(q.ring(), &shuffled).unwrap();
    }
}
