use finrel::relation::{from_window_mask, window_mask, window_order_key};
use finrel::{
    commutes, commutes_direct, compose, compose_naive, format_relation, format_relation_human,
    parse_relation, FiniteRelation, PointSet,
};
use proptest::prelude::*;

/// Canonical relations over a random window of at most three points drawn
/// from {0,...,9}: every graph over the window appears via its mask.
fn arb_relation() -> impl Strategy<Value = FiniteRelation> {
    proptest::collection::btree_set(0u32..10, 0..=3).prop_flat_map(|points| {
        let window: PointSet = points.into_iter().collect();
        let cells = (window.len() * window.len()) as u32;
        (0u64..(1u64 << cells)).prop_map(move |mask| from_window_mask(&window, mask))
    })
}

/// Finitely supported permutations as products of transpositions.
fn arb_permutation() -> impl Strategy<Value = FiniteRelation> {
    proptest::collection::vec((0u32..8, 0u32..8), 0..6).prop_map(|swaps| {
        swaps
            .into_iter()
            .filter(|(a, b)| a != b)
            .fold(FiniteRelation::identity(), |acc, (a, b)| {
                compose(&acc, &FiniteRelation::transposition(a, b))
            })
    })
}

proptest! {
    #[test]
    fn composition_is_associative(
        f in arb_relation(), g in arb_relation(), h in arb_relation()
    ) {
        prop_assert_eq!(compose(&compose(&f, &g), &h), compose(&f, &compose(&g, &h)));
    }

    #[test]
    fn support_of_a_product_stays_inside_the_union(
        f in arb_relation(), g in arb_relation()
    ) {
        let fg = compose(&f, &g);
        prop_assert!(fg.support().is_subset_of(&f.support().union(g.support())));
    }

    #[test]
    fn both_composition_routes_agree(f in arb_relation(), g in arb_relation()) {
        prop_assert_eq!(compose(&f, &g), compose_naive(&f, &g));
    }

    #[test]
    fn the_identity_is_a_two_sided_unit(f in arb_relation()) {
        let id = FiniteRelation::identity();
        prop_assert_eq!(&compose(&id, &f), &f);
        prop_assert_eq!(&compose(&f, &id), &f);
    }

    #[test]
    fn inversion_is_an_involution(f in arb_relation()) {
        prop_assert_eq!(&f.inverse().inverse(), &f);
    }

    #[test]
    fn inversion_reverses_products(f in arb_relation(), g in arb_relation()) {
        prop_assert_eq!(compose(&f, &g).inverse(), compose(&g.inverse(), &f.inverse()));
    }

    #[test]
    fn commutation_shortcut_agrees_with_direct_comparison(
        f in arb_relation(), g in arb_relation()
    ) {
        prop_assert_eq!(commutes(&f, &g), commutes_direct(&f, &g));
    }

    #[test]
    fn json_round_trips(f in arb_relation()) {
        prop_assert_eq!(parse_relation(&format_relation(&f)).unwrap(), f);
    }

    #[test]
    fn human_format_round_trips(f in arb_relation()) {
        prop_assert_eq!(parse_relation(&format_relation_human(&f)).unwrap(), f);
    }

    #[test]
    fn cycle_notation_round_trips_for_permutations(p in arb_permutation()) {
        prop_assert!(p.is_permutation());
        let text = format_relation_human(&p);
        prop_assert!(text.starts_with("perm:"));
        prop_assert_eq!(parse_relation(&text).unwrap(), p);
    }

    #[test]
    fn window_masks_round_trip_within_any_covering_window(
        f in arb_relation(), extra in proptest::collection::btree_set(0u32..10, 0..=3)
    ) {
        let window = f.support().union(&extra.into_iter().collect());
        let mask = window_mask(&f, &window).unwrap();
        prop_assert_eq!(from_window_mask(&window, mask), f);
    }

    #[test]
    fn equality_is_semantic_equality_over_the_joint_window(
        f in arb_relation(), g in arb_relation()
    ) {
        let joint = f.support().union(g.support());
        let same_mask = window_mask(&f, &joint) == window_mask(&g, &joint);
        prop_assert_eq!(f == g, same_mask);
    }

    #[test]
    fn order_keys_sort_like_masks(
        a in 0u64..512, b in 0u64..512
    ) {
        let window: PointSet = (0u32..3).collect();
        let fa = from_window_mask(&window, a);
        let fb = from_window_mask(&window, b);
        let ka = window_order_key(&fa, &window);
        let kb = window_order_key(&fb, &window);
        prop_assert_eq!(a.cmp(&b), ka.cmp(&kb));
    }

    #[test]
    fn inverting_a_permutation_gives_its_group_inverse(p in arb_permutation()) {
        prop_assert!(compose(&p, &p.inverse()).is_identity());
        prop_assert!(compose(&p.inverse(), &p).is_identity());
    }
}
