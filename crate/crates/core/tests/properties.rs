use distmagic::magic::{theoretical_k, weights};
use distmagic::search::find_distance_magic;
use distmagic::{product, verify_distance_magic, Graph, Labeling, ProductKind, SearchBudget};
use itertools::Itertools;
use proptest::prelude::*;

/// Random simple graph on `1..=max_n` vertices.
fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |mask| {
            let edges = pairs
                .iter()
                .zip(&mask)
                .filter(|(_, &keep)| keep)
                .map(|(&e, _)| e);
            Graph::new(n, edges).unwrap()
        })
    })
}

fn arb_labeled(max_n: usize) -> impl Strategy<Value = (Graph, Labeling)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.order();
        Just((1..=n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(move |v| (g.clone(), Labeling::new(v).unwrap()))
    })
}

/// Every bijection, tried directly.
fn brute_force_magic(g: &Graph) -> Option<u64> {
    let n = g.order();
    (1..=n).permutations(n).find_map(|perm| {
        let l = Labeling::new(perm).unwrap();
        let w = weights(g, &l).unwrap();
        w.iter()
            .all_equal()
            .then(|| w.first().copied().unwrap_or(0))
    })
}

fn all_kinds() -> [ProductKind; 3] {
    [
        ProductKind::Cartesian,
        ProductKind::Lexicographic,
        ProductKind::Direct,
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn handshake((g, _) in arb_labeled(9)) {
        let total: usize = (0..g.order()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn weight_sum_identity((g, l) in arb_labeled(9)) {
        let w: u64 = weights(&g, &l).unwrap().iter().sum();
        let expected: u64 = (0..g.order()).map(|v| (g.degree(v) * l.label(v)) as u64).sum();
        prop_assert_eq!(w, expected);
    }

    #[test]
    fn product_degrees(g in arb_graph(5), h in arb_graph(5)) {
        let hn = h.order();
        for kind in all_kinds() {
            let p = product(kind, &g, &h);
            prop_assert_eq!(p.base().order(), g.order() * hn);
            for v in 0..p.base().order() {
                let (a, b) = p.decode(v);
                let (da, db) = (g.degree(a), h.degree(b));
                let expected = match kind {
                    ProductKind::Cartesian => da + db,
                    ProductKind::Lexicographic => da * hn + db,
                    ProductKind::Direct => da * db,
                };
                prop_assert_eq!(p.base().degree(v), expected);
            }
        }
    }

    #[test]
    fn direct_product_neighborhoods(g in arb_graph(5), h in arb_graph(5)) {
        let p = product(ProductKind::Direct, &g, &h);
        prop_assert!(p.neighborhood_product_check().unwrap());
    }

    #[test]
    fn direct_product_connectivity(g in arb_graph(8), h in arb_graph(8)) {
        // Connected iff both factors are connected with at least one edge
        // and at least one is non-bipartite (or the product is a single
        // vertex).
        let p = product(ProductKind::Direct, &g, &h);
        let single = g.order() * h.order() == 1;
        let nontrivial = g.edge_count() > 0 && h.edge_count() > 0;
        let expected = single || (nontrivial
            && g.is_connected()
            && h.is_connected()
            && !(g.is_bipartite() && h.is_bipartite()));
        prop_assert_eq!(p.base().is_connected(), expected);
    }

    #[test]
    fn commutative_products_transpose(g in arb_graph(5), h in arb_graph(5)) {
        for kind in [ProductKind::Cartesian, ProductKind::Direct] {
            let p = product(kind, &g, &h);
            let t = p.transposed();
            for &(u, v) in p.base().edges() {
                prop_assert!(t.base().is_adjacent(p.transpose_vertex(u), p.transpose_vertex(v)));
            }
            prop_assert_eq!(p.base().edge_count(), t.base().edge_count());
        }
    }

    #[test]
    fn search_matches_brute_force(g in arb_graph(6)) {
        let out = find_distance_magic(&g, SearchBudget::unlimited());
        let oracle = brute_force_magic(&g);
        prop_assert_eq!(out.is_found(), oracle.is_some());
        if let Some(k) = out.k() {
            let distmagic::SearchResult::Found { labeling, .. } = &out.result else { unreachable!() };
            let r = verify_distance_magic(&g, labeling).unwrap();
            prop_assert!(r.is_distance_magic);
            prop_assert_eq!(r.magic_constant, Some(k));
        }
    }

    #[test]
    fn regular_magic_constant_is_forced(g in arb_graph(6)) {
        if g.regularity().is_some() {
            let out = find_distance_magic(&g, SearchBudget::unlimited());
            if let Some(k) = out.k() {
                if g.edge_count() > 0 {
                    prop_assert_eq!(Some(k), theoretical_k(&g));
                }
            }
        }
    }

    #[test]
    fn labeling_text_roundtrip((_, l) in arb_labeled(12)) {
        prop_assert_eq!(Labeling::parse(&l.to_text()).unwrap(), l);
    }

    #[test]
    fn edge_list_roundtrip(g in arb_graph(9)) {
        prop_assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }
}
