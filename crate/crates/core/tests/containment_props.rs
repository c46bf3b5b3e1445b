mod support;

use proptest::prelude::*;
use spextral::containment::{
    contains_forest, find_forest, find_path, has_path, is_free, longest_path_order, max_matching_size,
    maximum_matching, naive_injection_oracle, verify_embedding,
};
use spextral::families::{self, ExtremalFamily};
use spextral::{ForestPattern, Graph};

use support::{brute_matching, graph, pattern, permutation};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn agrees_with_injection_oracle(g in graph(0, 8), f in pattern(3)) {
        prop_assert_eq!(contains_forest(&g, &f), naive_injection_oracle(&g, &f));
    }

    #[test]
    fn embeddings_are_valid(g in graph(0, 14), f in pattern(3)) {
        match find_forest(&g, &f) {
            Some(emb) => {
                prop_assert!(verify_embedding(&g, &f, &emb));
                let mut used: Vec<usize> = emb.iter().flat_map(|c| c.vertices()).collect();
                let total = used.len();
                used.sort();
                used.dedup();
                prop_assert_eq!(used.len(), total);
                prop_assert_eq!(total, f.total_order());
            }
            None => prop_assert!(is_free(&g, &f)),
        }
    }

    #[test]
    fn containment_is_monotone_in_the_host(g in graph(2, 12), f in pattern(3), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let (u, v) = (a.index(g.order()), b.index(g.order()));
        prop_assume!(u != v && !g.has_edge(u, v));
        if contains_forest(&g, &f) {
            prop_assert!(contains_forest(&g.with_edge(u, v).unwrap(), &f));
        }
    }

    #[test]
    fn containment_is_monotone_in_the_pattern(g in graph(0, 12), f in pattern(3)) {
        // Dropping a component or shortening a path keeps a contained pattern contained.
        if contains_forest(&g, &f) {
            let stars = f.stars().to_vec();
            let mut paths = f.paths().to_vec();
            if let Some(p) = paths.first_mut() {
                *p -= 1;
            }
            paths.retain(|&p| p >= 1);
            let smaller = ForestPattern::new(stars.iter().copied().skip(1), paths).unwrap();
            prop_assert!(contains_forest(&g, &smaller));
        }
    }

    #[test]
    fn containment_is_a_graph_invariant((g, p) in graph(1, 12).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), permutation(n))
    }), f in pattern(3)) {
        prop_assert_eq!(contains_forest(&g, &f), contains_forest(&g.relabel(&p).unwrap(), &f));
    }

    #[test]
    fn matchings_agree_with_brute_force(g in graph(0, 14)) {
        let size = max_matching_size(&g);
        prop_assert_eq!(size, brute_matching(&g));
        let mate = maximum_matching(&g);
        for (v, &m) in mate.iter().enumerate() {
            if m != usize::MAX {
                prop_assert!(g.has_edge(v, m));
                prop_assert_eq!(mate[m], v);
            }
        }
        // k disjoint edges embed exactly when k is at most the matching number.
        let k = size + 1;
        prop_assert!(!contains_forest(&g, &ForestPattern::paths_only(k, 2).unwrap()));
        if size > 0 {
            prop_assert!(contains_forest(&g, &ForestPattern::paths_only(size, 2).unwrap()));
        }
    }

    #[test]
    fn paths_agree_with_longest_path(g in graph(0, 12)) {
        let longest = longest_path_order(&g);
        for l in 1..=g.order() + 1 {
            prop_assert_eq!(has_path(&g, l), l <= longest);
        }
        if let Some(p) = find_path(&g, longest.max(1)) {
            prop_assert!(p.windows(2).all(|w| g.has_edge(w[0], w[1])));
        }
    }
}

#[test]
fn documented_examples() {
    let p = |s: &str| s.parse::<ForestPattern>().unwrap();
    let split = ExtremalFamily::Split { n: 10, h: 2 }.build().unwrap();
    assert!(is_free(&split, &p("1S3+1P4")));
    let k7 = families::complete(7).unwrap();
    assert!(contains_forest(&k7, &p("1S3+1P3")));
    assert!(is_free(&families::union(&k7, &families::empty(1).unwrap()).unwrap(), &p("2S3")));
    let petersen = Graph::from_edges(
        10,
        &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
    )
    .unwrap();
    assert_eq!(max_matching_size(&petersen), 5);
    assert_eq!(longest_path_order(&petersen), 10);
    assert!(contains_forest(&families::empty(3).unwrap(), &ForestPattern::empty()));
}

#[test]
fn large_split_hosts_decide_quickly() {
    let g = ExtremalFamily::Split { n: 150, h: 3 }.build().unwrap();
    // h = k + ⌊ℓ/2⌋ − 1 hubs are one too few for kS_{ℓ−1} ∪ P_ℓ.
    assert!(is_free(&g, &ForestPattern::star_path(2, 4).unwrap()));
    assert!(is_free(&g, &ForestPattern::star_path(1, 6).unwrap()));
    let g4 = ExtremalFamily::Split { n: 150, h: 4 }.build().unwrap();
    assert!(contains_forest(&g4, &ForestPattern::star_path(2, 4).unwrap()));
    assert!(contains_forest(&g4, &ForestPattern::star_path(1, 6).unwrap()));
    let g = ExtremalFamily::Split { n: 150, h: 2 }.build().unwrap();
    assert!(is_free(&g, &ForestPattern::star_path(1, 4).unwrap()));
}
