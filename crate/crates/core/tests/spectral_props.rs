mod support;

use proptest::prelude::*;
use spextral::families::{self, ExtremalFamily};
use spextral::spectral::{
    equitable_from_family, family_rho, hong_bound, perron_level_sets, power_iteration, quotient_rho,
    rho_split_closed, spectral_radius, structure_claims, trace_of_square, LevelParams, DEFAULT_MAX_ITER,
    DEFAULT_TOL,
};

use support::{graph, largest_eigenvalue, permutation};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn power_iteration_matches_jacobi(g in graph(1, 14)) {
        let r = power_iteration(&g, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        prop_assert!((r.rho - largest_eigenvalue(&g)).abs() < 1e-9);
        prop_assert!(r.residual <= DEFAULT_TOL);
        let len: f64 = r.vector.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assert!((len - 1.0).abs() < 1e-12);
        prop_assert!(r.vector.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn perron_vector_is_positive_on_connected_graphs(g in graph(2, 20)) {
        prop_assume!(g.is_connected());
        let r = power_iteration(&g, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        prop_assert!(r.vector.iter().all(|&x| x > 0.0));
    }

    #[test]
    fn radius_sits_between_average_and_maximum_degree(g in graph(1, 30)) {
        let rho = spectral_radius(&g).unwrap();
        let n = g.order() as f64;
        prop_assert!(rho >= 2.0 * g.edge_count() as f64 / n - 1e-9);
        prop_assert!(rho <= g.max_degree() as f64 + 1e-9);
        prop_assert!(rho * rho >= trace_of_square(&g) as f64 / n - 1e-9);
    }

    #[test]
    fn hong_bound_dominates(g in graph(1, 30)) {
        prop_assert!(hong_bound(&g).unwrap() >= spectral_radius(&g).unwrap() - 1e-9);
    }

    #[test]
    fn radius_is_a_graph_invariant((g, p) in graph(1, 16).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), permutation(n))
    })) {
        let h = g.relabel(&p).unwrap();
        prop_assert!((spectral_radius(&g).unwrap() - spectral_radius(&h).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn adding_an_edge_never_lowers_the_radius(g in graph(2, 20), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let (u, v) = (a.index(g.order()), b.index(g.order()));
        prop_assume!(u != v && !g.has_edge(u, v));
        let h = g.with_edge(u, v).unwrap();
        prop_assert!(spectral_radius(&h).unwrap() >= spectral_radius(&g).unwrap() - 1e-9);
    }

    #[test]
    fn split_closed_form(n in 1usize..80, p in 1usize..8) {
        prop_assume!(p <= n);
        let g = ExtremalFamily::Split { n, h: p }.build().unwrap();
        prop_assert!((rho_split_closed(n, p).unwrap() - largest_eigenvalue(&g)).abs() < 1e-9);
        // The Hong bound is attained by complete split graphs.
        prop_assert!((hong_bound(&g).unwrap() - rho_split_closed(n, p).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn quotients_match_the_full_graph(n in 2usize..60, k in 1usize..4, l in 4usize..8) {
        let h = k + l / 2 - 1;
        let mut fams = vec![ExtremalFamily::Split { n, h }, ExtremalFamily::SplitPlus { n, h },
            ExtremalFamily::LinearForestExtremal { n, k }];
        if let Ok(f) = ExtremalFamily::clique_join_cliques(n, k, l) {
            fams.push(f);
        }
        for f in fams.into_iter().filter(|f| f.validate().is_ok()) {
            let g = f.build().unwrap();
            prop_assume!(g.edge_count() > 0);
            let q = quotient_rho(&equitable_from_family(&f).unwrap(), DEFAULT_TOL).unwrap();
            prop_assert!((q - spectral_radius(&g).unwrap()).abs() < 1e-9, "{:?}", f);
        }
    }

    #[test]
    fn level_sets_are_nested(g in graph(2, 25), k in 1usize..3, l in 4usize..7) {
        prop_assume!(g.is_connected());
        let s = perron_level_sets(&g, k, l, DEFAULT_TOL).unwrap();
        prop_assert!(s.r_double_prime.is_subset(&s.r_prime));
        prop_assert!(s.r_prime.is_subset(&s.r));
        prop_assert!(s.r_double_prime.contains(s.z));
    }
}

#[test]
fn documented_radii() {
    let r = |g| spectral_radius(&g).unwrap();
    assert!((r(families::complete(3).unwrap()) - 2.0).abs() < 1e-12);
    assert!((r(families::star(4).unwrap()) - 2.0).abs() < 1e-12);
    assert!((r(families::path(4).unwrap()) - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-10);
    assert!((rho_split_closed(10, 2).unwrap() - (1.0 + 65f64.sqrt()) / 2.0).abs() < 1e-12);
    assert_eq!(rho_split_closed(7, 7).unwrap(), 6.0);
    assert!(rho_split_closed(3, 4).is_err());
    assert_eq!(hong_bound(&families::empty(5).unwrap()).unwrap(), 0.0);
}

#[test]
fn documented_quotients() {
    let q = equitable_from_family(&ExtremalFamily::Split { n: 10, h: 3 }).unwrap();
    assert_eq!(q.quotient, vec![vec![2, 7], vec![3, 0]]);
    let q = equitable_from_family(&ExtremalFamily::SplitPlus { n: 12, h: 2 }).unwrap();
    assert_eq!(q.quotient, vec![vec![1, 2, 8], vec![2, 1, 0], vec![2, 0, 0]]);
    let f = ExtremalFamily::CliqueJoinCliques { n: 28, k: 1, l: 4, r: 0 };
    assert_eq!(equitable_from_family(&f).unwrap().quotient, vec![vec![0, 27], vec![1, 2]]);
    assert!((family_rho(&f).unwrap() - (1.0 + 28f64.sqrt())).abs() < 1e-12);
}

#[test]
fn level_parameters() {
    let p = LevelParams::new(1, 4).unwrap();
    assert_eq!((p.h, p.t), (2, 26));
    assert!((p.alpha - 1.0 / (6.0 * 676.0)).abs() < 1e-18);
    assert!(LevelParams::new(1, 3).is_err());
}

#[test]
fn claims_on_a_large_split_graph() {
    let g = ExtremalFamily::Split { n: 300, h: 2 }.build().unwrap();
    let c = structure_claims(&g, 1, 4, DEFAULT_TOL).unwrap();
    assert!(c.star_free && c.z_dominates && c.no_outside_edge && c.core_complete && c.dominating);
    assert_eq!(c.core.len(), 2);
}
