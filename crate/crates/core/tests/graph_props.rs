mod support;

use proptest::prelude::*;
use spextral::graph::read_graph6_lines;
use spextral::search::enumerate_graphs;
use spextral::{graph6_decode, graph6_encode, Graph, VertexSet};

use support::{graph, subset};

fn with_sets() -> impl Strategy<Value = (Graph, VertexSet, VertexSet)> {
    graph(0, 24).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), subset(n), subset(n))
    })
}

fn e_within(g: &Graph, s: &VertexSet) -> usize {
    g.induced_subgraph(s).unwrap().edge_count()
}

proptest! {
    #[test]
    fn edge_count_is_half_degree_sum(g in graph(0, 30)) {
        prop_assert_eq!(2 * g.edge_count(), g.degrees().iter().sum::<usize>());
        for (u, v) in g.edges() {
            prop_assert!(g.has_edge(v, u));
            prop_assert!(u != v);
        }
    }

    #[test]
    fn overlap_decomposition((g, a, b) in with_sets()) {
        let inter = a.intersection(&b);
        let lhs = g.edges_between(&a, &b).unwrap();
        let rhs = g.edges_between(&a, &b.difference(&a)).unwrap()
            + 2 * e_within(&g, &inter)
            + g.edges_between(&a.difference(&b), &inter).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn between_count_bounds((g, a, b) in with_sets()) {
        let e_ab = g.edges_between(&a, &b).unwrap();
        let mid = e_within(&g, &a.union(&b)) + e_within(&g, &a.intersection(&b));
        prop_assert!(e_ab <= mid);
        prop_assert!(mid <= 2 * g.edge_count());
        prop_assert!(e_ab <= a.len() * b.len());
        prop_assert_eq!(g.edges_between(&a, &b).unwrap(), g.edges_between(&b, &a).unwrap());
    }

    #[test]
    fn intersection_lower_bound(sets in proptest::collection::vec(subset(40), 1..6)) {
        let all = sets.iter().skip(1).fold(sets[0].clone(), |s, t| s.intersection(t));
        let any = sets.iter().fold(VertexSet::new(), |s, t| s.union(t));
        let total: i64 = sets.iter().map(|s| s.len() as i64).sum();
        prop_assert!(all.len() as i64 >= total - (sets.len() as i64 - 1) * any.len() as i64);
    }

    #[test]
    fn neighbourhoods_are_disjoint(g in graph(1, 20), pick in any::<prop::sample::Index>()) {
        let v = pick.index(g.order());
        let n1 = g.neighborhood(v).unwrap();
        let n2 = g.second_neighborhood(v).unwrap();
        prop_assert!(n1.is_disjoint(&n2));
        prop_assert!(!n1.contains(v) && !n2.contains(v));
        for w in n2.iter() {
            prop_assert!(n1.iter().any(|u| g.has_edge(u, w)));
        }
    }

    #[test]
    fn induced_subgraph_keeps_inside_edges((g, a, _b) in with_sets()) {
        let h = g.induced_subgraph(&a).unwrap();
        let members: Vec<usize> = a.iter().collect();
        prop_assert_eq!(h.order(), members.len());
        for i in 0..members.len() {
            for j in 0..members.len() {
                prop_assert_eq!(h.has_edge(i, j), i != j && g.has_edge(members[i], members[j]));
            }
        }
    }

    #[test]
    fn graph6_round_trip(g in graph(0, 12)) {
        let text = graph6_encode(&g);
        prop_assert!(text.bytes().all(|b| (63..=126).contains(&b)));
        prop_assert_eq!(graph6_decode(&text).unwrap(), g);
    }

    #[test]
    fn graph6_round_trip_large(g in graph(60, 70)) {
        prop_assert_eq!(graph6_decode(&graph6_encode(&g)).unwrap(), g);
    }
}

#[test]
fn census_round_trips_through_graph6() {
    for n in 1..=5 {
        let graphs: Vec<Graph> = enumerate_graphs(n).unwrap().collect();
        let text: String = graphs.iter().map(|g| graph6_encode(g) + "\n").collect();
        let back = read_graph6_lines(&format!(">>graph6<<{text}")).unwrap();
        assert_eq!(back, graphs);
    }
}

#[test]
fn documented_encodings() {
    let k = |n| spextral::families::complete(n).unwrap();
    assert_eq!(graph6_encode(&k(1)), "@");
    assert_eq!(graph6_encode(&k(2)), "A_");
    assert_eq!(graph6_encode(&k(3)), "Bw");
    assert_eq!(graph6_encode(&Graph::empty(0).unwrap()), "?");
}

#[test]
fn malformed_graph6_names_the_offset() {
    let err = graph6_decode("B!").unwrap_err().to_string();
    assert!(err.contains('1'), "{err}");
    assert!(graph6_decode("Bww").is_err());
    assert!(graph6_decode("").is_err());
}
