//! Strategies and reference implementations shared by the property suites.
#![allow(dead_code)]

use proptest::prelude::*;
use spextral::{ForestPattern, Graph, VertexSet};

/// A graph on `lo..=hi` vertices with independent edges.
pub fn graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi, 0.0f64..=1.0).prop_flat_map(|(n, p)| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(proptest::bool::weighted(p.clamp(0.0, 1.0)), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for v in 0..n {
                for u in 0..v {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

pub fn subset(n: usize) -> impl Strategy<Value = VertexSet> {
    proptest::collection::vec(any::<bool>(), n)
        .prop_map(|bits| bits.iter().enumerate().filter(|(_, b)| **b).map(|(v, _)| v).collect())
}

pub fn pattern(max_parts: usize) -> impl Strategy<Value = ForestPattern> {
    proptest::collection::vec((any::<bool>(), 2usize..=5), 1..=max_parts).prop_map(|parts| {
        let stars = parts.iter().filter(|p| p.0).map(|p| p.1 + 1);
        let paths = parts.iter().filter(|p| !p.0).map(|p| p.1);
        ForestPattern::new(stars, paths).unwrap()
    })
}

pub fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

pub fn dense(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.order();
    let mut a = vec![vec![0.0; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = 1.0;
        a[v][u] = 1.0;
    }
    a
}

/// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-24 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ev
}

pub fn largest_eigenvalue(g: &Graph) -> f64 {
    jacobi_eigenvalues(dense(g)).last().copied().unwrap_or(0.0)
}

/// Size of a maximum matching by trying every edge subset branch.
pub fn brute_matching(g: &Graph) -> usize {
    fn go(edges: &[(usize, usize)], used: u64) -> usize {
        match edges.split_first() {
            None => 0,
            Some((&(u, v), rest)) => {
                let skip = go(rest, used);
                if used >> u & 1 == 0 && used >> v & 1 == 0 {
                    skip.max(1 + go(rest, used | 1 << u | 1 << v))
                } else {
                    skip
                }
            }
        }
    }
    let edges: Vec<_> = g.edges().collect();
    go(&edges, 0)
}
