//! Simple undirected graphs with bitset adjacency rows.

mod graph6;
mod vertex_set;

use std::fmt;

pub use graph6::{graph6_decode, graph6_encode, read_graph6_lines};
pub use vertex_set::VertexSet;
pub(crate) use vertex_set::count_common;

use crate::error::{Error, Result};

/// Largest order a [`Graph`] may have.
pub const MAX_ORDER: usize = 4096;

/// A simple undirected graph on the vertices `0..n`.
///
/// Row `v` of the adjacency matrix is a bitset of `stride` words. The matrix
/// is kept symmetric with an empty diagonal by every constructor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::Capacity {
                order: n,
                max: MAX_ORDER,
            });
        }
        let stride = n.div_ceil(64);
        Ok(Graph {
            n,
            stride,
            rows: vec![0; n * stride],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::arg(format!("loop at vertex {u}")));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn from_rows(n: usize, rows: &[u64]) -> Self {
        debug_assert!(n <= 64);
        let mut g = Graph::empty(n).expect("n <= 64");
        for (v, &row) in rows.iter().enumerate().take(n) {
            if n > 0 {
                g.rows[v] = row;
            }
        }
        g
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.n,
            })
        }
    }

    pub(crate) fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.max() {
            Some(v) if v >= self.n => Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.n,
            }),
            _ => Ok(()),
        }
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.rows[u * self.stride + v / 64] |= 1 << (v % 64);
        self.rows[v * self.stride + u / 64] |= 1 << (u % 64);
    }

    pub(crate) fn clear_edge(&mut self, u: usize, v: usize) {
        self.rows[u * self.stride + v / 64] &= !(1 << (v % 64));
        self.rows[v * self.stride + u / 64] &= !(1 << (u % 64));
    }

    /// A copy of `self` with the edge `uv` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::arg(format!("loop at vertex {u}")));
        }
        let mut g = self.clone();
        g.set_edge(u, v);
        Ok(g)
    }

    /// A copy of `self` with the edge `uv` removed (if present).
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let mut g = self.clone();
        g.clear_edge(u, v);
        Ok(g)
    }

    /// Raw adjacency row of `v`.
    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.stride..(v + 1) * self.stride]
    }

    /// Adjacency row of `v` for graphs with at most 64 vertices.
    #[inline]
    pub(crate) fn row64(&self, v: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.rows[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.stride + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// `e(G)`.
    pub fn edge_count(&self) -> usize {
        let twice: usize = self.rows.iter().map(|w| w.count_ones() as usize).sum();
        twice / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
                .collect::<Vec<_>>()
        })
    }

    pub(crate) fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_slice(self.row(v))
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// `N(v)`.
    pub fn neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(self.neighbors(v))
    }

    /// `N²(v)`: the vertices at distance exactly two from `v`.
    pub fn second_neighborhood(&self, v: usize) -> Result<VertexSet> {
        let first = self.neighborhood(v)?;
        let mut reach = VertexSet::new();
        for u in &first {
            reach = reach.union(&self.neighbors(u));
        }
        let mut closed = first;
        closed.insert(v);
        Ok(reach.difference(&closed))
    }

    /// `e(A, B)`: the number of ordered pairs `(a, b)` with `a ∈ A`, `b ∈ B`
    /// and `ab ∈ E(G)`. An edge with both ends in `A ∩ B` is counted twice.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> Result<usize> {
        self.check_set(a)?;
        self.check_set(b)?;
        Ok(a.iter()
            .map(|v| count_common(self.row(v), b.words()))
            .sum())
    }

    /// `e(G[U])`.
    pub fn edges_within(&self, u: &VertexSet) -> Result<usize> {
        Ok(self.edges_between(u, u)? / 2)
    }

    /// `G[U]`, with vertices relabelled in ascending order of their original
    /// index.
    pub fn induced_subgraph(&self, u: &VertexSet) -> Result<Graph> {
        self.check_set(u)?;
        let keep: Vec<usize> = u.iter().collect();
        let mut g = Graph::empty(keep.len())?;
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.set_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// `G` with vertex `i` of the result being vertex `perm[i]` of `self`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::arg("permutation length differs from graph order"));
        }
        let mut seen = VertexSet::new();
        for &p in perm {
            self.check_vertex(p)?;
            if !seen.insert(p) {
                return Err(Error::arg(format!("vertex {p} repeated in permutation")));
            }
        }
        let mut g = Graph::empty(self.n)?;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(perm[i], perm[j]) {
                    g.set_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// Connected components as vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp.clone();
            while !frontier.is_empty() {
                let mut next = VertexSet::new();
                for v in &frontier {
                    next = next.union(&self.neighbors(v));
                }
                frontier = next.difference(&comp);
                comp = comp.union(&frontier);
            }
            seen = seen.union(&comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Adjacency lists, ascending.
    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|v| self.neighbors(v).iter().collect()).collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, ", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}
